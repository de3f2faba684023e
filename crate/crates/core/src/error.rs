use thiserror::Error;

/// Everything that can go wrong while parsing inputs or running a construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed generalized integer {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} appears more than once")]
    RepeatedPrime(u64),

    #[error("{divisor} does not divide the generalized integer: prime {prime} needs exponent {needed}, has {available}")]
    NotDivisible {
        divisor: String,
        prime: String,
        needed: u64,
        available: u64,
    },

    #[error("generalized integer {0} has no infinite exponent")]
    FiniteSupernatural(String),

    #[error("variable counts differ: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("index {index} outside 1..={limit}")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("class over {vars} sphere factors is too large to expand (limit {limit})")]
    ExpansionTooLarge { vars: String, limit: usize },

    #[error("positivity oracle not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown {kind} strategy {name:?}; known: {known}")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("empty window for n at stage {stage}: {detail}")]
    EmptyWindow { stage: usize, detail: String },

    #[error("certificate {name} failed: {detail}")]
    CertificateFailed { name: String, detail: String },

    #[error("oracle mismatch at stage {stage}: {detail}")]
    OracleMismatch { stage: usize, detail: String },

    #[error("stage {0} has not been computed")]
    StageNotComputed(usize),

    #[error("{0} is not representable at any computed stage")]
    NotRepresentable(String),

    #[error("intensional and stage-wise cone tests disagree on {0}")]
    RepresentationMismatch(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CertificateFailed { .. } | Error::OracleMismatch { .. } => 3,
            Error::EmptyWindow { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
