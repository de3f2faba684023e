use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numbers::{proper_fraction_parts, Rational, Supernatural};

pub const DEFAULT_POLICY: &str = "minimal";
pub const DEFAULT_ENUMERATION: &str = "round-robin";

/// Inputs of one construction: the scale `k = a/b`, the generalized integer
/// `n`, the number of stages and the names of the strategies to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    pub k: Rational,
    pub n: Supernatural,
    pub stages: usize,
    pub policy: String,
    pub enumeration: String,
}

/// Parameters after validation: `k = a/b` in lowest terms and `n' = n / b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validated {
    pub a: BigInt,
    pub b: BigInt,
    pub rest: Supernatural,
}

impl ConstructionParams {
    pub fn new(k: Rational, n: Supernatural, stages: usize) -> Self {
        Self {
            k,
            n,
            stages,
            policy: DEFAULT_POLICY.into(),
            enumeration: DEFAULT_ENUMERATION.into(),
        }
    }

    pub fn with_policy(mut self, spec: impl Into<String>) -> Self {
        self.policy = spec.into();
        self
    }

    pub fn with_enumeration(mut self, spec: impl Into<String>) -> Self {
        self.enumeration = spec.into();
        self
    }

    pub fn validate(&self) -> Result<Validated> {
        let (a, b) = proper_fraction_parts(&self.k)?;
        if self.stages == 0 {
            return Err(Error::InvalidParams("at least one stage is required".into()));
        }
        let rest = self.n.quotient_by_integer(&b)?;
        if !rest.is_infinite() {
            return Err(Error::FiniteSupernatural(format!("{} / {b} = {rest}", self.n)));
        }
        Ok(Validated {
            a: to_int(a),
            b: to_int(b),
            rest,
        })
    }
}

fn to_int(x: BigUint) -> BigInt {
    BigInt::from(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub(crate) struct ParamsEcho {
    pub k: String,
    pub supernatural: String,
    pub stages: usize,
    pub policy: String,
    pub enumeration: String,
}

impl From<&ConstructionParams> for ParamsEcho {
    fn from(p: &ConstructionParams) -> Self {
        Self {
            k: p.k.to_string(),
            supernatural: p.n.to_string(),
            stages: p.stages,
            policy: p.policy.clone(),
            enumeration: p.enumeration.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::parse_rational;

    fn params(k: &str, n: &str, j: usize) -> ConstructionParams {
        ConstructionParams::new(parse_rational(k).unwrap(), n.parse().unwrap(), j)
    }

    #[test]
    fn valid_params() {
        let v = params("1/2", "2^inf*3^inf", 3).validate().unwrap();
        assert_eq!((v.a, v.b), (BigInt::from(1), BigInt::from(2)));
        assert_eq!(v.rest.to_string(), "2^inf*3^inf");
        let v = params("4/6", "2*3^inf", 1).validate().unwrap();
        assert_eq!((v.a, v.b), (BigInt::from(2), BigInt::from(3)));
        assert_eq!(v.rest.to_string(), "2*3^inf");
    }

    #[test]
    fn invalid_params() {
        assert!(matches!(
            params("1/2", "3^inf", 2).validate(),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            params("1/2", "2^5", 2).validate(),
            Err(Error::FiniteSupernatural(_))
        ));
        assert!(params("3/2", "2^inf", 2).validate().is_err());
        assert!(params("0/1", "2^inf", 2).validate().is_err());
        assert!(params("1/2", "2^inf", 0).validate().is_err());
    }
}
