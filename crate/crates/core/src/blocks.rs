//! K-theoretic shadow of the building blocks `A_j = A(C_j, D_j, φ⁰_j, φ¹_j)`.
//!
//! `C_j` is a corner of `C(X_j) ⊗ K` with `X_j = (S²)^{×m_j}` and
//! `D_j = C_j ⊗ M_{k_j dim p_j}`. At the level of `K₀` everything reduces to
//! integers: the endpoint maps are sums of `l^t` copies of `μ_j` and
//! `k_j − l^t` copies of `ν_j`, with `K₀(μ_j)(e) = rank(e)·[p_j]` and
//! `K₀(ν_j)(e) = dim p_j · e`. The boundary map is `b₀ = K₀φ¹ − K₀φ⁰`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kring::{min_positive_multiple, KClass, Monomial, StandardForm};
use crate::ordgroup::CyclicOrder;

/// Largest number of sphere factors for which the kernel of `b₀` is
/// checked by enumeration rather than symbolically.
pub const EXHAUSTIVE_KERNEL_FACTORS: usize = 8;

/// Term budget for materializing the block-sum image of a generator.
pub const BLOCK_IMAGE_TERM_LIMIT: usize = 200_000;

/// Arithmetic data of one stage of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub j: usize,
    /// `L_j`, the multiplier into this stage (`b` for the first stage).
    pub big_l: BigInt,
    /// `n_{j-1}`, the power used to build `X_j` from `X_{j-1}`.
    pub n_prev: Option<BigInt>,
    /// Number of `S²` factors of `X_j`.
    pub m_factors: BigInt,
    pub g: StandardForm,
    pub dim_g: BigInt,
    pub dim_p: BigInt,
    /// Class of the unit in generator coordinates, `Π_{k≤j} L_k`.
    pub unit: BigInt,
    pub k: BigInt,
    pub l0: BigInt,
    pub l1: BigInt,
    pub l: BigInt,
    pub q: BigInt,
    pub mult: Option<BigInt>,
    pub r: Option<BigInt>,
    pub s: Option<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Zero,
    One,
}

impl Endpoint {
    pub const BOTH: [Endpoint; 2] = [Endpoint::Zero, Endpoint::One];

    pub fn other(self) -> Endpoint {
        match self {
            Endpoint::Zero => Endpoint::One,
            Endpoint::One => Endpoint::Zero,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Endpoint::Zero => 0,
            Endpoint::One => 1,
        }
    }
}

/// `q = 3k (2 dim p + dim X)` with `dim X = 2m` the real dimension.
pub fn copies_for_containment(k: &BigInt, dim_p: &BigInt, m_factors: &BigInt) -> BigInt {
    BigInt::from(3) * k * (BigInt::from(2) * dim_p + BigInt::from(2) * m_factors)
}

impl Stage {
    pub fn endpoint_multiplicity(&self, t: Endpoint) -> &BigInt {
        match t {
            Endpoint::Zero => &self.l0,
            Endpoint::One => &self.l1,
        }
    }

    /// `k_j q_j dim p_j`: rank contributed to `mult(γ_j)` by the point evaluations.
    pub fn mult_offset(&self) -> BigInt {
        &self.k * &self.q * &self.dim_p
    }

    /// Real dimension of `X_j`.
    pub fn real_dimension(&self) -> BigInt {
        BigInt::from(2) * &self.m_factors
    }

    pub fn g_class(&self) -> Result<KClass> {
        self.g.to_class()
    }

    /// `[p_j] = unit · g_j`.
    pub fn p_class(&self) -> Result<KClass> {
        Ok(self.g_class()?.scale(&self.unit))
    }

    pub fn cone(&self) -> Result<CyclicOrder> {
        CyclicOrder::new(self.l.clone(), self.unit.clone())
    }

    /// Structural invariants every stage satisfies.
    pub fn invariant_certificates(&self) -> Vec<Certificate> {
        vec![
            Certificate::new(
                "endpoint-multiplicities",
                &self.l1 - &self.l0 == BigInt::one() && &self.l0 + &self.l1 == self.k,
                format!(
                    "l1 - l0 = {} - {} = {}; l0 + l1 = {} = k = {}",
                    self.l1,
                    self.l0,
                    &self.l1 - &self.l0,
                    &self.l0 + &self.l1,
                    self.k
                ),
                "endpoint maps differ by one copy of mu",
            ),
            Certificate::new(
                "projection-rank",
                self.dim_p == &self.unit * &self.dim_g
                    && self.g.q == self.m_factors
                    && self.g.rank() == self.dim_g,
                format!(
                    "dim p = {} = unit * dim g = {} * {}; g = (q {}, m {}) over {} factors",
                    self.dim_p, self.unit, self.dim_g, self.g.q, self.g.m, self.m_factors
                ),
                "[p] = unit * g",
            ),
            Certificate::new(
                "half-dimension",
                self.dim_p >= self.m_factors,
                format!("dim p = {} >= {} = dim X / 2", self.dim_p, self.m_factors),
                "projection rank reaches the stable range",
            ),
            Certificate::new(
                "containment-copies",
                self.q == copies_for_containment(&self.k, &self.dim_p, &self.m_factors),
                format!(
                    "q = {} = 3 * {} * (2 * {} + {})",
                    self.q,
                    self.k,
                    self.dim_p,
                    self.real_dimension()
                ),
                "copies of beta needed to absorb phi",
            ),
        ]
    }
}

/// A checked arithmetic hypothesis with its instantiated statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
    pub detail: String,
    pub anchor: String,
}

impl Certificate {
    pub fn new(
        name: impl Into<String>,
        holds: bool,
        detail: impl Into<String>,
        anchor: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            holds,
            detail: detail.into(),
            anchor: anchor.into(),
        }
    }

    pub fn into_result(self) -> Result<Self> {
        if self.holds {
            Ok(self)
        } else {
            Err(Error::CertificateFailed {
                name: self.name,
                detail: self.detail,
            })
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "ok" } else { "FAILED" };
        write!(f, "[{mark}] {}: {}", self.name, self.detail)
    }
}

/// An element of `K₀(C_j)`: either a multiple of the generator `g_j` or an
/// explicit class (small stages only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StageClass {
    Multiple(BigInt),
    Explicit(KClass),
}

impl StageClass {
    pub fn rank(&self, stage: &Stage) -> BigInt {
        match self {
            StageClass::Multiple(t) => t * &stage.dim_g,
            StageClass::Explicit(e) => e.rank(),
        }
    }
}

/// `p_coeff · [p_j] + e_coeff · e` for a fixed input class `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicClass {
    pub p_coeff: BigInt,
    pub e_coeff: BigInt,
}

impl SymbolicClass {
    /// Value when the input was `Multiple(t)`, in generator units.
    pub fn in_generator_units(&self, stage: &Stage, t: &BigInt) -> BigInt {
        &self.p_coeff * &stage.unit + &self.e_coeff * t
    }

    pub fn evaluate(&self, input: &StageClass, stage: &Stage) -> Result<StageClass> {
        Ok(match input {
            StageClass::Multiple(t) => StageClass::Multiple(self.in_generator_units(stage, t)),
            StageClass::Explicit(e) => {
                let p = stage.p_class()?.scale(&self.p_coeff);
                StageClass::Explicit(p.checked_add(&e.scale(&self.e_coeff))?)
            }
        })
    }

    pub fn is_zero_on(&self, input: &StageClass, stage: &Stage) -> Result<bool> {
        Ok(match self.evaluate(input, stage)? {
            StageClass::Multiple(t) => t.is_zero(),
            StageClass::Explicit(e) => e.is_zero(),
        })
    }

    pub fn rank(&self, stage: &Stage, input_rank: &BigInt) -> BigInt {
        &self.p_coeff * &stage.dim_p + &self.e_coeff * input_rank
    }
}

/// `K₀(φ^t_j)(e) = l^t rank(e) [p_j] + (k_j − l^t) dim p_j · e`.
pub fn phi_class(input: &StageClass, stage: &Stage, which: Endpoint) -> SymbolicClass {
    let lt = stage.endpoint_multiplicity(which);
    SymbolicClass {
        p_coeff: lt * input.rank(stage),
        e_coeff: (&stage.k - lt) * &stage.dim_p,
    }
}

/// `b₀(e) = (l¹ − l⁰)(rank(e)[p_j] − dim p_j · e)`.
pub fn boundary_image(input: &StageClass, stage: &Stage) -> SymbolicClass {
    let d = &stage.l1 - &stage.l0;
    SymbolicClass {
        p_coeff: &d * input.rank(stage),
        e_coeff: -(&d * &stage.dim_p),
    }
}

/// Monomials over which the exhaustive kernel scan varies coefficients.
/// All of them for up to three factors, otherwise the rank slot, every
/// linear monomial, one quadratic monomial and the Euler slot.
pub fn truncated_support(vars: usize) -> Vec<Monomial> {
    if vars <= 3 {
        let mut all = vec![Monomial::unit()];
        for mask in 1u32..(1 << vars) {
            all.push(Monomial::new(
                (0..vars).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect(),
            ));
        }
        return all;
    }
    let mut out = vec![Monomial::unit()];
    out.extend((1..=vars).map(|i| Monomial::new(vec![i])));
    out.push(Monomial::new(vec![1, 2]));
    out.push(Monomial::new((1..=vars).collect()));
    out
}

/// Outcome of enumerating lattice classes on a support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelScan {
    pub support: Vec<Monomial>,
    pub bound: i64,
    pub points: u64,
    pub kernel_points: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Vec<i64>>,
}

/// Enumerates every class with coefficients in `[-bound, bound]` on
/// `support` and compares `b₀(e) = 0` with `e ∈ Z·g_j`.
pub fn scan_kernel(stage: &Stage, bound: i64, support: &[Monomial]) -> Result<KernelScan> {
    let small = |x: &BigInt, what: &str| {
        x.to_i64().ok_or_else(|| {
            Error::InvalidParams(format!("{what} = {x} too large for an exhaustive scan"))
        })
    };
    if support.first() != Some(&Monomial::unit()) {
        return Err(Error::InvalidParams("support must start with the rank slot".into()));
    }
    let g = stage.g_class()?;
    let g_on: Vec<i64> = support
        .iter()
        .map(|m| small(&g.coefficient(m), "generator coefficient"))
        .collect::<Result<_>>()?;
    let g_outside = g.terms().any(|(m, _)| !support.contains(m));
    let unit = small(&stage.unit, "unit")?;
    let dim_p = small(&stage.dim_p, "dim p")?;
    let diff = small(&(&stage.l1 - &stage.l0), "l1 - l0")?;
    let pivot = g_on.iter().position(|&c| c != 0);

    let width = support.len();
    let mut e = vec![-bound; width];
    let mut scan = KernelScan {
        support: support.to_vec(),
        bound,
        points: 0,
        kernel_points: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    loop {
        let rank = e[0];
        // b0(e) = diff * (rank * [p] - dim_p * e), [p] = unit * g
        let boundary_zero = (diff == 0
            || (0..width).all(|i| rank * unit * g_on[i] == dim_p * e[i]))
            && (diff == 0 || rank == 0 || !g_outside);
        let in_span = match pivot {
            None => e.iter().all(|&c| c == 0),
            Some(p) => {
                if e[p] % g_on[p] != 0 {
                    false
                } else {
                    let t = e[p] / g_on[p];
                    (0..width).all(|i| e[i] == t * g_on[i]) && (t == 0 || !g_outside)
                }
            }
        };
        scan.points += 1;
        if boundary_zero {
            scan.kernel_points += 1;
        }
        if boundary_zero != in_span {
            scan.mismatches += 1;
            if scan.first_mismatch.is_none() {
                scan.first_mismatch = Some(e.clone());
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == width {
                return Ok(scan);
            }
            if e[i] < bound {
                e[i] += 1;
                break;
            }
            e[i] = -bound;
            i += 1;
        }
    }
}

const KERNEL_NOTE: &str = "K0(mu) read as e -> rank(e)[p]; b1 surjective since K1 of a product of even spheres vanishes";

/// Certifies `ker b₀ = Z·g_j`, by enumeration on small stages and by
/// primitivity of the reduced part of `g_j` otherwise.
pub fn kernel_check(stage: &Stage, bound: i64) -> Result<Certificate> {
    let factors = stage.m_factors.to_usize();
    let diff = &stage.l1 - &stage.l0;
    match factors {
        Some(vars) if vars <= EXHAUSTIVE_KERNEL_FACTORS => {
            let support = truncated_support(vars);
            let scan = scan_kernel(stage, bound, &support)?;
            let primitive = stage.g_class()?.reduced_gcd().is_one();
            Ok(Certificate::new(
                "kernel-of-boundary",
                scan.mismatches == 0 && primitive && !diff.is_zero(),
                format!(
                    "enumerated {} classes on {} monomials with |coeff| <= {}: {} in ker b0, {} outside Z*g; reduced gcd of g = 1: {}; {}",
                    scan.points,
                    support.len(),
                    bound,
                    scan.kernel_points,
                    scan.mismatches,
                    primitive,
                    KERNEL_NOTE
                ),
                "kernel is the maximal free cyclic subgroup containing [p]",
            ))
        }
        _ => {
            // [ξ^{×q}] − [θ_m] = (q − m) + Σ e_i
            let gcd = if stage.g.q.is_positive() { BigInt::one() } else { BigInt::zero() };
            Ok(Certificate::new(
                "kernel-of-boundary",
                gcd.is_one() && !diff.is_zero(),
                format!(
                    "symbolic: reduced part of g over {} factors has gcd {gcd}; l1 - l0 = {diff}; {}",
                    stage.m_factors, KERNEL_NOTE
                ),
                "kernel is the maximal free cyclic subgroup containing [p]",
            ))
        }
    }
}

/// The cone on `Z·g_j` from the positivity oracle, checked against the
/// recursion value `l_j`.
pub fn relative_order(stage: &Stage) -> Result<CyclicOrder> {
    let h = min_positive_multiple(&stage.g, &stage.m_factors)?;
    if h != &stage.l + 1 {
        return Err(Error::OracleMismatch {
            stage: stage.j,
            detail: format!(
                "least positive multiple of g is {h} but the recursion gives l + 1 = {}",
                &stage.l + 1
            ),
        });
    }
    stage.cone()
}

/// Images of positive kernel classes under `φ^t` reach half the real dimension.
pub fn cancellation_check(stage: &Stage) -> Certificate {
    let lhs = &stage.k * &stage.dim_p * &stage.dim_g;
    Certificate::new(
        "cancellation",
        lhs >= stage.m_factors,
        format!(
            "k * dim p * dim g = {} * {} * {} = {lhs} >= {}",
            stage.k, stage.dim_p, stage.dim_g, stage.m_factors
        ),
        "endpoint images of a kernel projection are equivalent",
    )
}

fn edge_data(prev: &Stage) -> Result<(&BigInt, &BigInt, &BigInt)> {
    match (&prev.mult, &prev.r, &prev.s) {
        (Some(m), Some(r), Some(s)) => Ok((m, r, s)),
        _ => Err(Error::InvalidParams(format!(
            "stage {} has no outgoing multiplicity yet",
            prev.j
        ))),
    }
}

/// `r l^t + s l^{1−t} = mult l'^t` and `(r + s) k = mult k'` for `t = 0, 1`.
pub fn intertwining_check(prev: &Stage, next: &Stage) -> Result<Vec<Certificate>> {
    let (mult, r, s) = edge_data(prev)?;
    Ok(Endpoint::BOTH
        .iter()
        .map(|&t| {
            let lt = prev.endpoint_multiplicity(t);
            let lo = prev.endpoint_multiplicity(t.other());
            let lhs1 = r * lt + s * lo;
            let rhs1 = mult * next.endpoint_multiplicity(t);
            let lhs2 = (r + s) * &prev.k;
            let rhs2 = mult * &next.k;
            Certificate::new(
                format!("intertwining-t{}", t.index()),
                lhs1 == rhs1 && lhs2 == rhs2,
                format!(
                    "{r} * {lt} + {s} * {lo} = {lhs1} vs {mult} * {} = {rhs1}; ({r} + {s}) * {} = {lhs2} vs {mult} * {} = {rhs2}",
                    next.endpoint_multiplicity(t),
                    prev.k,
                    next.k
                ),
                "delta phi^t + delta' phi^(1-t) = phi'^t gamma on K0",
            )
        })
        .collect())
}

/// One certificate per arithmetic hypothesis of the simplicity argument
/// and of the unitary-equivalence step for the edge `prev → next`.
pub fn simplicity_checklist(prev: &Stage, next: &Stage) -> Result<Vec<Certificate>> {
    let (mult, r, s) = edge_data(prev)?;
    let n = next.n_prev.as_ref().ok_or_else(|| {
        Error::InvalidParams(format!("stage {} has no incoming power n", next.j))
    })?;
    let mut out = Vec::new();

    out.push(Certificate::new(
        "distinct-endpoints",
        prev.l0 != prev.l1 && next.l0 != next.l1,
        format!(
            "({}, {}) and ({}, {})",
            prev.l0, prev.l1, next.l0, next.l1
        ),
        "l0 != l1 at every stage",
    ));

    let q_prev = copies_for_containment(&prev.k, &prev.dim_p, &prev.m_factors);
    out.push(Certificate::new(
        "q-recomputed",
        q_prev == prev.q,
        format!(
            "3 * {} * (2 * {} + 2 * {}) = {q_prev} vs {}",
            prev.k, prev.dim_p, prev.m_factors, prev.q
        ),
        "q_j = 3 k_j (2 dim p_j + dim X_j)",
    ));

    let needed = &next.k * (BigInt::from(2) * &next.dim_p + next.real_dimension());
    let available = BigInt::from(3) * &prev.k * (BigInt::from(2) * &prev.dim_p + prev.real_dimension()) * mult;
    out.push(Certificate::new(
        "containment",
        needed <= available,
        format!(
            "{} * (2 * {} + {}) = {needed} <= 3 * {} * (2 * {} + {}) * {mult} = {available}",
            next.k,
            next.dim_p,
            next.real_dimension(),
            prev.k,
            prev.dim_p,
            prev.real_dimension()
        ),
        "q mult copies of beta contain a copy of phi' beta",
    ));

    let kk = &next.k * &prev.k;
    out.push(Certificate::new(
        "mult-exceeds-kk",
        mult > &kk,
        format!("mult = {mult} > {} * {} = {kk}", next.k, prev.k),
        "mult strictly greater than k' k",
    ));

    out.push(Certificate::new(
        "divisibility",
        mult.is_multiple_of(&next.big_l),
        format!("{} | {mult}: remainder {}", next.big_l, mult.mod_floor(&next.big_l)),
        "mult divisible by the next prime",
    ));

    out.push(Certificate::new(
        "mult-dominates-n",
        mult >= n,
        format!("mult = {mult} >= n = {n}"),
        "mult >= n",
    ));

    out.push(Certificate::new(
        "half-dimension-next",
        next.dim_p >= next.m_factors,
        format!("dim p' = {} >= {}", next.dim_p, next.m_factors),
        "dim p' >= dim X' / 2",
    ));

    for t in Endpoint::BOTH {
        let first = &kk * &next.dim_p;
        out.push(Certificate::new(
            format!("commutant-first-pair-t{}", t.index()),
            first >= next.m_factors,
            format!(
                "{} * {} * {} = {first} >= {}",
                next.k, prev.k, next.dim_p, next.m_factors
            ),
            "cut-down projections reach half the dimension",
        ));
        let lt = next.endpoint_multiplicity(t);
        let second = mult * (&next.k + lt * &next.dim_p - &kk * &prev.dim_p);
        out.push(Certificate::new(
            format!("commutant-second-pair-t{}", t.index()),
            second >= next.m_factors,
            format!(
                "{mult} * ({} + {lt} * {} - {kk} * {}) = {second} >= {}",
                next.k, next.dim_p, prev.dim_p, next.m_factors
            ),
            "complements inside a minimal projection reach half the dimension",
        ));
    }

    out.push(Certificate::new(
        "block-part-nonzero",
        n.is_positive(),
        format!("n = {n} >= 1 blocks in gamma - beta phi^1"),
        "gamma - beta phi^1 non-zero",
    ));

    let in_s = &prev.q * s;
    let in_r = &prev.q * r;
    out.push(Certificate::new(
        "summand-room",
        s.is_positive() && r.is_positive() && in_s >= needed && in_r >= needed,
        format!(
            "delta' holds {} * {s} = {in_s}, delta holds {} * {r} = {in_r} copies of beta; {needed} needed",
            prev.q, prev.q
        ),
        "phi' beta is a summand of delta' and delta",
    ));

    Ok(out)
}

/// Exact `K₀(γ_j)(g_j)` as a class over `X_{j+1}`: one pulled-back copy of
/// `g_j` per block plus the trivial part from the point evaluations.
/// `None` when the class would be too large to materialize.
pub fn block_image(stage: &Stage, big_l: &BigInt, n: &BigInt) -> Result<Option<KClass>> {
    let (Some(vars), Some(blocks)) = (stage.m_factors.to_usize(), n.to_usize()) else {
        return Ok(None);
    };
    if blocks.saturating_mul(vars + 1) > BLOCK_IMAGE_TERM_LIMIT {
        return Ok(None);
    }
    let all: Vec<usize> = (1..=vars).collect();
    let pulled = stage.g_class()?.pullback_power(big_l, &all)?;
    let mut out = KClass::trivial(stage.mult_offset() * &stage.dim_g, vars * blocks);
    for b in 1..=blocks {
        out.accumulate(&pulled.embed_block(b, blocks)?)?;
    }
    Ok(Some(out))
}

/// Checks `K₀(γ_j)(g_j) = L_{j+1} g_{j+1}`: class equality when the block
/// sum can be materialized, ranks and reduced parts symbolically otherwise.
pub fn identification_check(prev: &Stage, next: &Stage) -> Result<Certificate> {
    let n = next.n_prev.as_ref().ok_or_else(|| {
        Error::InvalidParams(format!("stage {} has no incoming power n", next.j))
    })?;
    let target = &next.big_l * &next.dim_g;
    let symbolic = (n + prev.mult_offset()) * &prev.dim_g;
    // each block pulls e_i back to L e_i; L g' carries L on each of its n m linear terms
    let factors_match = n * &prev.m_factors == next.m_factors;
    let exact = block_image(prev, &next.big_l, n)?;
    let (holds, how) = match &exact {
        Some(c) => {
            let expected = next.g_class()?.scale(&next.big_l);
            (
                *c == expected && symbolic == target && factors_match,
                format!(
                    "exact block sum ({} terms) equals L * g': {}",
                    c.term_count(),
                    *c == expected
                ),
            )
        }
        None => (
            symbolic == target && factors_match,
            format!(
                "block sum rank {symbolic}; linear terms {n} * {} = {} with coefficient {}",
                prev.m_factors,
                n * &prev.m_factors,
                next.big_l
            ),
        ),
    };
    Ok(Certificate::new(
        "generator-image",
        holds,
        format!("{how}; L * dim g' = {} * {} = {target}", next.big_l, next.dim_g),
        "K0(gamma)(g) = L g'",
    ))
}
