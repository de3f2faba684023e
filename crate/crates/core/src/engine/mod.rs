//! Stage-by-stage driver: picks the primes and the powers `n_j`, advances
//! the stage data, verifies every certificate and assembles the limit.

mod enumeration;
mod params;
mod policy;
mod report;
mod window;

pub use enumeration::{enumerations, Increasing, PrimeEnumeration, RoundRobin};
pub use params::{ConstructionParams, Validated, DEFAULT_ENUMERATION, DEFAULT_POLICY};
pub use policy::{policies, Minimal, NPolicy, SeededRandom, RANDOM_POOL};
pub use report::{Report, StageRecord};
pub use window::{feasible_window, FeasibleWindow};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::blocks::{
    cancellation_check, copies_for_containment, identification_check, intertwining_check,
    kernel_check, relative_order, simplicity_checklist, Certificate, Stage,
};
use crate::error::{Error, Result};
use crate::kring::StandardForm;
use crate::numbers::is_prime;
use crate::ordgroup::LimitGroup;

/// Coefficient bound for the per-stage kernel enumeration.
pub const KERNEL_BOUND: i64 = 1;

/// Stage 1: `X_1 = (S²)^{a+1}`, `g_1 = [ξ^{×(a+1)}] − [θ_a]`, `[p_1] = b g_1`.
pub fn init_stage(params: &ConstructionParams) -> Result<Stage> {
    let Validated { a, b, .. } = params.validate()?;
    let m_factors: BigInt = &a + 1;
    let dim_p = b.clone();
    let k = BigInt::from(1);
    Ok(Stage {
        j: 1,
        big_l: b.clone(),
        n_prev: None,
        g: StandardForm::new(m_factors.clone(), a.clone())?,
        dim_g: BigInt::from(1),
        q: copies_for_containment(&k, &dim_p, &m_factors),
        m_factors,
        dim_p,
        unit: b,
        k,
        l0: BigInt::zero(),
        l1: BigInt::from(1),
        l: a,
        mult: None,
        r: None,
        s: None,
    })
}

/// Moves from stage `j` to stage `j + 1` through the prime `big_l` and the
/// power `n`. Records `mult`, `r`, `s` on `prev` and returns the new stage
/// with the certificates of the connecting map.
pub fn advance(prev: &mut Stage, big_l: u64, n: &BigInt) -> Result<(Stage, Vec<Certificate>)> {
    if !is_prime(big_l) {
        return Err(Error::NotPrime(big_l));
    }
    let l_big = BigInt::from(big_l);
    let window = feasible_window(prev, &l_big)?;
    if !window.contains(n) {
        return Err(Error::InvalidParams(format!(
            "n = {n} is outside the window at stage {}: {window}",
            prev.j
        )));
    }
    let mult = n + prev.mult_offset();
    let (dim_g, rem) = (&mult * &prev.dim_g).div_rem(&l_big);
    if !rem.is_zero() {
        return Err(Error::CertificateFailed {
            name: "divisibility".into(),
            detail: format!("{big_l} does not divide {mult} * {}", prev.dim_g),
        });
    }
    let m_factors = &prev.m_factors * n;
    let dim_p = &mult * &prev.dim_p;
    let k = BigInt::from(3) * &prev.k;
    let next = Stage {
        j: prev.j + 1,
        big_l: l_big.clone(),
        n_prev: Some(n.clone()),
        g: StandardForm::new(m_factors.clone(), &m_factors - &dim_g)?,
        dim_g,
        q: copies_for_containment(&k, &dim_p, &m_factors),
        m_factors,
        dim_p,
        unit: &prev.unit * &l_big,
        k,
        l0: BigInt::from(2) * &prev.l0 + &prev.l1,
        l1: BigInt::from(2) * &prev.l1 + &prev.l0,
        l: &l_big * &prev.l,
        mult: None,
        r: None,
        s: None,
    };
    prev.r = Some(BigInt::from(2) * &mult);
    prev.s = Some(mult.clone());
    prev.mult = Some(mult);

    let mut certs = intertwining_check(prev, &next)?;
    certs.extend(simplicity_checklist(prev, &next)?);
    certs.push(identification_check(prev, &next)?);
    require_all(&certs)?;
    Ok((next, certs))
}

/// Certificates that depend on one stage only.
pub fn stage_certificates(stage: &Stage, kernel_bound: i64) -> Result<Vec<Certificate>> {
    let mut certs = stage.invariant_certificates();
    certs.push(kernel_check(stage, kernel_bound)?);
    certs.push(cancellation_check(stage));
    let order = relative_order(stage)?;
    let lower = &stage.l * &stage.dim_g;
    let upper = (&stage.l + 1) * &stage.dim_g;
    certs.push(Certificate::new(
        "relative-order",
        lower < stage.m_factors && stage.m_factors <= upper,
        format!(
            "least positive multiple of g = {}: {} * {} = {lower} < {} <= {upper}",
            order.cone_min(),
            stage.l,
            stage.dim_g,
            stage.m_factors
        ),
        "cone on Z g is {0, l + 1, l + 2, ...}",
    ));
    require_all(&certs)?;
    Ok(certs)
}

fn require_all(certs: &[Certificate]) -> Result<()> {
    match certs.iter().find(|c| !c.holds) {
        Some(c) => Err(Error::CertificateFailed {
            name: c.name.clone(),
            detail: c.detail.clone(),
        }),
        None => Ok(()),
    }
}

/// Owns the state of one construction while it is being built.
pub struct Engine {
    params: ConstructionParams,
    primes: Vec<u64>,
    policy: Box<dyn NPolicy>,
    done: Vec<StageRecord>,
    current: StageRecord,
    limit: LimitGroup,
}

impl Engine {
    pub fn new(params: ConstructionParams) -> Result<Self> {
        let v = params.validate()?;
        let enumeration = enumerations().resolve(&params.enumeration)?;
        let policy = policies().resolve(&params.policy)?;
        let primes = enumeration.primes(&v.rest, &v.b, params.stages - 1)?;
        let stage = init_stage(&params)?;
        let certificates = stage_certificates(&stage, KERNEL_BOUND)?;
        let mut limit = LimitGroup::new(params.k.clone(), params.n.clone());
        limit.push_first(relative_order(&stage)?)?;
        Ok(Self {
            params,
            primes,
            policy,
            done: Vec::new(),
            current: StageRecord {
                stage,
                certificates,
            },
            limit,
        })
    }

    pub fn current(&self) -> &Stage {
        &self.current.stage
    }

    pub fn is_finished(&self) -> bool {
        self.done.len() + 1 >= self.params.stages
    }

    /// Builds the next stage; `false` once all requested stages exist.
    pub fn step(&mut self) -> Result<bool> {
        if self.is_finished() {
            return Ok(false);
        }
        let big_l = self.primes[self.done.len()];
        let window = feasible_window(&self.current.stage, &BigInt::from(big_l))?;
        let n = self.policy.choose(&window)?;
        let (next, edge) = advance(&mut self.current.stage, big_l, &n)?;
        let certificates = stage_certificates(&next, KERNEL_BOUND)?;
        self.limit.push_stage(BigInt::from(big_l), relative_order(&next)?)?;
        self.current.certificates.extend(edge);
        let prev = std::mem::replace(
            &mut self.current,
            StageRecord {
                stage: next,
                certificates,
            },
        );
        self.done.push(prev);
        Ok(true)
    }

    pub fn finish(mut self) -> Result<Report> {
        while self.step()? {}
        let witness = self.limit.perforation_witness()?;
        let mut stages = self.done;
        stages.push(self.current);
        Ok(Report {
            params: self.params,
            stages,
            limit: self.limit,
            witness,
        })
    }
}

/// Builds all requested stages and the limit summary.
pub fn run(params: ConstructionParams) -> Result<Report> {
    Engine::new(params)?.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::parse_rational;
    use crate::numbers::Rational;

    fn params(k: &str, n: &str, j: usize) -> ConstructionParams {
        ConstructionParams::new(parse_rational(k).unwrap(), n.parse().unwrap(), j)
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn first_stages() {
        let s = init_stage(&params("1/2", "2^inf*3^inf", 1)).unwrap();
        assert_eq!((s.m_factors.clone(), s.dim_p.clone(), s.l.clone()), (b(2), b(2), b(1)));
        assert_eq!((s.unit.clone(), s.q.clone()), (b(2), b(24)));
        let s = init_stage(&params("2/3", "2^inf*3^inf", 1)).unwrap();
        assert_eq!((s.m_factors, s.dim_p, s.l, s.unit), (b(3), b(3), b(2), b(3)));
        assert!(matches!(
            init_stage(&params("1/2", "3^inf", 1)),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn first_advance() {
        let mut s1 = init_stage(&params("1/2", "2^inf*3^inf", 2)).unwrap();
        let (s2, certs) = advance(&mut s1, 3, &b(51)).unwrap();
        assert_eq!(s1.mult, Some(b(99)));
        assert_eq!((s1.r.clone(), s1.s.clone()), (Some(b(198)), Some(b(99))));
        assert_eq!(s2.dim_g, b(33));
        assert_eq!(s2.m_factors, b(102));
        assert_eq!(s2.g, StandardForm::new(102, 69).unwrap());
        assert_eq!((s2.dim_p.clone(), s2.unit.clone(), s2.k.clone()), (b(198), b(6), b(3)));
        assert_eq!((s2.l0.clone(), s2.l1.clone(), s2.l.clone()), (b(1), b(2), b(3)));
        assert!(certs.iter().all(|c| c.holds));
        // the cone check from the window
        assert!(b(3) * b(33) < b(102) && b(4) * b(33) >= b(102));
    }

    #[test]
    fn advance_rejects_bad_inputs() {
        let mut s1 = init_stage(&params("1/2", "2^inf*3^inf", 2)).unwrap();
        assert!(matches!(advance(&mut s1, 4, &b(51)), Err(Error::NotPrime(4))));
        assert!(matches!(advance(&mut s1, 3, &b(52)), Err(Error::InvalidParams(_))));
        assert!(matches!(advance(&mut s1, 3, &b(99)), Err(Error::InvalidParams(_))));
        assert_eq!(s1.mult, None);
    }

    #[test]
    fn second_advance_is_exact() {
        let mut s1 = init_stage(&params("1/2", "2^inf*3^inf", 3)).unwrap();
        let (mut s2, _) = advance(&mut s1, 3, &b(51)).unwrap();
        let w = feasible_window(&s2, &b(2)).unwrap();
        assert_eq!(w.offset, b(3_207_600));
        assert_eq!(w.upper, None);
        assert_eq!(w.first().unwrap(), b(105_850_802));
        let (s3, _) = advance(&mut s2, 2, &b(105_850_802)).unwrap();
        assert_eq!(s2.mult, Some(b(109_058_402)));
        assert_eq!(s3.dim_g, b(33) * b(54_529_201));
        assert_eq!((s3.l.clone(), s3.unit.clone()), (b(6), b(12)));
    }

    #[test]
    fn runs() {
        let r = run(params("1/2", "2^inf*3^inf", 2)).unwrap();
        assert_eq!(r.witness, (Rational::new(b(1), b(2)), b(2)));
        assert_eq!(
            r.limit.cone_fractions(),
            vec![Rational::from_integer(b(1)), Rational::new(b(2), b(3))]
        );
        let r = run(params("1/2", "2^inf*3^inf", 3)).unwrap();
        assert_eq!(r.limit.cone_fraction(3).unwrap(), Rational::new(b(7), b(12)));
        assert_eq!(r.stages.len(), 3);
        assert!(r.stages[2].stage.mult.is_none());
    }

    #[test]
    fn single_stage_run() {
        let r = run(params("3/5", "5^inf", 1)).unwrap();
        assert_eq!(r.stages.len(), 1);
        assert_eq!(r.limit.cone_fractions(), vec![Rational::new(b(4), b(5))]);
    }

    #[test]
    fn strategies_are_resolved_by_name() {
        let p = params("1/2", "2^inf*3^inf", 3).with_policy("greedy");
        assert!(matches!(run(p), Err(Error::UnknownStrategy { .. })));
        let p = params("1/2", "2^inf*3^inf", 3).with_enumeration("increasing");
        let r = run(p).unwrap();
        assert_eq!(r.stages[1].stage.big_l, b(2));
    }
}
