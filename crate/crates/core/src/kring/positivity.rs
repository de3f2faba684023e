//! Three-valued positivity oracle for multiples of a standard-form class.
//!
//! The oracle decides `h · ([ξ^{×q}] − [θ_m])` over `(S²)^{×q}` from a chain
//! of rules, first match wins. Two rules carry the real content: the Euler
//! class of the Cartesian Hopf product obstructs positivity while
//! `0 < h(q − m) < q`, and the stable range makes every class of rank at
//! least half the real dimension (here `q`) a genuine bundle.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::StandardForm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Zero,
    Positive,
    NotPositive,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Zero => "Zero",
            Verdict::Positive => "Positive",
            Verdict::NotPositive => "NotPositive",
            Verdict::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// A verdict together with the rule that produced it and the rule's
/// inequality instantiated with concrete numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Positivity {
    pub verdict: Verdict,
    pub rule: &'static str,
    pub certificate: String,
}

impl fmt::Display for Positivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}", self.verdict, self.rule, self.certificate)
    }
}

pub trait PositivityRule: Send + Sync {
    fn name(&self) -> &'static str;

    /// `None` when the rule does not apply to this input.
    fn decide(&self, sf: &StandardForm, h: &BigInt) -> Option<Positivity>;
}

fn multiple_rank(sf: &StandardForm, h: &BigInt) -> BigInt {
    h * sf.rank()
}

pub struct ZeroMultiple;

impl PositivityRule for ZeroMultiple {
    fn name(&self) -> &'static str {
        "zero-multiple"
    }

    fn decide(&self, _sf: &StandardForm, h: &BigInt) -> Option<Positivity> {
        h.is_zero().then(|| Positivity {
            verdict: Verdict::Zero,
            rule: self.name(),
            certificate: "h = 0".into(),
        })
    }
}

/// Nonzero top Chern class of the Cartesian Hopf product.
pub struct EulerObstruction;

impl PositivityRule for EulerObstruction {
    fn name(&self) -> &'static str {
        "euler-obstruction"
    }

    fn decide(&self, sf: &StandardForm, h: &BigInt) -> Option<Positivity> {
        let r = multiple_rank(sf, h);
        (r.is_positive() && r < sf.q).then(|| Positivity {
            verdict: Verdict::NotPositive,
            rule: self.name(),
            certificate: format!("0 < {r} < {}", sf.q),
        })
    }
}

/// Rank at least half the real dimension `2q` of the base.
pub struct StableRange;

impl PositivityRule for StableRange {
    fn name(&self) -> &'static str {
        "stable-range"
    }

    fn decide(&self, sf: &StandardForm, h: &BigInt) -> Option<Positivity> {
        let r = multiple_rank(sf, h);
        (r >= sf.q).then(|| Positivity {
            verdict: Verdict::Positive,
            rule: self.name(),
            certificate: format!("{r} >= {}", sf.q),
        })
    }
}

/// A nonzero class whose rank is not positive is never a bundle class.
pub struct NonPositiveRank;

impl PositivityRule for NonPositiveRank {
    fn name(&self) -> &'static str {
        "non-positive-rank"
    }

    fn decide(&self, sf: &StandardForm, h: &BigInt) -> Option<Positivity> {
        let r = multiple_rank(sf, h);
        (!h.is_zero() && !r.is_positive()).then(|| Positivity {
            verdict: Verdict::NotPositive,
            rule: self.name(),
            certificate: format!("rank {r} <= 0 for a nonzero class"),
        })
    }
}

pub fn default_rules() -> Vec<Box<dyn PositivityRule>> {
    vec![
        Box::new(ZeroMultiple),
        Box::new(EulerObstruction),
        Box::new(StableRange),
        Box::new(NonPositiveRank),
    ]
}

/// Runs `rules` in order on `h · sf` over `(S²)^{×factors}`.
///
/// Only applies when the class lives over exactly `q` sphere factors.
pub fn classify_with(
    rules: &[Box<dyn PositivityRule>],
    sf: &StandardForm,
    h: &BigInt,
    factors: &BigInt,
) -> Result<Positivity> {
    if &sf.q != factors {
        return Err(Error::NotApplicable(format!(
            "q = {} but the base has {factors} sphere factors",
            sf.q
        )));
    }
    if h.is_negative() {
        return Err(Error::NotApplicable(format!("multiple h = {h} is negative")));
    }
    Ok(rules
        .iter()
        .find_map(|rule| rule.decide(sf, h))
        .unwrap_or_else(|| Positivity {
            verdict: Verdict::Unknown,
            rule: "none",
            certificate: format!("no rule decides h = {h}, q = {}, m = {}", sf.q, sf.m),
        }))
}

pub fn classify(sf: &StandardForm, h: &BigInt, factors: &BigInt) -> Result<Positivity> {
    classify_with(&default_rules(), sf, h, factors)
}

/// Least `h >= 1` whose multiple is positive: `ceil(q / (q - m))`.
pub fn min_positive_multiple(sf: &StandardForm, factors: &BigInt) -> Result<BigInt> {
    let rank = sf.rank();
    if !rank.is_positive() {
        return Err(Error::NotApplicable(format!(
            "rank q - m = {rank} must be at least 1"
        )));
    }
    let h = sf.q.div_ceil(&rank);
    let at = classify(sf, &h, factors)?;
    if at.verdict != Verdict::Positive {
        return Err(Error::NotApplicable(format!("h = {h} not certified positive: {at}")));
    }
    if h > BigInt::one() {
        let below = classify(sf, &(&h - 1), factors)?;
        if below.verdict == Verdict::Positive {
            return Err(Error::NotApplicable(format!(
                "h = {} already positive: {below}",
                &h - 1
            )));
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(q: i64, m: i64) -> StandardForm {
        StandardForm::new(q, m).unwrap()
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn first_stage_generator() {
        let p = classify(&sf(2, 1), &b(1), &b(2)).unwrap();
        assert_eq!(p.verdict, Verdict::NotPositive);
        assert_eq!(p.certificate, "0 < 1 < 2");
        assert_eq!(p.rule, "euler-obstruction");
        let p = classify(&sf(2, 1), &b(2), &b(2)).unwrap();
        assert_eq!(p.verdict, Verdict::Positive);
        assert_eq!(p.certificate, "2 >= 2");
        for h in 2..50 {
            assert_eq!(classify(&sf(2, 1), &b(h), &b(2)).unwrap().verdict, Verdict::Positive);
        }
    }

    #[test]
    fn second_stage_window() {
        let g = sf(102, 69);
        assert_eq!(classify(&g, &b(3), &b(102)).unwrap().verdict, Verdict::NotPositive);
        assert_eq!(classify(&g, &b(4), &b(102)).unwrap().verdict, Verdict::Positive);
        assert_eq!(min_positive_multiple(&g, &b(102)).unwrap(), b(4));
    }

    #[test]
    fn min_multiples() {
        assert_eq!(min_positive_multiple(&sf(2, 1), &b(2)).unwrap(), b(2));
        assert_eq!(min_positive_multiple(&sf(5, 0), &b(5)).unwrap(), b(1));
        assert!(min_positive_multiple(&sf(3, 3), &b(3)).is_err());
    }

    #[test]
    fn zero_and_rank_rules() {
        assert_eq!(classify(&sf(3, 1), &b(0), &b(3)).unwrap().verdict, Verdict::Zero);
        let p = classify(&sf(3, 3), &b(2), &b(3)).unwrap();
        assert_eq!((p.verdict, p.rule), (Verdict::NotPositive, "non-positive-rank"));
        let p = classify(&sf(3, 5), &b(1), &b(3)).unwrap();
        assert_eq!(p.verdict, Verdict::NotPositive);
    }

    #[test]
    fn applicability() {
        assert!(matches!(
            classify(&sf(2, 1), &b(1), &b(3)),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            classify(&sf(2, 1), &b(-1), &b(2)),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn empty_chain_is_unknown() {
        let p = classify_with(&[], &sf(2, 1), &b(1), &b(2)).unwrap();
        assert_eq!(p.verdict, Verdict::Unknown);
    }
}
