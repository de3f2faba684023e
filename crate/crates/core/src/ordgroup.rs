//! Ordered abelian groups with order unit: the perforated cyclic stage
//! groups `(Z, {0, l+1, l+2, ...})` and their inductive limit inside `Q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numbers::{Rational, Supernatural};

/// `(Z, {0} ∪ {l+1, l+2, ...})` with a distinguished positive unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicOrder {
    pub l: BigInt,
    pub unit: BigInt,
}

impl CyclicOrder {
    pub fn new(l: BigInt, unit: BigInt) -> Result<Self> {
        if l.is_negative() {
            return Err(Error::InvalidParams(format!("l = {l} must be non-negative")));
        }
        if unit <= l {
            return Err(Error::InvalidParams(format!(
                "unit {unit} is not positive in a cone starting at {}",
                &l + 1
            )));
        }
        Ok(Self { l, unit })
    }

    /// Smallest nonzero element of the cone.
    pub fn cone_min(&self) -> BigInt {
        &self.l + 1
    }

    pub fn contains(&self, t: &BigInt) -> bool {
        t.is_zero() || *t > self.l
    }

    /// No strong perforation iff the cone is all of `N`.
    pub fn is_weakly_unperforated(&self) -> bool {
        self.l.is_zero()
    }

    /// `(x, n)` with `x` outside the cone and `n·x` a nonzero cone element.
    pub fn perforation_witness(&self) -> Option<(BigInt, BigInt)> {
        (!self.is_weakly_unperforated()).then(|| (BigInt::one(), self.cone_min()))
    }
}

/// The limit of the stage groups, realized in `Q`: stage `j` embeds by
/// `t ↦ t / unit_j`, which sends every unit to 1.
///
/// The target description `(G_n, G_n ∩ (k, ∞) ∪ {0}, 1)` is kept alongside
/// the stage data; membership queries answer from both and refuse to
/// proceed if they ever disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitGroup {
    k: Rational,
    n: Supernatural,
    stages: Vec<CyclicOrder>,
    multipliers: Vec<BigInt>,
}

impl LimitGroup {
    pub fn new(k: Rational, n: Supernatural) -> Self {
        Self {
            k,
            n,
            stages: Vec::new(),
            multipliers: Vec::new(),
        }
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn supernatural(&self) -> &Supernatural {
        &self.n
    }

    pub fn is_realized(&self) -> bool {
        !self.stages.is_empty()
    }

    pub fn horizon(&self) -> usize {
        self.stages.len()
    }

    pub fn stage(&self, j: usize) -> Result<&CyclicOrder> {
        j.checked_sub(1)
            .and_then(|i| self.stages.get(i))
            .ok_or(Error::StageNotComputed(j))
    }

    /// Multiplier of the connecting map out of stage `j`.
    pub fn multiplier(&self, j: usize) -> Option<&BigInt> {
        j.checked_sub(1).and_then(|i| self.multipliers.get(i))
    }

    /// Appends the first stage.
    pub fn push_first(&mut self, order: CyclicOrder) -> Result<()> {
        if self.is_realized() {
            return Err(Error::InvalidParams("first stage already present".into()));
        }
        self.stages.push(order);
        Ok(())
    }

    /// Appends stage `j + 1`, reached from stage `j` by `t ↦ multiplier · t`.
    pub fn push_stage(&mut self, multiplier: BigInt, order: CyclicOrder) -> Result<()> {
        let prev = self
            .stages
            .last()
            .ok_or_else(|| Error::InvalidParams("no stage to extend".into()))?;
        if !multiplier.is_positive() || &prev.unit * &multiplier != order.unit {
            return Err(Error::InvalidParams(format!(
                "stage map by {multiplier} sends unit {} to {}, expected {}",
                prev.unit,
                &prev.unit * &multiplier,
                order.unit
            )));
        }
        // the connecting map must be positive: it sends the cone minimum into the cone
        if !order.contains(&(prev.cone_min() * &multiplier)) {
            return Err(Error::InvalidParams(format!(
                "stage map by {multiplier} sends {} outside the cone above {}",
                prev.cone_min(),
                order.l
            )));
        }
        self.multipliers.push(multiplier);
        self.stages.push(order);
        Ok(())
    }

    /// `x ∈ G_n`.
    pub fn limit_membership(&self, x: &Rational) -> bool {
        self.n.contains(x)
    }

    /// First computed stage `j` at which `x · unit_j` is an integer, with that integer.
    pub fn stage_representation(&self, x: &Rational) -> Option<(usize, BigInt)> {
        self.stages.iter().enumerate().find_map(|(i, st)| {
            let t = x * Rational::from_integer(st.unit.clone());
            t.is_integer().then(|| (i + 1, t.to_integer()))
        })
    }

    /// `x ∈ G_n ∩ (k, ∞) ∪ {0}`, checked against the stage cone at the
    /// first stage that represents `x`.
    pub fn cone_membership(&self, x: &Rational) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let (j, t) = self
            .stage_representation(x)
            .ok_or_else(|| Error::NotRepresentable(x.to_string()))?;
        let stagewise = self.stages[j - 1].contains(&t);
        let intensional = self.limit_membership(x) && *x > self.k;
        if stagewise != intensional {
            return Err(Error::RepresentationMismatch(format!(
                "{x}: stage {j} says {stagewise}, target cone says {intensional}"
            )));
        }
        Ok(intensional)
    }

    /// `(l_j + 1) / unit_j`, the smallest positive element of stage `j` in `Q`.
    pub fn cone_fraction(&self, j: usize) -> Result<Rational> {
        let st = self.stage(j)?;
        Ok(Rational::new(st.cone_min(), st.unit.clone()))
    }

    pub fn cone_fractions(&self) -> Vec<Rational> {
        self.stages
            .iter()
            .map(|st| Rational::new(st.cone_min(), st.unit.clone()))
            .collect()
    }

    /// The witness `(k, 2)`: `k` is not positive while `2k` is.
    pub fn perforation_witness(&self) -> Result<(Rational, BigInt)> {
        if !self.k.is_positive() {
            return Err(Error::InvalidParams(format!("k = {} must be positive", self.k)));
        }
        let x = self.k.clone();
        let n = BigInt::from(2);
        let nx = &x * Rational::from_integer(n.clone());
        if self.cone_membership(&x)? || !self.cone_membership(&nx)? || nx.is_zero() {
            return Err(Error::RepresentationMismatch(format!(
                "({x}, {n}) is not a perforation witness"
            )));
        }
        Ok((x, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn order(l: i64, unit: i64) -> CyclicOrder {
        CyclicOrder::new(b(l), b(unit)).unwrap()
    }

    /// Stage data of the (1/2, 2^inf*3^inf) construction with L_2 = 3, L_3 = 2.
    fn half() -> LimitGroup {
        let mut g = LimitGroup::new(q(1, 2), "2^inf*3^inf".parse().unwrap());
        g.push_first(order(1, 2)).unwrap();
        g.push_stage(b(3), order(3, 6)).unwrap();
        g.push_stage(b(2), order(6, 12)).unwrap();
        g
    }

    #[test]
    fn unperforation() {
        assert!(order(0, 1).is_weakly_unperforated());
        assert!(!order(1, 2).is_weakly_unperforated());
        assert_eq!(order(3, 5).perforation_witness(), Some((b(1), b(4))));
        assert_eq!(order(0, 3).perforation_witness(), None);
    }

    #[test]
    fn cyclic_order_validation() {
        assert!(CyclicOrder::new(b(2), b(2)).is_err());
        assert!(CyclicOrder::new(b(-1), b(2)).is_err());
    }

    #[test]
    fn memberships() {
        let g = half();
        assert!(g.limit_membership(&q(5, 12)));
        assert!(!g.limit_membership(&q(1, 7)));
        assert!(g.limit_membership(&q(7, 1)));
        assert!(!g.cone_membership(&q(1, 2)).unwrap());
        assert!(g.cone_membership(&q(0, 1)).unwrap());
        assert!(g.cone_membership(&q(1, 1)).unwrap());
        assert!(g.cone_membership(&q(7, 12)).unwrap());
        assert!(!g.cone_membership(&q(-7, 12)).unwrap());
        assert_eq!(
            g.cone_membership(&q(1, 7)),
            Err(Error::NotRepresentable("1/7".into()))
        );
        // representable in G_n but beyond the computed horizon
        assert!(matches!(g.cone_membership(&q(1, 9)), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn fractions() {
        let g = half();
        assert_eq!(g.cone_fractions(), vec![q(1, 1), q(2, 3), q(7, 12)]);
        for j in 1..=3 {
            let unit = &g.stage(j).unwrap().unit;
            assert_eq!(
                g.cone_fraction(j).unwrap() - g.k(),
                Rational::new(b(1), unit.clone())
            );
        }
        assert_eq!(g.cone_fraction(4), Err(Error::StageNotComputed(4)));
        assert_eq!(g.cone_fraction(0), Err(Error::StageNotComputed(0)));
    }

    #[test]
    fn witness() {
        assert_eq!(half().perforation_witness().unwrap(), (q(1, 2), b(2)));
        let mut g = LimitGroup::new(q(2, 3), "3^inf".parse().unwrap());
        g.push_first(order(2, 3)).unwrap();
        assert_eq!(g.perforation_witness().unwrap(), (q(2, 3), b(2)));
    }

    #[test]
    fn stage_maps_are_checked() {
        let mut g = LimitGroup::new(q(1, 2), "2^inf*3^inf".parse().unwrap());
        assert!(g.push_stage(b(3), order(3, 6)).is_err());
        g.push_first(order(1, 2)).unwrap();
        assert!(g.push_stage(b(2), order(3, 6)).is_err());
        assert!(g.push_first(order(1, 2)).is_err());
        let mut g = LimitGroup::new(q(1, 3), "3^inf".parse().unwrap());
        g.push_first(order(1, 3)).unwrap();
        // 2 * (1 + 1) = 4 is not in a cone starting at 5
        assert!(g.push_stage(b(2), order(4, 6)).is_err());
    }

    #[test]
    fn mismatch_is_reported() {
        // stage data inconsistent with k: cone at stage 1 starts at 1 but k = 1/2
        let mut g = LimitGroup::new(q(1, 2), "2^inf".parse().unwrap());
        g.push_first(order(0, 2)).unwrap();
        assert!(matches!(
            g.cone_membership(&q(1, 2)),
            Err(Error::RepresentationMismatch(_))
        ));
    }
}
