//! `K⁰((S²)^M) = Z[e_1, ..., e_M] / (e_i² = 0)`.
//!
//! Classes are stored sparsely, keyed by the set of generators in each
//! monomial. The empty monomial carries the rank. The Hopf bundle pulled
//! back from the i-th factor is `1 + e_i`; the trivial bundle of rank m is
//! `m`. The Cartesian product `ξ^{×q}` (fibre `ξ_{x_1} ⊕ ... ⊕ ξ_{x_q}`) is
//! `q + e_1 + ... + e_q`; the external tensor product `ξ ⊠ ... ⊠ ξ` is the
//! line bundle `Π (1 + e_i)`.

mod positivity;

pub use positivity::{
    classify, classify_with, default_rules, min_positive_multiple, EulerObstruction,
    NonPositiveRank, Positivity, PositivityRule, StableRange, Verdict, ZeroMultiple,
};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest number of sphere factors for which a standard-form class is
/// expanded term by term.
pub const MAX_EXPANSION_VARS: usize = 1 << 20;

/// Square-free monomial `e_{i_1} ... e_{i_r}`, indices strictly increasing, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Monomial(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of two monomials; `None` when they share a generator.
    pub fn times(&self, other: &Monomial) -> Option<Monomial> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some(Monomial(out))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("e{")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// An element of `K⁰((S²)^M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl KClass {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// `[θ_m]`: rank `m`, no reduced part.
    pub fn trivial(m: impl Into<BigInt>, vars: usize) -> Self {
        let mut c = Self::zero(vars);
        c.add_term(Monomial::unit(), m.into());
        c
    }

    /// `Σ_{i ∈ indices} (1 + e_i)`: the Cartesian product of Hopf bundles.
    pub fn hopf_cartesian(indices: &[usize], vars: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidParams("Hopf product needs at least one factor".into()));
        }
        let mut out = Self::zero(vars);
        for &i in indices {
            check_index(i, vars)?;
            out.add_term(Monomial::unit(), BigInt::one());
            out.add_term(Monomial(vec![i]), BigInt::one());
        }
        Ok(out)
    }

    /// `Π_{i ∈ indices} (1 + e_i)`, fully expanded: the external tensor
    /// product of Hopf bundles, a line bundle.
    pub fn hopf_external(indices: &[usize], vars: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidParams("Hopf product needs at least one factor".into()));
        }
        let mut out = Self::trivial(1, vars);
        for &i in indices {
            check_index(i, vars)?;
            let mut factor = Self::trivial(1, vars);
            factor.add_term(Monomial(vec![i]), BigInt::one());
            out = out.checked_mul(&factor)?;
        }
        Ok(out)
    }

    /// Builds a class from explicit terms; zero coefficients are dropped.
    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut c = Self::zero(vars);
        for (m, k) in terms {
            if let Some(&last) = m.0.last() {
                check_index(last, vars)?;
            }
            if m.0.first() == Some(&0) {
                return Err(Error::IndexOutOfRange { index: 0, limit: vars });
            }
            c.add_term(m, k);
        }
        Ok(c)
    }

    fn add_term(&mut self, m: Monomial, k: BigInt) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(k);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Augmentation: the coefficient of the empty monomial.
    pub fn rank(&self) -> BigInt {
        self.coefficient(&Monomial::unit())
    }

    /// Coefficient of `e_1 ... e_M`, the Euler-obstruction slot.
    pub fn top_coefficient(&self) -> BigInt {
        self.coefficient(&Monomial((1..=self.vars).collect()))
    }

    /// gcd of the coefficients of the non-empty monomials (0 if there are none).
    pub fn reduced_gcd(&self) -> BigInt {
        self.terms
            .iter()
            .filter(|(m, _)| !m.is_unit())
            .fold(BigInt::zero(), |g, (_, k)| g.gcd(k))
    }

    fn same_vars(&self, other: &KClass) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableCountMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &KClass) -> Result<KClass> {
        let mut out = self.clone();
        out.accumulate(other)?;
        Ok(out)
    }

    /// In-place `self += other`.
    pub fn accumulate(&mut self, other: &KClass) -> Result<()> {
        self.same_vars(other)?;
        for (m, k) in &other.terms {
            self.add_term(m.clone(), k.clone());
        }
        Ok(())
    }

    pub fn checked_sub(&self, other: &KClass) -> Result<KClass> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &KClass) -> Result<KClass> {
        self.same_vars(other)?;
        let mut out = KClass::zero(self.vars);
        for (ma, ka) in &self.terms {
            for (mb, kb) in &other.terms {
                if let Some(m) = ma.times(mb) {
                    out.add_term(m, ka * kb);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, h: &BigInt) -> KClass {
        if h.is_zero() {
            return KClass::zero(self.vars);
        }
        KClass {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * h)).collect(),
        }
    }

    pub fn neg(&self) -> KClass {
        self.scale(&-BigInt::one())
    }

    /// Effect of applying the degree-`eta` map `ω_eta` on each factor in `on`:
    /// substitutes `e_i ↦ eta · e_i` for `i ∈ on`. Rank is unchanged.
    pub fn pullback_power(&self, eta: &BigInt, on: &[usize]) -> Result<KClass> {
        for &i in on {
            check_index(i, self.vars)?;
        }
        let mut on_sorted = on.to_vec();
        on_sorted.sort_unstable();
        on_sorted.dedup();
        let mut out = KClass::zero(self.vars);
        for (m, k) in &self.terms {
            let hits = m
                .0
                .iter()
                .filter(|i| on_sorted.binary_search(i).is_ok())
                .count();
            out.add_term(m.clone(), k * num_traits::pow(eta.clone(), hits));
        }
        Ok(out)
    }

    /// Moves this class into the `block`-th window (1-based) of `blocks`
    /// consecutive copies of its factors.
    pub fn embed_block(&self, block: usize, blocks: usize) -> Result<KClass> {
        if block == 0 || block > blocks {
            return Err(Error::IndexOutOfRange {
                index: block,
                limit: blocks,
            });
        }
        let offset = (block - 1) * self.vars;
        Ok(KClass {
            vars: self.vars * blocks,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (Monomial(m.0.iter().map(|i| i + offset).collect()), k.clone()))
                .collect(),
        })
    }
}

fn check_index(i: usize, vars: usize) -> Result<()> {
    if i == 0 || i > vars {
        return Err(Error::IndexOutOfRange { index: i, limit: vars });
    }
    Ok(())
}

/// `c*e{i,j,...}` terms in sorted monomial order joined by `+`.
impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, k)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str("+")?;
            }
            write!(f, "{k}*{m}")?;
        }
        Ok(())
    }
}

/// `[ξ^{×q}] − [θ_m]` over `(S²)^q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardForm {
    pub q: BigInt,
    pub m: BigInt,
}

impl StandardForm {
    pub fn new(q: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self> {
        let (q, m) = (q.into(), m.into());
        if !q.is_positive() || m.is_negative() {
            return Err(Error::InvalidParams(format!(
                "standard form needs q > 0 and m >= 0, got q = {q}, m = {m}"
            )));
        }
        Ok(Self { q, m })
    }

    pub fn rank(&self) -> BigInt {
        &self.q - &self.m
    }

    /// Expands into an explicit class over `q` factors: `(q − m) + Σ e_i`.
    pub fn to_class(&self) -> Result<KClass> {
        let vars = self
            .q
            .to_usize()
            .filter(|&v| v <= MAX_EXPANSION_VARS)
            .ok_or_else(|| Error::ExpansionTooLarge {
                vars: self.q.to_string(),
                limit: MAX_EXPANSION_VARS,
            })?;
        let all: Vec<usize> = (1..=vars).collect();
        KClass::hopf_cartesian(&all, vars)?.checked_sub(&KClass::trivial(self.m.clone(), vars))
    }
}

/// Total Chern class of `x`, as a polynomial in the degree-two generators
/// `x_i` of `H²` of the sphere factors (stored with the same monomial keys).
///
/// Uses `ch(e_i) = x_i` and `log c = Σ_k (−1)^{k−1} (k−1)! ch_k`; the
/// exponential terminates because every `x_i` squares to zero.
pub fn total_chern_class(x: &KClass) -> Result<KClass> {
    let vars = x.vars;
    let mut log = KClass::zero(vars);
    for (m, k) in &x.terms {
        let d = m.degree();
        if d == 0 {
            continue;
        }
        let mut coeff = k * factorial(d - 1);
        if d % 2 == 0 {
            coeff = -coeff;
        }
        log.add_term(m.clone(), coeff);
    }
    let top = log.terms.keys().map(|m| m.degree()).sum::<usize>().min(vars);
    // Σ_{n ≤ top} log^n · top!/n!, divided by top! at the end
    let top_fact = factorial(top);
    let mut power = KClass::trivial(1, vars);
    let mut acc = KClass::zero(vars);
    for n in 0..=top {
        if n > 0 {
            power = power.checked_mul(&log)?;
            if power.is_zero() {
                break;
            }
        }
        acc = acc.checked_add(&power.scale(&(&top_fact / factorial(n))))?;
    }
    let mut out = KClass::zero(vars);
    for (m, k) in acc.terms {
        let (q, r) = k.div_rem(&top_fact);
        if !r.is_zero() {
            return Err(Error::InvalidParams(format!(
                "non-integral Chern coefficient {k}/{top_fact} on {m}"
            )));
        }
        out.add_term(m, q);
    }
    Ok(out)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
