//! Exact rationals, generalized (supernatural) integers and the subgroups
//! of the rationals they determine.
//!
//! A generalized integer is a formal product `p1^e1 * p2^e2 * ...` of
//! distinct primes with exponents in `N ∪ {∞}`. It determines the subgroup
//! `G_n` of rationals whose reduced denominators divide it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent of a prime in a generalized integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl Exponent {
    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// `self >= e`, with `∞ >= e` for every finite `e`.
    pub fn covers(self, e: u64) -> bool {
        match self {
            Exponent::Infinite => true,
            Exponent::Finite(f) => f >= e,
        }
    }

    /// `self - e`, with `∞ - e = ∞`. `None` when the subtraction would go negative.
    pub fn minus(self, e: u64) -> Option<Exponent> {
        match self {
            Exponent::Infinite => Some(Exponent::Infinite),
            Exponent::Finite(f) => f.checked_sub(e).map(Exponent::Finite),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Exponent::Infinite, Exponent::Infinite) => Equal,
            (Exponent::Infinite, _) => Greater,
            (_, Exponent::Infinite) => Less,
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// A generalized integer. Zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Supernatural {
    factors: BTreeMap<u64, Exponent>,
}

impl Supernatural {
    /// The generalized integer 1 (no primes).
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds from `(prime, exponent)` pairs, validating primality and distinctness.
    pub fn from_factors<I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Exponent)>,
    {
        let mut map = BTreeMap::new();
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if map.contains_key(&p) {
                return Err(Error::RepeatedPrime(p));
            }
            if e != Exponent::Finite(0) {
                map.insert(p, e);
            }
        }
        Ok(Self { factors: map })
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        self.factors.get(&p).copied().unwrap_or(Exponent::Finite(0))
    }

    /// Primes with nonzero exponent, increasing.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_infinite(&self) -> bool {
        self.factors.values().any(|e| e.is_infinite())
    }

    /// Membership of `x` in `G_n`: every prime power in the reduced
    /// denominator of `x` must divide `self`.
    pub fn contains(&self, x: &Rational) -> bool {
        let mut d = x.denom().magnitude().clone();
        for (&p, &e) in &self.factors {
            let p = BigUint::from(p);
            let mut used = 0u64;
            while e.covers(used + 1) {
                let (q, r) = d.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                d = q;
                used += 1;
            }
        }
        d.is_one()
    }

    /// Whether the positive integer `b` divides `self`.
    pub fn divisible_by(&self, b: &BigUint) -> bool {
        self.quotient_by_integer(b).is_ok()
    }

    /// `self / b`, subtracting the exponents of `b` (with `∞ - e = ∞`).
    pub fn quotient_by_integer(&self, b: &BigUint) -> Result<Supernatural> {
        if b.is_zero() {
            return Err(Error::InvalidParams("divisor must be positive".into()));
        }
        let mut rest = b.clone();
        let mut out = self.factors.clone();
        for (&p, &e) in &self.factors {
            let bp = BigUint::from(p);
            let mut k = 0u64;
            loop {
                let (q, r) = rest.div_rem(&bp);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                k += 1;
            }
            if k == 0 {
                continue;
            }
            match e.minus(k) {
                Some(Exponent::Finite(0)) => {
                    out.remove(&p);
                }
                Some(left) => {
                    out.insert(p, left);
                }
                None => {
                    return Err(Error::NotDivisible {
                        divisor: b.to_string(),
                        prime: p.to_string(),
                        needed: k,
                        available: match e {
                            Exponent::Finite(f) => f,
                            Exponent::Infinite => unreachable!(),
                        },
                    })
                }
            }
        }
        if !rest.is_one() {
            let p = smallest_prime_factor(&rest);
            let mut needed = 0;
            while (&rest % &p).is_zero() {
                rest /= &p;
                needed += 1;
            }
            return Err(Error::NotDivisible {
                divisor: b.to_string(),
                prime: p.to_string(),
                needed,
                available: 0,
            });
        }
        Ok(Supernatural { factors: out })
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                Exponent::Finite(1) => write!(f, "{p}")?,
                e => write!(f, "{p}^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Supernatural {
    type Err = Error;

    /// Grammar: `term ("*" term)*`, `term := PRIME ("^" (DIGITS | "inf"))?`,
    /// `inf` case-insensitive, no whitespace.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        if text.is_empty() {
            return Err(bad("empty input"));
        }
        let mut factors = Vec::new();
        for term in text.split('*') {
            let (base, exp) = match term.split_once('^') {
                Some((base, exp)) => (base, Some(exp)),
                None => (term, None),
            };
            if base.is_empty() || !base.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad(&format!("bad prime {base:?}")));
            }
            let p: u64 = base.parse().map_err(|_| bad("prime out of range"))?;
            let e = match exp {
                None => Exponent::Finite(1),
                Some(s) if s.eq_ignore_ascii_case("inf") => Exponent::Infinite,
                Some(s) if !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit()) => {
                    Exponent::Finite(s.parse().map_err(|_| bad("exponent out of range"))?)
                }
                Some(s) => return Err(bad(&format!("bad exponent {s:?}"))),
            };
            factors.push((p, e));
        }
        Supernatural::from_factors(factors)
    }
}

pub fn parse_supernatural(text: &str) -> Result<Supernatural> {
    text.parse()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime factor by trial division. Inputs are desk-scale.
pub fn smallest_prime_factor(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut d = BigUint::from(3u32);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return d;
        }
        d += 2u32;
    }
    n.clone()
}

/// Round-robin enumeration over the primes of `nprime` taken in `order`.
///
/// Each pass emits every prime whose budget is not yet spent; primes with
/// infinite exponent are emitted on every pass.
pub fn round_robin(nprime: &Supernatural, count: usize, order: &[u64]) -> Result<Vec<u64>> {
    if !nprime.is_infinite() {
        return Err(Error::FiniteSupernatural(nprime.to_string()));
    }
    let mut used: BTreeMap<u64, u64> = BTreeMap::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        for &p in order {
            if out.len() == count {
                break;
            }
            let u = used.entry(p).or_insert(0);
            if nprime.exponent(p).covers(*u + 1) {
                *u += 1;
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// `L_2, ..., L_{count+1}`: round-robin over the primes of `nprime` in
/// increasing order.
pub fn enumerate_primes(nprime: &Supernatural, count: usize) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(Error::InvalidParams("count must be positive".into()));
    }
    let order: Vec<u64> = nprime.primes().collect();
    round_robin(nprime, count, &order)
}

/// Numerator and denominator of `k = a/b` as positive integers, after
/// checking `0 < k < 1`.
pub fn proper_fraction_parts(k: &Rational) -> Result<(BigUint, BigUint)> {
    if !k.is_positive() || *k >= Rational::one() {
        return Err(Error::InvalidParams(format!("k = {k} must satisfy 0 < k < 1")));
    }
    Ok((k.numer().magnitude().clone(), k.denom().magnitude().clone()))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidParams(format!("cannot read {text:?} as a rational A/B"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
