//! Brute-force reference for the stage recursion.
//!
//! Written against the raw inequalities only: no closed-form window bounds,
//! no library types. Each transition finds the least admissible `n` by a
//! monotone bisection on the strict cone inequality followed by a direct
//! scan of every remaining condition.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleStage {
    pub l_mult: BigInt,
    pub m_factors: BigInt,
    pub dim_g: BigInt,
    pub dim_p: BigInt,
    pub unit: BigInt,
    pub k: BigInt,
    pub l0: BigInt,
    pub l1: BigInt,
    pub l: BigInt,
    pub q: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleEdge {
    pub n: BigInt,
    pub mult: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn q_of(k: &BigInt, dim_p: &BigInt, m: &BigInt) -> BigInt {
    // real dimension of (S^2)^m is 2m
    int(3) * k * (int(2) * dim_p + int(2) * m)
}

pub fn first_stage(a: u64, b: u64) -> OracleStage {
    let m = int(a + 1);
    let dim_p = int(b);
    let k = BigInt::one();
    OracleStage {
        l_mult: int(b),
        q: q_of(&k, &dim_p, &m),
        m_factors: m,
        dim_g: BigInt::one(),
        dim_p,
        unit: int(b),
        k,
        l0: BigInt::zero(),
        l1: BigInt::one(),
        l: int(a),
    }
}

/// All raw conditions on `n` for the transition `st -> next` with prime `big_l`.
pub fn admissible(st: &OracleStage, big_l: &BigInt, n: &BigInt) -> bool {
    if n <= &BigInt::zero() {
        return false;
    }
    let c = &st.k * &st.q * &st.dim_p;
    let mult = n + &c;
    if !mult.is_multiple_of(big_l) {
        return false;
    }
    let dim_g_next = &mult * &st.dim_g / big_l;
    let m_next = &st.m_factors * n;
    let l_next = big_l * &st.l;
    let k_next = int(3) * &st.k;
    let below = &l_next * &dim_g_next < m_next;
    let floor = (&l_next + 1) * &dim_g_next >= m_next;
    let big_enough = mult > &k_next * &st.k;
    below && floor && big_enough
}

/// Strict cone inequality alone, stated over the rationals as
/// l' (n + c) dim_g / L < m n.
fn strict_cone(st: &OracleStage, big_l: &BigInt, n: &BigInt) -> bool {
    let c = &st.k * &st.q * &st.dim_p;
    let l_next = big_l * &st.l;
    &l_next * (n + &c) * &st.dim_g < big_l * &st.m_factors * n
}

pub fn scan(st: &OracleStage, big_l: &BigInt, lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| admissible(st, big_l, &int(n))).collect()
}

pub fn least_admissible(st: &OracleStage, big_l: &BigInt) -> Option<BigInt> {
    let mut hi = BigInt::one();
    let mut guard = 0;
    while !strict_cone(st, big_l, &hi) {
        hi *= 2;
        guard += 1;
        if guard > 100_000 {
            return None;
        }
    }
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if strict_cone(st, big_l, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut n = hi;
    for _ in 0..10_000 {
        if admissible(st, big_l, &n) {
            return Some(n);
        }
        n += 1;
    }
    None
}

pub fn advance(st: &OracleStage, big_l: &BigInt, n: &BigInt) -> (OracleStage, OracleEdge) {
    let c = &st.k * &st.q * &st.dim_p;
    let mult = n + &c;
    let m_next = &st.m_factors * n;
    let dim_p_next = &mult * &st.dim_p;
    let k_next = int(3) * &st.k;
    let next = OracleStage {
        l_mult: big_l.clone(),
        q: q_of(&k_next, &dim_p_next, &m_next),
        dim_g: &mult * &st.dim_g / big_l,
        m_factors: m_next,
        dim_p: dim_p_next,
        unit: &st.unit * big_l,
        l0: int(2) * &st.l0 + &st.l1,
        l1: int(2) * &st.l1 + &st.l0,
        k: k_next,
        l: big_l * &st.l,
    };
    let edge = OracleEdge {
        n: n.clone(),
        r: int(2) * &mult,
        s: mult.clone(),
        mult,
    };
    (next, edge)
}

/// Stage table under the least-admissible policy for a fixed prime sequence.
pub fn table(a: u64, b: u64, primes: &[u64]) -> (Vec<OracleStage>, Vec<OracleEdge>) {
    let mut stages = vec![first_stage(a, b)];
    let mut edges = Vec::new();
    for &p in primes {
        let st = stages.last().unwrap();
        let big_l = int(p);
        let n = least_admissible(st, &big_l).expect("oracle window empty");
        let (next, edge) = advance(st, &big_l, &n);
        stages.push(next);
        edges.push(edge);
    }
    (stages, edges)
}

/// Least positive multiple of [xi^q] - [theta_m] by counting: the first h
/// with h (q - m) >= q.
pub fn least_positive_multiple(q: &BigInt, m: &BigInt) -> BigInt {
    let d = q - m;
    let mut h = BigInt::one();
    // ceil(q/d) via repeated doubling then bisection, no division
    while &h * &d < *q {
        h *= 2;
    }
    let mut lo = &h / 2;
    while &h - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &h) / 2;
        if &mid * &d >= *q {
            h = mid;
        } else {
            lo = mid;
        }
    }
    h
}
