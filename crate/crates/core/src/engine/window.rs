//! The set of admissible `n_j` for one stage.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::blocks::Stage;
use crate::error::{Error, Result};

/// `{n : lower <= n <= upper, n ≡ residue (mod modulus)}`, with the
/// instantiated constraints it was derived from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibleWindow {
    pub stage: usize,
    /// `c = k_j q_j dim p_j`, so that `mult = n + c`.
    pub offset: BigInt,
    pub lower: BigInt,
    pub upper: Option<BigInt>,
    pub modulus: BigInt,
    pub residue: BigInt,
    pub constraints: Vec<String>,
}

impl FeasibleWindow {
    pub fn contains(&self, n: &BigInt) -> bool {
        *n >= self.lower
            && self.upper.as_ref().is_none_or(|u| n <= u)
            && n.mod_floor(&self.modulus) == self.residue
    }

    /// Least member.
    pub fn first(&self) -> Result<BigInt> {
        let n = &self.lower + (&self.residue - &self.lower).mod_floor(&self.modulus);
        match &self.upper {
            Some(u) if n > *u => Err(Error::EmptyWindow {
                stage: self.stage,
                detail: format!("no n in [{}, {u}] with {self}", self.lower),
            }),
            _ => Ok(n),
        }
    }

    /// Up to `limit` least members, in increasing order.
    pub fn members(&self, limit: usize) -> Result<Vec<BigInt>> {
        let mut n = self.first()?;
        let mut out = Vec::new();
        while out.len() < limit && self.upper.as_ref().is_none_or(|u| n <= *u) {
            out.push(n.clone());
            n += &self.modulus;
        }
        Ok(out)
    }
}

impl fmt::Display for FeasibleWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.constraints.join("; "))
    }
}

/// Constraints on `n_j` for the step to a stage with multiplier `big_l`:
///
/// 1. `l'(n + c) dim g < L P n` so that `l' dim g' < m'`,
/// 2. `(l' + 1)(n + c) dim g >= L P n` so that `l' + 1` is positive,
/// 3. `L | n + c`,
/// 4. `n + c > 3 k²`,
///
/// where `c = k q dim p`, `P = m_factors` and `l' = L l`.
pub fn feasible_window(stage: &Stage, big_l: &BigInt) -> Result<FeasibleWindow> {
    let c = stage.mult_offset();
    let p = &stage.m_factors;
    let l_next = big_l * &stage.l;
    let lp = big_l * p;
    let mut constraints = vec![
        format!("{l_next} * (n + {c}) * {} < {big_l} * {p} * n", stage.dim_g),
        format!("({l_next} + 1) * (n + {c}) * {} >= {big_l} * {p} * n", stage.dim_g),
        format!("{big_l} | n + {c}"),
        format!("n + {c} > 3 * {}^2", stage.k),
    ];

    let d1 = &lp - &l_next * &stage.dim_g;
    if !d1.is_positive() {
        constraints.push(format!("{big_l} * {p} - {l_next} * {} = {d1} <= 0", stage.dim_g));
        return Err(Error::EmptyWindow {
            stage: stage.j,
            detail: constraints.join("; "),
        });
    }
    let strict: BigInt = (&l_next * &c * &stage.dim_g).div_floor(&d1) + 1;
    let kk: BigInt = BigInt::from(3) * &stage.k * &stage.k - &c + 1;
    let lower = strict.max(kk).max(BigInt::one());

    let l_above: BigInt = &l_next + 1;
    let d2 = &lp - &l_above * &stage.dim_g;
    let upper = d2
        .is_positive()
        .then(|| (&l_above * &c * &stage.dim_g).div_floor(&d2));

    let window = FeasibleWindow {
        stage: stage.j,
        residue: (-&c).mod_floor(big_l),
        offset: c,
        lower,
        upper,
        modulus: big_l.clone(),
        constraints,
    };
    window.first()?;
    Ok(window)
}
