//! Orders in which the primes `L_2, L_3, ...` of `n' = n / b` are consumed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Result;
use crate::numbers::{round_robin, Supernatural};
use crate::registry::Registry;

pub trait PrimeEnumeration {
    fn name(&self) -> &'static str;

    /// The next `count` primes after `L_1 = b`.
    fn primes(&self, nprime: &Supernatural, b: &BigInt, count: usize) -> Result<Vec<u64>>;
}

/// Round-robin over the primes of `n'` in increasing order, continuing the
/// cycle after the largest prime of `L_1 = b`.
pub struct RoundRobin;

impl PrimeEnumeration for RoundRobin {
    fn name(&self) -> &'static str {
        "round-robin"
    }

    fn primes(&self, nprime: &Supernatural, b: &BigInt, count: usize) -> Result<Vec<u64>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let mut order: Vec<u64> = nprime.primes().collect();
        if let Some(top) = nprime
            .primes()
            .filter(|&p| b.is_multiple_of(&BigInt::from(p)) && !b.is_zero())
            .max()
        {
            let start = order.iter().position(|&p| p > top).unwrap_or(0);
            order.rotate_left(start);
        }
        round_robin(nprime, count, &order)
    }
}

/// Round-robin over the primes of `n'` in increasing order, starting from
/// the smallest regardless of `b`.
pub struct Increasing;

impl PrimeEnumeration for Increasing {
    fn name(&self) -> &'static str {
        "increasing"
    }

    fn primes(&self, nprime: &Supernatural, _b: &BigInt, count: usize) -> Result<Vec<u64>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        crate::numbers::enumerate_primes(nprime, count)
    }
}

pub fn enumerations() -> Registry<dyn PrimeEnumeration> {
    let mut reg: Registry<dyn PrimeEnumeration> = Registry::new("enumeration");
    reg.register("round-robin", |_| Ok(Box::new(RoundRobin)))
        .register("increasing", |_| Ok(Box::new(Increasing)));
    reg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sn(s: &str) -> Supernatural {
        s.parse().unwrap()
    }

    #[test]
    fn continues_after_b() {
        let e = enumerations().resolve("round-robin").unwrap();
        assert_eq!(e.primes(&sn("2^inf*3^inf"), &BigInt::from(2), 4).unwrap(), [3, 2, 3, 2]);
        assert_eq!(e.primes(&sn("2^inf*3^inf"), &BigInt::from(3), 4).unwrap(), [2, 3, 2, 3]);
        assert_eq!(
            e.primes(&sn("2^inf*3*5^inf"), &BigInt::from(6), 5).unwrap(),
            [5, 2, 3, 5, 2]
        );
        assert!(e.primes(&sn("2^inf"), &BigInt::from(2), 0).unwrap().is_empty());
    }

    #[test]
    fn increasing_matches_plain_enumeration() {
        let e = enumerations().resolve("increasing").unwrap();
        assert_eq!(e.name(), "increasing");
        assert_eq!(e.primes(&sn("2^inf*3^inf"), &BigInt::from(2), 4).unwrap(), [2, 3, 2, 3]);
    }

    #[test]
    fn unknown_name() {
        let err = enumerations().resolve("spiral").err().unwrap();
        assert!(err.to_string().contains("increasing, round-robin"));
    }
}
