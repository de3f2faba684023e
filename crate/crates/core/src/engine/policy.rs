//! Rules for picking `n_j` out of its feasible window.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::window::FeasibleWindow;
use crate::error::{Error, Result};
use crate::registry::Registry;

/// How many window members the random policy draws from.
pub const RANDOM_POOL: usize = 100;

pub trait NPolicy {
    fn name(&self) -> String;

    fn choose(&mut self, window: &FeasibleWindow) -> Result<BigInt>;
}

/// The least feasible `n`.
pub struct Minimal;

impl NPolicy for Minimal {
    fn name(&self) -> String {
        "minimal".into()
    }

    fn choose(&mut self, window: &FeasibleWindow) -> Result<BigInt> {
        window.first()
    }
}

/// Uniform over the first [`RANDOM_POOL`] feasible values, from a seeded stream.
pub struct SeededRandom {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRandom {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl NPolicy for SeededRandom {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn choose(&mut self, window: &FeasibleWindow) -> Result<BigInt> {
        let pool = window.members(RANDOM_POOL)?;
        let i = self.rng.gen_range(0..pool.len());
        Ok(pool[i].clone())
    }
}

pub fn policies() -> Registry<dyn NPolicy> {
    let mut reg: Registry<dyn NPolicy> = Registry::new("policy");
    reg.register("minimal", |arg| match arg {
        None => Ok(Box::new(Minimal)),
        Some(a) => Err(Error::InvalidParams(format!("minimal takes no argument, got {a:?}"))),
    })
    .register("random", |arg| {
        let seed = arg
            .ok_or_else(|| Error::InvalidParams("random needs a seed: random:SEED".into()))?
            .parse::<u64>()
            .map_err(|e| Error::InvalidParams(format!("bad seed: {e}")))?;
        Ok(Box::new(SeededRandom::new(seed)))
    });
    reg
}
