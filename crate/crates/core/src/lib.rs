//! Arithmetic core for building unital inductive limits with a prescribed
//! perforated `K₀`-group: supernatural numbers, the `K⁰` ring of products
//! of two-spheres, cyclic ordered groups and the stage-by-stage engine.

pub mod blocks;
pub mod engine;
pub mod error;
pub mod kring;
pub mod numbers;
pub mod ordgroup;
pub mod registry;

pub use error::{Error, Result};
pub use numbers::{Exponent, Rational, Supernatural};
