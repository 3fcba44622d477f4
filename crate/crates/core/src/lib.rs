//! Online pen testing.
//!
//! A player faces nonnegative values one at a time. Instead of seeing a value, the
//! player tests it against a threshold and learns only whether it passed; a failed
//! test reveals the value but makes it worthless, and every test reduces what is left.
//!
//! The crate contains the game engine, a catalog of distributions, instance
//! generators (including the hard instances behind the lower bounds), the prophet and
//! secretary strategies, a bit sampling subgame, exact oracles, and a seeded Monte
//! Carlo harness that checks measured competitive ratios.

pub mod bit_sampling;
pub mod distributions;
pub mod engine;
pub mod error;
pub mod harness;
pub mod instances;
pub mod oracle;
pub mod prophet;
pub mod rng;
pub mod secretary;
pub mod stats;

pub use error::{Error, Result};
