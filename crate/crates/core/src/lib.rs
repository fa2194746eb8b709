//! Exact-arithmetic invariants of two-bridge knots and the obstruction
//! pipeline ruling out purely cosmetic surgeries on them.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere in this crate.

pub mod catalog;
pub mod cases;
pub mod error;
pub mod jones;
pub mod laurent;
pub mod obstruct;
pub mod plat;
pub mod rational;
pub mod seifert;
pub mod slopes;

pub use error::Error;
pub use rational::{Cf, Convention, Fraction, TwoBridgeKnot};

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
