//! Exact verification of binomial-sum identities and supercongruences.
//!
//! Identities are checked over the rationals; congruences are checked in
//! `Z / p^e Z` for every prime in a range. See [`cli`] for the `verify`
//! command built on top.

pub mod arith;
pub mod cli;
pub mod error;
pub mod hypergeo;
pub mod outcome;
mod parallel;
pub mod report;
pub mod sequences;
pub mod suite;

pub use arith::{Integer, PrimePower, Rational, Residue};
pub use error::{Error, Result};
pub use outcome::{CheckOutcome, Instance, Value};
