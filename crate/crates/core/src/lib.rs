//! Finite commutative rings, their ideal lattices and spectra, and a
//! rule-based decision procedure for soberness of symbolic rings.
//!
//! A ring is *sober* when no prime non-maximal ideal equals the intersection
//! of the primes strictly containing it.

pub mod bitset;
pub mod error;
pub mod ideal;
pub mod ring;
pub mod spectrum;
pub mod symbolic;
pub mod verdict;
pub mod verifier;

pub use error::{Error, Result};
