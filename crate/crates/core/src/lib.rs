//! Exact analysis of primitive constant-length substitutions: discrepancy
//! growth, amorphic complexity, structural invariants and empirical
//! separation estimates.

pub mod catalog;
pub mod columns;
pub mod discrepancy;
pub mod empirical;
mod error;
pub mod invariants;
pub mod matrices;
pub mod structure;
pub mod substitution;

pub use error::{Error, Result};
pub use substitution::{Alphabet, Letter, Substitution, Word};
