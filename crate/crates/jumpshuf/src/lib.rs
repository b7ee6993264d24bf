//! Jumping finite automata, shuffle expressions, and semilinear sets.

pub mod alphabet;
pub mod deciders;
pub mod error;
pub mod exec;
pub mod expr;
pub mod gen;
pub mod machine;
pub mod reductions;
pub mod selftest;
pub mod semilinear;
pub mod shuffle;

pub use alphabet::{Alphabet, FiniteLanguage, ParikhVector, Word};
pub use error::{Error, Result};
