//! Exact ℤ-gradings, sl₂-triples and Toledo invariants for semisimple Lie algebras.
//!
//! All arithmetic is over ℚ with arbitrary precision; there are no floats.

pub mod error;
pub mod exact_linalg;
pub mod grading;
pub mod matrix_lie;
pub mod orbit_theory;
pub mod report;
pub mod root_system;
pub mod toledo;

pub use error::{Error, Result};
pub use exact_linalg::{RatMatrix, Rational};
