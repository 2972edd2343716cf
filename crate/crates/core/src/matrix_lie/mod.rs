//! Classical Lie algebras as rational matrices, their gradings and sl₂-triples.

mod classical;
mod graded;
mod triple;

pub use classical::{parse_family_size, ClassicalFamily, MatrixLieAlgebra};
pub use graded::{build_classical, centralizer_in, GenericElement, GradedMatrixAlgebra, ZetaSpec};
pub use triple::{jm_complete, jm_complete_in, Sl2Triple};
