//! Exact scalars and dense linear algebra over Q and GF(p).

mod matrix;
mod scalar;
mod subspace;
pub mod vector;

pub use matrix::{Matrix, Rref};
pub use scalar::{FieldSpec, Scalar};
pub use subspace::Subspace;
