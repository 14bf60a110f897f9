//! Exact construction and analysis of unital twisted partial actions of groups
//! on finite-dimensional algebras, and of their partial crossed products.

pub mod action;
pub mod algebra;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod globalize;
pub mod group;
pub mod instance;
pub mod lab;
pub mod linalg;
pub mod report;
pub mod triangular;

pub use action::{GlobalAction, TwistedPartialAction};
pub use algebra::{Algebra, Element};
pub use crossed::{build_crossed, CrossedElement, CrossedProduct};
pub use error::{Error, Result};
pub use globalize::{globalize, EnvelopingPair};
pub use group::{GroupElement, GroupModel};
pub use linalg::{FieldSpec, Matrix, Scalar, Subspace};
pub use report::Report;
pub use triangular::{assemble_triangular, Bimodule, TriangularAlgebra};
