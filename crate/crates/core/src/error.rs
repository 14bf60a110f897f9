use thiserror::Error;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Validators never return these; they produce a [`crate::report::Report`]
/// listing violations instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("span is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal is not invariant under the action: {0}")]
    NotInvariant(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("not a central idempotent: {0}")]
    NotCentralIdempotent(String),
    #[error("action has unbounded support")]
    InfiniteSupport,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unknown suite '{name}' (available: {available})")]
    UnknownSuite { name: String, available: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
