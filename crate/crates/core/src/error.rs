use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("bilinear form is degenerate or not symmetric: {0}")]
    FormDegenerate(String),

    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),

    /// A named structural condition failed; `witness` identifies where.
    #[error("invalid algebra: {condition} fails at {witness}")]
    InvalidAlgebra { condition: String, witness: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported degree {degree} (maximum {max})")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
