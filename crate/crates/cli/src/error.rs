use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed algebra file: {0}")]
    Format(String),

    #[error(transparent)]
    Algebra(#[from] dirac_core::Error),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
}
