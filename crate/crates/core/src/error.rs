use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The input points span an affine subspace of lower dimension than the
    /// ambient lattice.
    #[error("points span an affine subspace of dimension {actual}, expected {expected}")]
    Dimension { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
