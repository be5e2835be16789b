use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("singular matrix")]
    Singular,

    /// A bilinear form that had to be nondegenerate is not; carries a radical basis.
    #[error("degenerate form, radical spanned by {radical:?}")]
    Degenerate { radical: Vec<Vec<String>> },

    #[error("Jacobi identity fails on (e{}, e{}, e{})", .0.0, .0.1, .0.2)]
    Jacobi((usize, usize, usize)),

    #[error("unknown name {name:?}; valid names: {valid}")]
    Lookup { name: String, valid: String },

    #[error("numerical failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn dim(expected: usize, got: usize) -> Self {
        Error::DimensionMismatch { expected, got }
    }
}
