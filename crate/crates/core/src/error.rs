use thiserror::Error;

/// Failure to read a word from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("operation needs class number at least {required}, word has class {found}")]
    ClassTooSmall { required: usize, found: usize },
    #[error("operation supports class number at most {max}, word has class {found}")]
    ClassTooLarge { max: usize, found: usize },
    #[error("positive mode needs a word with positive exponents")]
    NonPositiveWord,
    #[error("exponent vector of length {found} does not match {expected} variables")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("evaluation point must be positive in every coordinate")]
    NonPositivePoint,
    #[error("invalid term subsets: {0}")]
    InvalidSubsets(String),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive definite (smallest eigenvalue {0:e})")]
    NotPositiveDefinite(f64),
    #[error("matrix is not symmetric unitary (deviation {0:e})")]
    NotSymmetricUnitary(f64),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("enumeration of {count} words exceeds the cap of {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the failure came from user input rather than numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::ZeroScale
                | Error::ClassTooSmall { .. }
                | Error::ClassTooLarge { .. }
                | Error::NonPositiveWord
                | Error::InvalidSubsets(_)
                | Error::InvalidConfig(_)
                | Error::EnumerationTooLarge { .. }
                | Error::VariableMismatch { .. }
                | Error::ArityMismatch { .. }
                | Error::NonPositivePoint
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
