use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("vertex {vertex} has degree {degree}, exceeding the declared bound {bound}")]
    DegreeViolation {
        vertex: String,
        degree: usize,
        bound: usize,
    },

    #[error("numerical failure in {what}: residual {residual:e}")]
    NumericalFailure { what: String, residual: f64 },

    #[error("contradiction: {0}")]
    Contradiction(String),

    #[error("insufficient resolution: {0}")]
    Resolution(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn numerical(what: impl Into<String>, residual: f64) -> Self {
        Error::NumericalFailure {
            what: what.into(),
            residual,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
