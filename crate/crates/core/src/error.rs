use thiserror::Error;

use crate::algebra::AlgebraDescriptor;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right}")]
    DescriptorMismatch {
        left: AlgebraDescriptor,
        right: AlgebraDescriptor,
    },

    #[error("invalid algebra descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("unsupported: {0}")]
    Capability(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("function undefined at eigenvalue {eigenvalue}")]
    Domain { eigenvalue: f64 },

    #[error("numerical failure: {message} (residual {residual:e})")]
    NumericalFailure { message: String, residual: f64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn mismatch(left: &AlgebraDescriptor, right: &AlgebraDescriptor) -> Self {
        Error::DescriptorMismatch {
            left: left.clone(),
            right: right.clone(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
