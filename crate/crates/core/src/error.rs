use thiserror::Error;

/// Errors returned by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ring of size {ring} is too small, at least {required} is needed")]
    RingTooSmall { ring: usize, required: usize },

    #[error("quadrature exhausted its budget of {panels} panels (error estimate {estimate:e})")]
    QuadratureBudget { panels: usize, estimate: f64 },

    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
