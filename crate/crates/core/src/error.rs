use thiserror::Error;

/// Errors raised by the numerical routines and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not settle within its term budget.
    #[error("series did not converge after {terms} terms")]
    NonConvergence { terms: usize },

    /// Too few boundary samples for the requested truncation order.
    #[error("aliasing: {samples} samples cannot resolve order {order} (need at least {needed})")]
    Aliasing {
        samples: usize,
        order: usize,
        needed: usize,
    },

    /// Pre-scan found more than one local minimum.
    #[error("objective is not unimodal: {minima} local minima detected")]
    NotUnimodal { minima: usize },

    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
