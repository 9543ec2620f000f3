use thiserror::Error;

/// Errors raised by the modal routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Sizes or grids of the inputs do not match.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// The time grid is too coarse for the fastest oscillation involved.
    #[error(
        "grid under-resolved: {intervals} intervals over T = {horizon} cannot resolve \
         frequency {frequency} (need at least {required})"
    )]
    Resolution {
        intervals: usize,
        required: usize,
        frequency: f64,
        horizon: f64,
    },
    /// The requested case is deliberately not handled.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}
