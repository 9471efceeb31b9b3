use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter or evaluation point lies outside the admissible range.
    #[error("domain error: {0}")]
    Domain(String),
    /// An intermediate quantity left the representable range.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// A quadrature or series failed to reach the requested accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// The dictionary tail over the window exceeds the admissible level.
    #[error("tail condition fails at truncation {n}; minimal adequate truncation is {required}")]
    TailCondition { n: usize, required: usize },
    /// The analytic function appears to vanish on a contour.
    #[error("zero on or near the boundary: {0}")]
    BoundaryZero(String),
    /// Too few angles for an FFT evaluation of the series.
    #[error("aliasing: {ntheta} angles cannot resolve a series of length {len}")]
    Aliasing { ntheta: usize, len: usize },
    /// The request is well-formed but cannot be honoured (e.g. a vacuous certificate).
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
