use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (non-finite
    /// values, non-positive mass or width, off-shell momenta).
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical precondition failed, e.g. a packet whose quadrature norm
    /// drifted or a detector basis that is not orthonormal.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Inputs are individually valid but cannot be combined (grid mismatch,
    /// missing analytic profile).
    #[error("structural error: {0}")]
    Structural(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
