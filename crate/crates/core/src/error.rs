use thiserror::Error;

/// Errors produced by the numeric kernels and model constructors.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Result not representable (overflow / underflow of intermediates).
    #[error("range error: {0}")]
    Range(String),

    /// A requested configuration cannot be realized (grid sizes, cutoffs).
    #[error("configuration error: {0}")]
    Config(String),

    /// A field model violates its structural constraints.
    #[error("model error: {0}")]
    Model(String),

    /// A matrix lies outside the convex body it was to be decomposed in.
    /// Carries the affine coordinates from the solve; at least one is negative.
    #[error("containment error: barycentric coordinates {coords:?} leave the triangle")]
    Containment { coords: [f64; 3] },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn model(msg: impl Into<String>) -> Self {
        Error::Model(msg.into())
    }
}
