use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("size error: {0}")]
    Size(String),

    /// Evaluation requested too close to a declared pole.
    #[error("evaluation at {at} is within {distance:e} of the pole at {pole}")]
    Pole {
        at: Complex64,
        pole: Complex64,
        distance: f64,
    },

    /// Two rapidities coincide where the algebra needs them distinct.
    #[error("coincident rapidities: {0}")]
    Coincidence(String),

    /// A quadrature, linear solve or iteration failed to reach its tolerance.
    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("ordering violation: {0}")]
    Ordering(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
