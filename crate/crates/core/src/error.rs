use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is well-formed but outside what the implementation covers.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A numerical procedure exhausted its budget before meeting tolerance.
    #[error("no convergence: {message} (best estimate {estimate:e}, error estimate {abs_error:e})")]
    Convergence {
        message: String,
        estimate: f64,
        abs_error: f64,
    },

    /// Two algebraically equivalent routes disagreed beyond tolerance.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
