use thiserror::Error;

/// Errors raised across the numerical modules.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A zero table does not reach far enough for the requested computation.
    #[error("coverage error: need ordinates up to {needed}, table ends at {available}")]
    Coverage { needed: f64, available: f64 },

    /// A malformed line in an input file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// s = 1, where zeta has its pole.
    #[error("zeta has a pole at s = 1")]
    Pole,

    /// An iterative method did not meet its accuracy target.
    #[error("no convergence after {iterations} iterations (max residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// Some other numerical breakdown (vanishing denominator and the like).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Too few samples to support the requested estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// One member of a random ensemble failed.
    #[error("sample with seed {seed}: {source}")]
    Sample { seed: u64, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
