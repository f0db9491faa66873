//! Error type shared by the whole pipeline.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A potential or other input fails validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exact computation exceeded its configured budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// An iterative method failed to converge within its precision ladder.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A quantity was requested at a point where it is undefined
    /// (e.g. a Hessian on the divisor V = 0).
    #[error("degenerate evaluation: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI maps this error to (1 validation, 2 resource).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 2,
            _ => 1,
        }
    }
}
