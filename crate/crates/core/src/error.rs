use thiserror::Error;

/// Errors raised by grid construction, operator assembly and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("chart is not strictly increasing: {0}")]
    Monotonicity(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("iteration left the search basin: {0}")]
    Basin(String),
    #[error("bracket does not enclose a root: {0}")]
    Bracket(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
