use thiserror::Error;

/// Errors raised by every operation in this crate.
///
/// Variants group failures by kind so that callers (and the CLI) can map
/// them to exit statuses without string matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("out of range: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid seed: {0}")]
    Seed(String),
    #[error("substitution is not primitive: {0}")]
    NotPrimitive(String),
    #[error("degenerate result: {0}")]
    Degenerate(String),
    #[error("window too short: {0}")]
    InsufficientWindow(String),
    #[error("unverified input: {0}")]
    State(String),
    #[error("inconsistent rule: {0}")]
    Consistency(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
