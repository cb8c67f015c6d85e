use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A path, arrow, or map does not fit the quiver it is used with.
    #[error("structural error: {0}")]
    Structural(String),
    /// Division by zero or a similar field-level failure.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A query asked for a degree beyond what a rewriting system guarantees.
    #[error("degree {requested} exceeds confluent degree {available}")]
    Truncation { requested: usize, available: usize },
    /// Degenerate input, e.g. a zero polynomial or a vanishing relation.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Input outside the cases this crate decides.
    #[error("out of scope: {0}")]
    OutOfScope(String),
    /// Invalid family parameters.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A result failed its own verification; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
