//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the library. The CLI maps input errors to exit code 2
/// and [`Error::CapExceeded`] / [`Error::Refused`] to exit code 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// Malformed text or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally invalid input (bad tree shape, empty group, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An enumeration would exceed its configured cap.
    #[error("cap exceeded for {what}: required {required}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        required: String,
        cap: usize,
    },
    /// A decision procedure declined to answer.
    #[error("refused: {0}")]
    Refused(String),
    /// A polyhedron that must be non-empty is empty.
    #[error("empty polyhedron")]
    Empty,
    /// An optimization problem has no finite optimum.
    #[error("unbounded")]
    Unbounded,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Returns an error unless `got == expected`.
pub fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
