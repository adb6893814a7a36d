use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request is valid but cannot be satisfied (e.g. a tail bound that
    /// no finite truncation reaches).
    #[error("capability error: {0}")]
    Capability(String),
    /// `log|F|` was requested at a zero of `F` (or at the origin with m >= 1).
    #[error("log|F| pole: {0}")]
    PoleOfLog(String),
    /// A quantity the construction guarantees failed to hold; this signals a
    /// parameter bug, not a user error.
    #[error("construction violation: {0}")]
    ConstructionViolation(String),
    /// Malformed textual input (CSV, key-value specs).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
