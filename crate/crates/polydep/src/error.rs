use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The zero polynomial was passed where a non-zero one is required.
    #[error("zero polynomial")]
    ZeroPolynomial,

    /// Failed to parse a polynomial or other textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// An operation that requires a non-zero constant coefficient was given a
    /// polynomial divisible by X.
    #[error("polynomial has a zero root where none is allowed")]
    ZeroRoot,

    /// A precondition documented on the operation was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The working precision cap was reached before the requested accuracy.
    #[error("precision exceeded: requested {requested} bits, achieved {achieved}")]
    PrecisionExceeded { requested: u32, achieved: u32 },

    /// A checkpoint file does not belong to the census being resumed.
    #[error("checkpoint mismatch: expected spec hash {expected}, found {found}")]
    CheckpointMismatch { expected: String, found: String },

    /// An enumeration box exceeds the hard refusal limit.
    #[error("enumeration box of size {size} exceeds limit {limit}")]
    BoxTooLarge { size: u128, limit: u128 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
