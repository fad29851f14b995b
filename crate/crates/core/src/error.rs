use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unsupported field order {0} (supported: 2, 3, 5)")]
    UnsupportedField(u64),

    #[error("enumeration cap exceeded: {what} requires {required} states but the cap is {cap}")]
    CapExceeded {
        what: String,
        required: u128,
        cap: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("window too small: {0}")]
    Window(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
