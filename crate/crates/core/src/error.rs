use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("register of {requested} qubits is outside the supported range 1..={max}")]
    Capacity { requested: usize, max: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("value {value} of key {key} does not fit a {bits}-qubit value register")]
    Overflow { key: usize, value: i64, bits: usize },

    #[error("confidence level {alpha} is unreachable, total mass is {total}")]
    UnreachableAlpha { alpha: f64, total: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Overflow { .. } => 3,
            Error::UnreachableAlpha { .. } => 4,
            Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }

    /// Short machine-readable tag for error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Capacity { .. } => "capacity",
            Error::Validation(_) => "validation",
            Error::Overflow { .. } => "overflow",
            Error::UnreachableAlpha { .. } => "unreachable_alpha",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
