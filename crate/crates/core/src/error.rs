use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot allocate table for limit {limit}: {reason}")]
    Resource { limit: u64, reason: String },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument {value} exceeds table limit {limit}")]
    Range { value: u64, limit: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("theorem hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("malformed table file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Fails with [`Error::Range`] when `value > limit`.
    pub fn check_range(value: u64, limit: u64) -> Result<()> {
        if value > limit {
            Err(Error::Range { value, limit })
        } else {
            Ok(())
        }
    }
}
