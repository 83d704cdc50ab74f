use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the audit library.
#[derive(Debug, Error)]
pub enum AuditError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("manifest is missing required column `{0}`")]
    MissingColumn(String),

    #[error("manifest {0} contains no data rows")]
    EmptyManifest(PathBuf),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("audio too short: {samples} samples, need at least {frame} for one frame")]
    TooShortAudio { samples: usize, frame: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid audio: {0}")]
    InvalidAudio(String),

    #[error("cannot decode {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("malformed csv in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl AuditError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AuditError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        AuditError::Config(msg.into())
    }
}

pub type Result<T, E = AuditError> = std::result::Result<T, E>;
