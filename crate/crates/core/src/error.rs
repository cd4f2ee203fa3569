use std::path::PathBuf;

use crate::readability::Scheme;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("readability is undefined for input with {words} words and {sentences} sentences")]
    UndefinedReadability { words: usize, sentences: usize },

    #[error("levels of scheme {left} and {right} cannot be compared")]
    SchemeMismatch { left: Scheme, right: Scheme },

    #[error("scheme {0} is not computable from text; ingest classifier predictions instead")]
    UnsupportedScheme(Scheme),

    #[error("invalid level {value:?} for scheme {scheme}")]
    InvalidLevel { scheme: Scheme, value: String },

    #[error("{0} requires a non-empty input")]
    EmptyInput(&'static str),

    #[error("task bucket {0} is empty")]
    EmptyBucket(&'static str),

    #[error("task bucket {bucket} holds {available} pairs, {requested} requested")]
    BucketTooSmall { bucket: &'static str, requested: usize, available: usize },

    #[error("invalid split ratios {0:?}: each must be non-negative and they must sum to 1")]
    InvalidRatios([f64; 3]),

    #[error("invalid prompt: {0}")]
    InvalidPrompt(String),

    #[error("krippendorff's alpha is undefined: {0}")]
    UndefinedAlpha(&'static str),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("{0}")]
    Data(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), line, message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Whether the failure stems from invocation or configuration rather than data.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::InvalidRatios(_) | Error::UnsupportedScheme(_) | Error::InvalidPrompt(_)
        )
    }
}
