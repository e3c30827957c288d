use std::path::PathBuf;

use thiserror::Error;

use crate::tour::TourViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// TSPLIB input that could not be understood. `line` is 1-based; 0 means end of input.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid tour: {0}")]
    InvalidTour(#[from] TourViolation),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("exact search is capped at {cap} cities, instance has {n}")]
    TooLargeForOracle { n: usize, cap: usize },

    #[error("unknown algorithm `{name}` (available: {})", available.join(", "))]
    UnknownAlgorithm {
        name: String,
        available: Vec<String>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed report: {0}")]
    Report(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn config(message: impl Into<String>) -> Self {
        Error::Config(message.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
