use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid UTF-8 at byte offset {offset}")]
    Decode { offset: usize },

    #[error("{what}, line {line}: {msg}")]
    Parse {
        what: &'static str,
        line: usize,
        msg: String,
    },

    #[error("truncated binary embedding record at word index {index}")]
    Truncated { index: usize },

    #[error("vocabulary is empty with min_count={min_count}; threshold too high")]
    EmptyVocabulary { min_count: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "not enough augmented pairs: need {needed}, have {available}; \
         maximum achievable ratio is {max_ratio:.4}"
    )]
    InsufficientAugmentation {
        needed: usize,
        available: usize,
        max_ratio: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite loss at epoch {epoch}, batch {batch}")]
    NonFiniteLoss { epoch: usize, batch: usize },

    #[error("transport solver did not converge after {iterations} pivots")]
    SolverNonConvergence { iterations: usize },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(what: &'static str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            what,
            line,
            msg: msg.into(),
        }
    }
}
