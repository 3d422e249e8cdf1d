use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("threshold {0} is not a rational in [0, 1]")]
    InvalidThreshold(String),

    #[error("item universe has {items} distinct items, brute-force limit is {limit}")]
    UniverseTooLarge { items: usize, limit: usize },

    #[error("frequent-set store is inconsistent with the database: {0}")]
    InconsistentStore(String),

    #[error("rule generation needs the count of {0}, which the store does not hold")]
    MissingSubsetCount(String),

    #[error("store invariant violated at {itemset}: {reason}")]
    InvariantViolation { itemset: String, reason: String },

    #[error("{path}:{line}: {reason}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("maintained result differs from the Apriori baseline at s' = {0}")]
    BaselineMismatch(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
