use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the simulator, data pipeline or training driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("register size {0} is outside the supported range 1..=24")]
    Size(usize),

    #[error("qubit index error: {0}")]
    Index(String),

    #[error("gate is not unitary (max deviation {deviation:.3e})")]
    Gate { deviation: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("encoding error: {0}")]
    Encoding(String),

    #[error("parameter shape error: {0}")]
    Parameter(String),

    #[error("probability vector error: {0}")]
    Probability(String),

    #[error("metric error: {0}")]
    Metric(String),

    #[error("IDX format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("split error: {0}")]
    Split(String),

    #[error("training diverged: non-finite loss at epoch {epoch}, batch {batch}")]
    Divergence { epoch: usize, batch: usize },

    #[error("comparison error: {0}")]
    Comparison(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
