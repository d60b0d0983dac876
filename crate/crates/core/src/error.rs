use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("series error: {0}")]
    Series(String),

    #[error("linear system is rank deficient (rank {rank} of {unknowns} unknowns); more samples needed")]
    RankDeficient { rank: usize, unknowns: usize },

    #[error("linear system is inconsistent at sample {row}")]
    Inconsistent { row: usize },

    #[error("point lies on a wall")]
    OnWall,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
