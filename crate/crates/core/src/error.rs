use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SclaError {
    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid probability vector {0:?}")]
    InvalidDistribution([f64; 4]),

    #[error("position ({x}, {y}) is outside the grid")]
    OffGrid { x: i32, y: i32 },

    #[error("synapse {pre}->{post} is not plastic")]
    NotPlastic { pre: usize, post: usize },

    #[error("{0}")]
    Parse(String),

    #[error("config {path}: line {line}: {msg}")]
    Config { path: PathBuf, line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, SclaError>;
