use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("pole obstruction: denominator vanishes on `{word}` at weight {weight:?}")]
    PoleObstruction { word: String, weight: Vec<i64> },

    #[error("cannot mix left and right zero modes in one element")]
    ChiralityMix,

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
