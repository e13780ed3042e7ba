use crate::exact_arith::ArithError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid Lie type {tag}{rank}")]
    InvalidType { tag: String, rank: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
