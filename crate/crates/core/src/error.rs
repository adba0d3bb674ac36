use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix has rank {rank} but {rows} rows")]
    Rank { rows: usize, rank: usize },
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("code construction: {0}")]
    Construction(String),
    #[error("unknown catalog entry: {0}")]
    Catalog(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    Size { expected: usize, got: usize },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("synthesis: {0}")]
    Synthesis(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unstable fit: {0}")]
    UnstableFit(String),
    #[error("resource: {0}")]
    Resource(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
