use thiserror::Error;

/// Crate-wide error type. `VerificationFailed` maps to CLI exit code 1,
/// everything else to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {order} exceeds bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a good partition: {0}")]
    NotGoodPartition(String),
    #[error("subset is not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("bad partition spec: {0}")]
    BadPartitionSpec(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("modular solver: {0}")]
    Modular(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
