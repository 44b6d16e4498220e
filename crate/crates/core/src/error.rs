use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported type {name} with rank {rank}: {reason}")]
    UnsupportedType {
        name: String,
        rank: usize,
        reason: &'static str,
    },
    #[error("unknown affine type name `{0}`")]
    UnknownType(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}
