use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("matrix is not idempotent{0}")]
    NotIdempotent(String),
    #[error("degree {degree} is not allowed: {reason}")]
    Degree { degree: i64, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("complex is not silent in degree {}", .0.degree)]
    NotSilent(Box<crate::silence::SilenceCertificate>),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}
