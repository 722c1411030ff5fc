use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("infeasible constraints: {0}")]
    InfeasibleConstraints(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("template {template} not applicable: {reason}")]
    TemplateInapplicable { template: String, reason: String },

    #[error("composite filter selected zero elements for template {0}")]
    UnansweredComposite(String),

    #[error("shape mismatch in {context}: expected {expected}, got {got}")]
    ShapeMismatch {
        context: String,
        expected: String,
        got: String,
    },

    #[error("question contains no non-pad tokens")]
    EmptyQuestion,

    #[error("missing image: {0}")]
    MissingImage(PathBuf),

    #[error("corrupt manifest: {0}")]
    CorruptManifest(String),

    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),

    #[error("kind mismatch: prediction is {prediction}, target is {target}")]
    KindMismatch { prediction: String, target: String },

    #[error("degenerate box with zero area")]
    DegenerateBox,

    #[error("vocab hash mismatch: checkpoint {checkpoint:016x}, dataset {dataset:016x}")]
    VocabMismatch { checkpoint: u64, dataset: u64 },

    #[error("non-finite loss in batch {batch_id} (epoch {epoch})")]
    NonFiniteLoss { epoch: usize, batch_id: usize },

    #[error("non-finite gradient for parameter {0}")]
    NonFiniteGradient(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("png error: {0}")]
    Png(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<png::DecodingError> for Error {
    fn from(e: png::DecodingError) -> Self {
        Error::Png(e.to_string())
    }
}

impl From<png::EncodingError> for Error {
    fn from(e: png::EncodingError) -> Self {
        Error::Png(e.to_string())
    }
}
