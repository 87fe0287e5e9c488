//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("image error: {0}")]
    Image(#[from] image::ImageError),

    /// Malformed field in an input document.
    #[error("schema violation{}: {message}", fmt_record(.record))]
    Schema {
        record: Option<String>,
        message: String,
    },

    /// A structurally valid document that breaks a domain invariant.
    #[error("invariant violation{}: {message}", fmt_record(.record))]
    Invariant {
        record: Option<String>,
        message: String,
    },

    #[error("empty manifest")]
    EmptyManifest,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("training error: {0}")]
    Train(String),
}

impl Error {
    pub fn schema(record: Option<&str>, message: impl Into<String>) -> Self {
        Error::Schema {
            record: record.map(str::to_owned),
            message: message.into(),
        }
    }

    pub fn invariant(record: Option<&str>, message: impl Into<String>) -> Self {
        Error::Invariant {
            record: record.map(str::to_owned),
            message: message.into(),
        }
    }
}

fn fmt_record(record: &Option<String>) -> String {
    match record {
        Some(id) => format!(" in record '{id}'"),
        None => String::new(),
    }
}
