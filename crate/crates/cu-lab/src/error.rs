use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("value outside the carrier: {0}")]
    OutOfCarrier(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("capability not supported by {entry}: {what}")]
pub struct CapabilityError {
    pub entry: String,
    pub what: String,
}

impl CapabilityError {
    pub fn new(entry: &str, what: impl Into<String>) -> Self {
        CapabilityError {
            entry: entry.to_string(),
            what: what.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Capability(#[from] CapabilityError),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
