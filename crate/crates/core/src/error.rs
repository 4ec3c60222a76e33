use thiserror::Error;

/// Errors raised by the engine. Every fallible constructor and operation in
/// the crate reports through this type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("support touches the grid border: cell ({col}, {row}) in the outer ring is nonzero")]
    SupportOnBorder { col: usize, row: usize },

    #[error("grid too small: scene support {support} does not fit inside {grid} with a one-cell zero margin")]
    GridTooSmall { support: String, grid: String },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
