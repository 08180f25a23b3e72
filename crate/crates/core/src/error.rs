use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid input at {location}: {message}")]
    Validation { location: String, message: String },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("not in subgroup: {0}")]
    NotInSubgroup(String),
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Whether the error stems from user input rather than a broken invariant.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Contract(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
