use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input at {path}: {msg}")]
    Invalid { path: String, msg: String },
}

impl Error {
    pub fn invalid(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Invalid { path: path.into(), msg: msg.into() }
    }

    /// The CLI exit code: 1 property failure, 2 invalid input, 3 capacity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Contract(_) | Error::Singular(_) => 1,
            Error::Argument(_) | Error::Invalid { .. } | Error::Unsupported(_) => 2,
            Error::Capacity(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
