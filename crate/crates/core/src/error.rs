use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: bad ids, invalid decompositions, parse failures.
    #[error("input error: {0}")]
    Input(String),
    /// The instance is outside what this build is willing to attempt.
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Capability(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn capability<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capability(msg.into()))
}

/// Width cap for a solver, overridable through `FDELETE_MAX_WIDTH`.
pub fn width_cap(default: usize) -> usize {
    std::env::var("FDELETE_MAX_WIDTH")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}
