use thiserror::Error;

/// Error taxonomy shared by the whole crate.
///
/// `Config` covers inadmissible or unparseable input (bad type string, rank out
/// of range, subset indices out of bounds).  `Domain` covers structurally valid
/// input that a particular operation rejects (non-dominant weight, truncation
/// mismatch).  `Resource` covers configured ceilings being hit (module
/// dimension, degree search ceiling).  `Internal` marks failures of identities
/// that are supposed to hold by construction; any of these is a bug or a
/// corrupted build, never a user error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Domain,
    Resource,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) => ErrorKind::Config,
            Error::Domain(_) => ErrorKind::Domain,
            Error::Resource(_) => ErrorKind::Resource,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

pub(crate) fn domain_err(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn resource_err(msg: impl Into<String>) -> Error {
    Error::Resource(msg.into())
}

pub(crate) fn internal_err(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
