//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("unknown group element '{0}'")]
    UnknownElement(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("certificate check failed: Norm of the witness is {found}, expected {expected}")]
    CertificateFailed { expected: String, found: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("condition violated: {identity}")]
    ConditionViolated { identity: String },
    #[error("cocycle verification failed on relation {0}")]
    CocycleFailure(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("point is not in general position")]
    NotInGeneralPosition,
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("inconsistent action: {0}")]
    InconsistentAction(String),
    #[error("token with unknown orientation: {0}")]
    UnknownOrientation(String),
    #[error("word is not closed: {0}")]
    NotClosed(String),
    #[error("witness required: {0}")]
    WitnessRequired(String),
}

pub type Result<T> = std::result::Result<T, Error>;
