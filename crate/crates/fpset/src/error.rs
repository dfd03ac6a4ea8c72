use thiserror::Error;

/// Every failure the library can report.
///
/// `CapExceeded` and `DecompositionInconclusive` are not bugs: they mean the
/// instance is outside the configured desk-scale limits or that the
/// decomposition could not be certified. `TheoremViolation` is a bug.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cap exceeded: {what} exceeds {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("action not closed: {0}")]
    ActionNotClosed(String),
    #[error("not a p-group: order {order} is not a power of {p}")]
    NotPGroup { order: u64, p: u32 },
    #[error("decomposition inconclusive: {0}")]
    DecompositionInconclusive(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, cap: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
        }
    }
}
