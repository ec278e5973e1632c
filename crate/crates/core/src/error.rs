use thiserror::Error;

/// Errors raised by the evaluation, series and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index or order exceeds the supported table size.
    #[error("range error: {0}")]
    Range(String),

    /// A root could not be bracketed by a sign change.
    #[error("no sign change found: {0}")]
    Bracket(String),

    /// A scan for a sharpness counterexample found nothing.
    #[error("no witness found: {0}")]
    NoWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
