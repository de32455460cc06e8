use thiserror::Error;

/// Failure classes shared by every engine.
///
/// Mathematical check failures are not errors: they are returned as data in a
/// [`crate::report::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or dimensionally inconsistent input.
    #[error("input error: {0}")]
    Input(String),
    /// A construction was asked to run on data violating its precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal consistency check failed (for example a nonzero `d∘d`).
    #[error("logic error: {0}")]
    Logic(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_dims(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Input(format!("{what}: expected {want}, got {got}")));
    }
    Ok(())
}
