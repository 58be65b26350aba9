use thiserror::Error;

/// Failure modes shared by every analysis routine.
///
/// The variants are coarse on purpose: the command-line front end maps each
/// one onto a single exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: unknown symbols, duplicate letters, bad arguments.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Well-formed input that the requested operation does not accept,
    /// e.g. a non-primitive substitution.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A configured size or work budget would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An iterative numerical routine did not converge.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// An empirical estimate could not be formed from the available data.
    #[error("estimation failed: {0}")]
    Estimation(String),
    /// A cross-check between two independent computations disagreed.
    /// Always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! bail {
    ($variant:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$variant(format!($($arg)*)))
    };
}
pub(crate) use bail;
