use thiserror::Error;

/// Failures, each tied to one process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Io(String),

    #[error("line {line}: {message}")]
    Input { line: usize, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Io(_) | Self::Input { .. } => 3,
        }
    }

    pub fn io(context: impl std::fmt::Display, e: impl std::fmt::Display) -> Self {
        Self::Io(format!("{context}: {e}"))
    }
}

/// Core errors raised by bad flags (bounds, claims, primes) are usage
/// errors; anything else means the computation itself went wrong.
impl From<heron_core::Error> for CliError {
    fn from(e: heron_core::Error) -> Self {
        use heron_core::Error::*;
        match e {
            BoundOutOfRange(_) | EdgeOutOfRange(_) | MalformedClaim(_) | UnsupportedPrime(_) | Precondition(_)
            | UnsupportedDimension(_) => Self::Usage(e.to_string()),
            other => Self::Io(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// How a command finished when it did not fail outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A mismatch, witness or recheck discrepancy was found.
    Mismatch,
    /// Stopped early on request; the checkpoint holds the progress.
    Interrupted,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Success | Self::Interrupted => 0,
            Self::Mismatch => 1,
        }
    }
}
