use std::fmt;

use symblob_core::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    /// Unreadable file, malformed JSON or a bad argument value.
    Parse = 2,
    /// The input parsed but violates a structural invariant.
    Invariant = 3,
    /// The input is valid but the requested operation does not apply to it.
    Domain = 4,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Parse,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Domain,
            message: message.into(),
        }
    }

    pub fn code(&self) -> u8 {
        self.kind as u8
    }

    /// Prefixes the message with where the failure happened.
    pub fn context(mut self, what: &str) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Shape { .. } | Error::NonFinite => ExitKind::Parse,
            Error::NotSquare { .. }
            | Error::DimensionMismatch { .. }
            | Error::OddDimension(_)
            | Error::NonSymmetric { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::NotSymplectic { .. }
            | Error::NotUnitary { .. } => ExitKind::Invariant,
            _ => ExitKind::Domain,
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
