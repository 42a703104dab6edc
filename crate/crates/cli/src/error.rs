//! Exit-code taxonomy: 1 for usage problems, 2 for mathematical
//! preconditions.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed documents, IO problems: exit 1.
    Usage(String),
    /// Domain violations, invariant failures, numerical preconditions:
    /// exit 2.
    Math(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math(m) => write!(f, "precondition failed: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl From<deepzero_core::Error> for CliError {
    fn from(e: deepzero_core::Error) -> CliError {
        CliError::Math(e.to_string())
    }
}
