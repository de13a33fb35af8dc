use std::fmt;

use brig_core::BrigError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Invariant = 2,
    Violations = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { exit: Exit::Usage, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError { exit: Exit::Invariant, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<BrigError> for CliError {
    fn from(e: BrigError) -> Self {
        match e {
            BrigError::InvariantViolation(_) => CliError::invariant(e.to_string()),
            other => CliError::usage(other.to_string()),
        }
    }
}
