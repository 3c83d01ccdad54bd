use std::fmt;

use mecsr_core::Error;

pub const EXIT_OK: i32 = 0;
/// Infeasible instance, or oracle and solver disagree.
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// An error together with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: format!("parse error: {}", message.into()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Usage(_) | Error::Arithmetic(_) => EXIT_USAGE,
            Error::Refused(_) => EXIT_REFUSED,
            Error::Resource(_) => EXIT_BUDGET,
            Error::Consistency { .. } => EXIT_NO,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}
