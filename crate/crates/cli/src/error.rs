use std::fmt;

use valgroups::Error;

/// A failed command: bad input, or an internal assertion of the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub internal: bool,
    pub message: String,
}

impl CliError {
    pub fn user(message: impl Into<String>) -> Self {
        CliError {
            internal: false,
            message: message.into(),
        }
    }

    /// 1 for user errors, 2 for internal ones.
    pub fn exit_code(&self) -> u8 {
        if self.internal {
            2
        } else {
            1
        }
    }

    pub fn at(self, position: &str) -> Self {
        CliError {
            message: format!("{position}: {}", self.message),
            ..self
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            internal: e.is_internal(),
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
