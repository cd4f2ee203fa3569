use std::fmt::Display;

/// Exit status 1 for bad data, 2 for bad invocation or configuration.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn data(message: impl Display) -> Self {
        CliError { code: 1, message: message.to_string() }
    }

    pub fn usage(message: impl Display) -> Self {
        CliError { code: 2, message: message.to_string() }
    }

    /// Prefixes the message with the stage that failed.
    pub fn context(mut self, stage: &str) -> Self {
        self.message = format!("{stage}: {}", self.message);
        self
    }
}

impl From<levelforge::Error> for CliError {
    fn from(e: levelforge::Error) -> Self {
        // unreadable inputs are an invocation problem
        if e.is_usage() || matches!(e, levelforge::Error::Io { .. }) {
            CliError::usage(e)
        } else {
            CliError::data(e)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e)
    }
}
