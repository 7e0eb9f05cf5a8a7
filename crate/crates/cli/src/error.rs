use std::fmt;

/// A failure with its process exit code: 1 for domain or numeric failures,
/// 2 for usage errors.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ncomplex::Error> for CliError {
    fn from(e: ncomplex::Error) -> Self {
        match e {
            ncomplex::Error::Argument(_) | ncomplex::Error::Mismatch(..) => Self::usage(e.to_string()),
            _ => Self::failure(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::usage(format!("bad JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
