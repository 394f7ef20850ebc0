//! File formats and subcommand bodies of the `frontkit` binary.

pub mod commands;
pub mod io;
pub mod report;

use frontkit_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(format!("invalid JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Parse(format!("csv: {e}"))
    }
}

impl CliError {
    /// 2 for unreadable input, 3 for violated preconditions, 4 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Core(e) if e.is_numerical() => 4,
            CliError::Core(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        let io = std::io::Error::new(std::io::ErrorKind::NotFound, "gone");
        assert_eq!(CliError::Io { path: "p".into(), source: io }.exit_code(), 2);
        assert_eq!(CliError::from(Error::ZeroConstant).exit_code(), 3);
        let failed = Error::ReductionFailed { passes: 3, residual: 1.0 };
        assert_eq!(CliError::from(failed).exit_code(), 4);
        let disagree = Error::ClassifierDisagreement {
            closed_form: "A2",
            recognizer: "A3",
        };
        assert_eq!(CliError::from(disagree).exit_code(), 4);
    }
}
