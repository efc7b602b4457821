//! CLI error type with one stable exit code per failure class.

use std::path::PathBuf;

use topowalk_core::Error as CoreError;

/// Exit codes: 2 for configuration problems, 3 for failed numerical checks,
/// 4 for I/O failures. Success is 0.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::AngleOutOfRange { .. }
            | CoreError::InvalidStepCount
            | CoreError::NonFinite { .. }
            | CoreError::Normalization { .. }
            | CoreError::NearGapless { .. }
            | CoreError::Resolution { .. } => CliError::Config(err.to_string()),
            CoreError::DegeneratePoint { .. }
            | CoreError::GaplessAngle { .. }
            | CoreError::NonIntegerWinding { .. }
            | CoreError::StepOrder { .. } => CliError::Numerical(err.to_string()),
        }
    }
}
