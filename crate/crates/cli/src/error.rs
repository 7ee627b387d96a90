use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nclab::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("reading config {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("io on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("checks failed: {}", .0.join(", "))]
    ChecksFailed(Vec<String>),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code; every core error kind gets its own.
    pub fn exit_code(&self) -> i32 {
        use nclab::Error as E;
        match self {
            CliError::Io { .. } => 1,
            CliError::Config(_) | CliError::ConfigParse { .. } | CliError::Json(_) => 2,
            CliError::ChecksFailed(_) => 3,
            CliError::Core(e) => match e {
                E::MapNotInvertible { .. } => 10,
                E::InvalidParams(_) => 11,
                E::InvalidGauge(_) => 12,
                E::UnreachableRatio(_) => 13,
                E::DomainError(_) => 14,
                E::DegenerateFormMisuse { .. } => 15,
                E::NonFiniteState { .. } => 16,
                E::InvalidStep => 17,
                E::StepUnderflow => 18,
                E::GaussianTail { .. } => 19,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
