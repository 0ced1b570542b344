use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(serde_json::Error),
    #[error("invalid input: {0}")]
    Schema(String),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] symclass::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for I/O and unparsable input, 2 for validation failures, 3 for
    /// anything else.
    pub fn exit_code(&self) -> u8 {
        use symclass::Error as E;
        match self {
            CliError::Io { .. } | CliError::Json(_) | CliError::Csv(_) => 1,
            CliError::Schema(_) => 2,
            CliError::Core(e) => match e {
                E::UnsupportedDimension(_)
                | E::ShapeMismatch { .. }
                | E::WrongDimension { .. }
                | E::NonFinite
                | E::OddDimension(_)
                | E::InvalidTolerance(_)
                | E::StructureViolation(_)
                | E::NotInSpI { .. }
                | E::TooFewSamples
                | E::NonMonotone { .. }
                | E::SparseSampling { .. } => 2,
                _ => 3,
            },
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        match e.classify() {
            serde_json::error::Category::Data => CliError::Schema(e.to_string()),
            _ => CliError::Json(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
