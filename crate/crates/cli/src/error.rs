use std::io;
use std::path::PathBuf;

use fahp_core::fuzzy::FuzzyError;
use fahp_core::hierarchy::HierarchyError;
use fahp_core::survey::SurveyError;
use fahp_core::SolverError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;
pub const EXIT_BREACH: i32 = 4;

#[derive(Debug, Error)]
#[error("matrix {parent:?}, judgment {index} ({row}, {col}): {source}")]
pub struct JudgmentError {
    pub parent: String,
    pub index: usize,
    pub row: String,
    pub col: String,
    pub source: FuzzyError,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{}: row {row}: {message}", path.display())]
    Csv {
        path: PathBuf,
        row: u64,
        message: String,
    },
    #[error(transparent)]
    Judgment(Box<JudgmentError>),
    #[error("scale: {0}")]
    Scale(FuzzyError),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error("block {parent:?}: {source}")]
    Solver { parent: String, source: SolverError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Survey(#[from] SurveyError),
    #[error("{0}")]
    Breach(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. }
            | CliError::Json { .. }
            | CliError::Csv { .. }
            | CliError::Judgment(_)
            | CliError::Scale(_)
            | CliError::Hierarchy(_)
            | CliError::Usage(_) => EXIT_INPUT,
            CliError::Solver { source, .. } => match source {
                SolverError::InvalidConfig(_)
                | SolverError::InvalidStep(_)
                | SolverError::TooLarge { .. } => EXIT_INPUT,
                _ => EXIT_UNDEFINED,
            },
            CliError::Survey(SurveyError::ZeroVariance) => EXIT_UNDEFINED,
            CliError::Survey(_) => EXIT_INPUT,
            CliError::Breach(_) => EXIT_BREACH,
            CliError::Write { .. } | CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}
