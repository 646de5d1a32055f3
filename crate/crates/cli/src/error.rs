use std::io;
use std::path::PathBuf;

use agree2x2::error::{StudyError, TableError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid table: {0}")]
    InvalidTable(#[from] TableError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Data(String),
    #[error("unknown estimator `{0}`")]
    UnknownEstimator(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::InvalidTable(_) => 2,
            CliError::Io { .. } | CliError::Data(_) => 3,
            CliError::UnknownEstimator(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    /// Maps a study error raised while reading or writing `path`.
    pub fn study(path: impl Into<PathBuf>) -> impl FnOnce(StudyError) -> CliError {
        let path = path.into();
        move |e| match e {
            StudyError::Config(m) => CliError::Usage(m),
            StudyError::Table(TableError::InvalidRange { from, to }) => {
                CliError::Usage(format!("invalid range {from}..={to}"))
            }
            StudyError::Table(t) => CliError::InvalidTable(t),
            StudyError::Io(source) => CliError::Io { path, source },
            StudyError::Csv(c) => CliError::Data(format!("{}: {c}", path.display())),
            StudyError::Parse { line, message } => CliError::Data(format!("{}:{line}: {message}", path.display())),
        }
    }
}
