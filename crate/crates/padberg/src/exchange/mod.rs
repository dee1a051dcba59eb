//! Piano-roll CSV and project-file persistence.

mod piano_roll;
mod project;

pub use piano_roll::{export_csv, import_csv, read_csv, score_to_csv, write_csv, CSV_HEADER};
pub use project::{load_project, save_project, ProjectConfig, ProjectFile, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum ExchangeError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: {message}")]
    InvariantViolation { line: u64, message: String },
    #[error("project schema version {found} is not supported (expected {supported})")]
    VersionMismatch { found: u64, supported: u64 },
}

impl ExchangeError {
    fn parse(line: u64, message: impl Into<String>) -> Self {
        ExchangeError::Parse { line, message: message.into() }
    }
}
