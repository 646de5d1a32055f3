use thiserror::Error;

use crate::table::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("cell {cell} must be non-negative, got {value}")]
    InvalidCell { cell: Cell, value: i64 },
    #[error("table is empty (all cells zero)")]
    EmptyTable,
    #[error("table size must be at least 1, got {0}")]
    InvalidSize(i64),
    #[error("invalid size range {from}..={to}")]
    InvalidRange { from: i64, to: i64 },
    #[error("rating sequences differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
}

#[derive(Debug, Error)]
pub enum StudyError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },
}
