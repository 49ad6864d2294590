//! Command-line front end for unitgate: field records, per-field reports,
//! batch runs over newline-delimited JSON, and the coefficient scan.
//!
//! Coefficients are little-endian throughout (constant term first).

use thiserror::Error;

pub mod analyze;
pub mod batch;
pub mod poly;
pub mod record;
pub mod report;
pub mod scan;

pub use analyze::{analyze, AnalyzeOptions, SUnitOptions};
pub use batch::{run_batch, BatchOutcome, Summary};
pub use record::FieldRecord;
pub use report::Report;
pub use scan::{scan, Predicate, ScanOptions, ScanOutcome};

pub const EXIT_OK: i32 = 0;
/// An oracle result contradicts a certificate.
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}
