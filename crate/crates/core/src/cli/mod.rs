//! File-driven front end behind the `ep` binary.
//!
//! Exit codes: 0 when every assertion holds, 1 when one fails or the
//! computation is rejected, 2 on usage, parse or validation errors.

mod commands;
mod datum_file;
mod report;

pub use commands::{parse_character, parse_weights, run_command, Outcome};
pub use datum_file::{
    doubled, parse_datum, parse_rational, parse_split, serialize_datum, weight_from_true, DatumFile, RatText,
    RootEntry, SplitFile, SplitRootEntry,
};
pub use report::{emit_report, round15, Format, Report, Value};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid datum: {0}")]
    Validation(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            _ => 2,
        }
    }
}

impl From<crate::epcore::EpError> for CliError {
    fn from(e: crate::epcore::EpError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<crate::clifford::CliffordError> for CliError {
    fn from(e: crate::clifford::CliffordError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<crate::charlat::CharError> for CliError {
    fn from(e: crate::charlat::CharError) -> Self {
        CliError::Compute(e.to_string())
    }
}
