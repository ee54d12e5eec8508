//! Library backing the `dgrover` command-line analyzer.
//!
//! Parsing of the connection-set grammar lives in [`parse`], the named batch
//! families in [`family`], report types and their stable JSON schema in
//! [`report`], and the orchestration (single analysis and parallel family
//! scans) in [`analyze`].

pub mod analyze;
pub mod family;
pub mod parse;
pub mod report;

use thiserror::Error;

/// CLI-level errors, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// The set expression does not match the grammar.
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    /// A validation or analysis error from the core library.
    #[error(transparent)]
    Invalid(#[from] dgrover_core::Error),
    /// `--verify` found the classifier and the brute-force oracle at odds.
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    /// Bad command-line usage (unknown family, empty range, ...).
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for input/validation problems, 2 for internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Usage(_) => 1,
            CliError::OracleDisagreement(_) => 2,
            CliError::Invalid(e) => match e {
                dgrover_core::Error::InternalInconsistency { .. }
                | dgrover_core::Error::SpectralMismatch(_) => 2,
                _ => 1,
            },
        }
    }
}
