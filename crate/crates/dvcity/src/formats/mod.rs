//! Input and output file formats.

mod bad_list;
mod commit_log;
mod scm_log;

pub use bad_list::parse_bad_commits;
pub use commit_log::{parse_commit_log, write_commit_log};
pub use scm_log::parse_scm_log;

use dvcity_core::IngestError;

/// Why a record could not be read.
#[derive(Debug, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("unparseable timestamp {0:?}")]
    Timestamp(String),
    #[error("{0}")]
    Invalid(#[from] IngestError),
    #[error("read failure: {0}")]
    Io(#[from] std::io::Error),
}

/// A parse failure with the 1-based line where the offending record starts.
#[derive(Debug, thiserror::Error)]
#[error("{kind}, line {line}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(line: usize, kind: impl Into<ParseErrorKind>) -> Self {
        ParseError {
            line,
            kind: kind.into(),
        }
    }
}
