use thiserror::Error;

use crate::verify::CheckResult;

/// Everything that can go wrong between reading a pencil and emitting a report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pencil fiber must have boundary (b = 0)")]
    NoBoundary,

    #[error("base locus must be nonempty (b = 0)")]
    EmptyBaseLocus,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("class length {found} does not match fiber rank {expected} (cycle {index})")]
    ClassLength {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("chirality must be ±1, got {0}")]
    Chirality(i64),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("no admissible convention after {tried} candidates; best partial scorecard passed {passed}/{total} checks")]
    NoAdmissibleConvention {
        tried: usize,
        passed: usize,
        total: usize,
        best: Vec<CheckResult>,
    },

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
