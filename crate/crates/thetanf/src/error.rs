use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the pipeline and the CLI.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: polynomial is not monic")]
    NonMonic { line: usize },
    #[error("line {line}: degree {degree} outside {min}..={max}", min = thetanf_core::numfield::MIN_DEGREE, max = thetanf_core::numfield::MAX_DEGREE)]
    DegreeOutOfRange { line: usize, degree: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{label} skipped: {reasons}")]
    Rejected { label: String, reasons: String },
    #[error("{label}: {source}")]
    Field {
        label: String,
        #[source]
        source: thetanf_core::Error,
    },
    #[error("invariant violated for {label}: {detail}")]
    Invariant { label: String, detail: String },
}

impl PipelineError {
    /// Process exit code: 1 for bad input or usage, 2 for the internal bug class.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Field { .. } | PipelineError::Invariant { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = PipelineError> = std::result::Result<T, E>;
