//! Corpus pipeline around [`thetanf_core`]: JSON-Lines ingestion, field
//! validation, per-field analysis, grouping by discriminant, independence and
//! collision experiments, and report emission.
//!
//! ```no_run
//! use std::path::Path;
//! use thetanf::{analyze_corpus, group_and_report, load_corpus, render_text, RunConfig};
//!
//! let config = RunConfig::default();
//! let records = load_corpus(Path::new("fields.jsonl")).unwrap();
//! let analysis = analyze_corpus(&records, &config).unwrap();
//! let groups = group_and_report(&analysis.results, &config);
//! print!("{}", render_text(&analysis, &groups, &config));
//! ```

pub mod analysis;
pub mod config;
pub mod corpus;
pub mod emit;
pub mod error;
pub mod report;

pub use analysis::{
    analyze_corpus, analyze_field, validate_field, Analysis, Check, FieldResult, Outcome, SkipReason,
    SkippedField, Validation,
};
pub use config::{OutputFormat, RunConfig};
pub use corpus::{load_corpus, parse_corpus, parse_line};
pub use emit::{emit_reports, render, render_json, render_text};
pub use error::{PipelineError, Result};
pub use report::{
    group_and_report, theta_equal, Collision, GroupReport, Independence, ThetaComparison, Witness,
};
pub use thetanf_core;
