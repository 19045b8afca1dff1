//! Batch runs over directories of apx instances, with wallclock cutoffs and
//! IPC/PAR10 scoring.

mod runner;
mod score;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use runner::{discover_instances, run_one, run_suite, SuiteConfig, SystemConfig, VERIFY_MAX_ARGS};
pub use score::{ipc_instance_score, ipc_score, par10, ScoreReport, SystemScore};

/// Cutoff used when none is given, in seconds.
pub const DEFAULT_CUTOFF: f64 = 900.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("no records to score")]
    EmptyRecords,
    #[error("system `{system}` was run on a different instance set")]
    MismatchedInstances { system: String },
    #[error("system `{system}` has more than one record for `{instance}`")]
    DuplicateRecord { system: String, instance: String },
    #[error("{0}")]
    Io(String),
    #[error("invalid record on line {line}: {msg}")]
    BadRecord { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Success,
    Timeout,
    Crash,
    Memout,
}

impl RunStatus {
    pub fn is_success(self) -> bool {
        self == RunStatus::Success
    }
}

/// One run of one system on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub system: String,
    pub instance: String,
    pub status: RunStatus,
    /// Seconds, measured around parsing and solving.
    pub wallclock: f64,
    pub solutions: usize,
    /// Outcome of the optional cross-check; `None` when not requested.
    pub verified: Option<bool>,
}

/// One JSON object per line.
pub fn write_records(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn read_records(text: &str) -> Result<Vec<BenchRecord>, BenchError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| BenchError::BadRecord {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}
