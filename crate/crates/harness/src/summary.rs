use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// How one record is classed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Pass,
    /// A theorem or identity that did not hold.
    Failure,
    /// A conjecture that did not hold.
    Counterexample,
    /// Exact and fast disagree.
    Divergence,
    Skip,
}

/// Running totals; also stored in checkpoints so a resumed run reports
/// the same numbers as an uninterrupted one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub tuples: u64,
    pub passes: u64,
    /// Every record with `pass = false`.
    pub fails: u64,
    pub skips: u64,
    pub divergences: u64,
    pub counterexamples: u64,
    pub first_failure: Option<String>,
}

impl Counts {
    pub fn add(&mut self, class: Class, describe: impl FnOnce() -> String) {
        self.tuples += 1;
        match class {
            Class::Pass => self.passes += 1,
            Class::Skip => self.skips += 1,
            Class::Failure | Class::Counterexample | Class::Divergence => {
                self.fails += 1;
                if class == Class::Divergence {
                    self.divergences += 1;
                }
                if class == Class::Counterexample {
                    self.counterexamples += 1;
                }
                if self.first_failure.is_none() {
                    self.first_failure = Some(describe());
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub check: String,
    #[serde(flatten)]
    pub counts: Counts,
    pub wall_ms: u64,
    /// The run stopped before the last chunk.
    pub interrupted: bool,
}

impl Summary {
    /// 0 when nothing failed, 1 on a theorem failure or path divergence,
    /// 3 when the only failures are conjecture counterexamples.
    pub fn exit_code(&self) -> i32 {
        let c = &self.counts;
        if c.fails > c.counterexamples {
            1
        } else if c.counterexamples > 0 {
            3
        } else {
            0
        }
    }
}

/// The most severe exit code over several runs.
pub fn combined_exit_code(summaries: &[Summary]) -> i32 {
    let codes: Vec<i32> = summaries.iter().map(Summary::exit_code).collect();
    if codes.contains(&1) {
        1
    } else if codes.contains(&3) {
        3
    } else {
        0
    }
}

pub const SUMMARY_HEADER: [&str; 6] = ["check", "tuples", "passes", "fails", "skips", "wall_ms"];

/// One row per summary.
pub fn write_summary_csv(path: &Path, summaries: &[Summary]) -> Result<()> {
    let io = |e: csv::Error| HarnessError::io(path, e.into());
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(SUMMARY_HEADER).map_err(io)?;
    for s in summaries {
        let c = &s.counts;
        w.write_record([
            s.check.clone(),
            c.tuples.to_string(),
            c.passes.to_string(),
            c.fails.to_string(),
            c.skips.to_string(),
            s.wall_ms.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

/// Sidecar next to a summary CSV holding the config echo and timestamps.
pub fn meta_path(summary: &Path) -> PathBuf {
    let mut name = summary.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub fn unix_ms(t: SystemTime) -> u64 {
    t.duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

pub fn write_meta(path: &Path, runs: &[(serde_json::Value, &Summary, SystemTime, SystemTime)]) -> Result<()> {
    let body: Vec<serde_json::Value> = runs
        .iter()
        .map(|(config, summary, started, finished)| {
            serde_json::json!({
                "config": config,
                "summary": summary,
                "started_unix_ms": unix_ms(*started),
                "finished_unix_ms": unix_ms(*finished),
            })
        })
        .collect();
    let text = serde_json::to_string_pretty(&body).expect("meta serializes");
    fs::write(path, text + "\n").map_err(|e| HarnessError::io(path, e))
}
