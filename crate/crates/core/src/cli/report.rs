use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{RunConfig, Suite};
use crate::error::{Error, Result};

/// Tolerance for checks that must hold exactly (residual identically zero).
pub const EXACT: f64 = f64::MIN_POSITIVE;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// `pass ⇔ residual ≤ tolerance`; a NaN residual fails.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

/// Tabular output written next to the JSON report.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Artifact {
    pub fn new(file_name: &str, header: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Self {
            file_name: file_name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(&self.file_name);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:e}")))?;
        }
        w.flush()?;
        Ok(path)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Usage,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteError {
    pub kind: ErrorKind,
    pub message: String,
}

impl From<&Error> for SuiteError {
    fn from(e: &Error) -> Self {
        let kind = match e {
            Error::Usage(_) | Error::Syntax { .. } => ErrorKind::Usage,
            _ => ErrorKind::Numeric,
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Set when the suite aborted; checks gathered so far are kept.
    pub error: Option<SuiteError>,
    /// Per-sample breakdowns and computed values.
    pub details: serde_json::Value,
    pub wall_time: f64,
    #[serde(skip)]
    pub artifacts: Vec<Artifact>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub pass: bool,
    pub wall_time: f64,
    pub suites: Vec<SuiteReport>,
    /// Complete configuration; re-running it reproduces the report.
    pub config: RunConfig,
}

impl Report {
    pub fn new(config: RunConfig, suites: Vec<SuiteReport>, wall_time: f64) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: config.seed,
            pass: suites.iter().all(SuiteReport::passed),
            wall_time,
            suites,
            config,
        }
    }

    /// 0 all pass, 1 check failure, 2 usage error, 3 numeric error.
    pub fn exit_code(&self) -> i32 {
        let kinds: Vec<ErrorKind> = self.suites.iter().filter_map(|s| s.error.as_ref().map(|e| e.kind)).collect();
        if kinds.contains(&ErrorKind::Usage) {
            2
        } else if kinds.contains(&ErrorKind::Numeric) {
            3
        } else if self.pass {
            0
        } else {
            1
        }
    }

    /// `(suite.check, pass)` in report order.
    pub fn pass_vector(&self) -> Vec<(String, bool)> {
        self.suites
            .iter()
            .flat_map(|s| s.checks.iter().map(move |c| (format!("{}.{}", s.suite, c.name), c.pass)))
            .collect()
    }

    /// Copy with every wall-time field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.wall_time = 0.0;
        for s in &mut r.suites {
            s.wall_time = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Write `report.json` and every CSV artifact into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("report.json");
        std::fs::write(&path, self.to_json()? + "\n")?;
        let mut written = vec![path];
        for s in &self.suites {
            for a in &s.artifacts {
                written.push(a.write(dir)?);
            }
        }
        Ok(written)
    }
}
