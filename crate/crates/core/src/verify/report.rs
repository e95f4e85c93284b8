//! Verification reports, their CSV summary and on-disk checkpoints.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::TheoremId;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    NotApplicable,
    InProgress,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub diagnostics: Value,
}

/// Where a resumed campaign picks up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resume {
    pub units_done: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub k: usize,
    pub source: String,
    pub connected_only: bool,
    pub graphs_checked: u64,
    pub hypothesis_hits: u64,
    pub violations: Vec<Violation>,
    /// Every path and cycle decision was exact.
    pub exact: bool,
    /// Run outside the statement's hypotheses on request.
    pub extrapolated: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub tol: f64,
    pub wall_time_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resume: Option<Resume>,
}

impl VerificationReport {
    pub(crate) fn empty(theorem: TheoremId, n: usize, k: usize, source: String, connected_only: bool, tol: f64) -> Self {
        VerificationReport {
            theorem,
            n,
            k,
            source,
            connected_only,
            graphs_checked: 0,
            hypothesis_hits: 0,
            violations: Vec::new(),
            exact: true,
            extrapolated: false,
            status: Status::InProgress,
            note: None,
            tol,
            wall_time_s: 0.0,
            resume: Some(Resume { units_done: 0 }),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Same campaign parameters, so a checkpoint of `other` may continue this one.
    pub(crate) fn same_campaign(&self, other: &VerificationReport) -> bool {
        self.theorem == other.theorem
            && self.n == other.n
            && self.k == other.k
            && self.source == other.source
            && self.connected_only == other.connected_only
            && self.extrapolated == other.extrapolated
            && self.tol == other.tol
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn read(path: &Path) -> Result<VerificationReport> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// Writes through a temporary file so an interrupted write never leaves a torn report.
    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = tmp_path(path);
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_json()?.as_bytes())?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}

pub const CSV_HEADER: &str = "theorem,n,k,source,graphs_checked,hypothesis_hits,violations,exact,extrapolated,status,wall_time_s";

pub fn csv_row(r: &VerificationReport) -> String {
    let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{:.3}",
        r.theorem,
        r.n,
        r.k,
        r.source.replace(',', ";"),
        r.graphs_checked,
        r.hypothesis_hits,
        r.violations.len(),
        r.exact,
        r.extrapolated,
        status,
        r.wall_time_s
    )
}

/// CSV summary, one row per report.
pub fn write_csv<'a>(path: &Path, reports: impl IntoIterator<Item = &'a VerificationReport>) -> Result<()> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}
