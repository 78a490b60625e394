//! JSON-lines reports: one record per case, then one summary object.

use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::operator::{matrix_to_json, CMatrix, C64};

/// One verified instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub suite: String,
    pub case: String,
    /// SHA-256 of a canonical rendering of the case inputs.
    pub digest: String,
    /// Measured violation; `None` when the case raised an error (or the
    /// measurement was not a number).
    pub violation: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CaseRecord {
    pub fn measured(suite: &str, case: String, digest: String, violation: f64, threshold: f64) -> Self {
        CaseRecord {
            suite: suite.to_string(),
            case,
            digest,
            violation: violation.is_finite().then_some(violation),
            threshold,
            pass: violation <= threshold,
            error: None,
        }
    }

    pub fn failed(suite: &str, case: String, digest: String, threshold: f64, error: &Error) -> Self {
        CaseRecord {
            suite: suite.to_string(),
            case,
            digest,
            violation: None,
            threshold,
            pass: false,
            error: Some(error.to_string()),
        }
    }

    /// Records the outcome of a fallible measurement.
    pub fn from_result(suite: &str, case: String, digest: String, threshold: f64, r: Result<f64>) -> Self {
        match r {
            Ok(v) => Self::measured(suite, case, digest, v, threshold),
            Err(e) => Self::failed(suite, case, digest, threshold, &e),
        }
    }
}

/// Per-suite aggregate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    pub max_violation: f64,
    pub pass: bool,
    /// Seconds since the Unix epoch at which the run finished.
    pub timestamp: u64,
    pub wall_time_s: f64,
}

impl SuiteSummary {
    pub fn from_cases(suite: &str, seed: u64, cases: &[CaseRecord], wall: Duration) -> Self {
        let failures = cases.iter().filter(|c| !c.pass).count();
        SuiteSummary {
            suite: suite.to_string(),
            seed,
            cases: cases.len(),
            failures,
            max_violation: cases.iter().filter_map(|c| c.violation).fold(0.0, f64::max),
            pass: failures == 0,
            timestamp: now(),
            wall_time_s: wall.as_secs_f64(),
        }
    }
}

/// Aggregate over suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suites: Vec<SuiteSummary>,
    pub cases: usize,
    pub failures: usize,
    pub max_violation: f64,
    pub pass: bool,
    pub timestamp: u64,
    pub wall_time_s: f64,
}

impl Summary {
    pub fn from_suites(suites: Vec<SuiteSummary>, wall: Duration) -> Self {
        Summary {
            cases: suites.iter().map(|s| s.cases).sum(),
            failures: suites.iter().map(|s| s.failures).sum(),
            max_violation: suites.iter().map(|s| s.max_violation).fold(0.0, f64::max),
            pass: suites.iter().all(|s| s.pass),
            timestamp: now(),
            wall_time_s: wall.as_secs_f64(),
            suites,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Line {
    Case(CaseRecord),
    Summary(Summary),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&serde_json::to_string(&Line::Case(c.clone())).expect("serializable"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&Line::Summary(self.summary.clone())).expect("serializable"));
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let measured = match (&c.violation, &c.error) {
                (_, Some(e)) => format!("error: {e}"),
                (Some(v), None) => format!("violation {v:.3e}"),
                (None, None) => "violation NaN".to_string(),
            };
            out.push_str(&format!(
                "{} {}/{} {} (threshold {:.1e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.suite,
                c.case,
                measured,
                c.threshold
            ));
        }
        for s in &self.summary.suites {
            out.push_str(&format!(
                "suite {:<11} {} {}/{} cases failed, max violation {:.3e}, {:.2}s\n",
                s.suite,
                if s.pass { "PASS" } else { "FAIL" },
                s.failures,
                s.cases,
                s.max_violation,
                s.wall_time_s
            ));
        }
        out.push_str(&format!(
            "overall {}: {} cases, {} failures, max violation {:.3e}, {:.2}s\n",
            if self.summary.pass { "PASS" } else { "FAIL" },
            self.summary.cases,
            self.summary.failures,
            self.summary.max_violation,
            self.summary.wall_time_s
        ));
        out
    }

    /// Parses a JSON-lines report; exactly one summary line is required.
    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut cases = Vec::new();
        let mut summary = None;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let parsed: Line = serde_json::from_str(line)
                .map_err(|e| Error::Format(format!("report line {}: {e}", i + 1)))?;
            match parsed {
                Line::Case(c) => cases.push(c),
                Line::Summary(s) if summary.is_none() => summary = Some(s),
                Line::Summary(_) => {
                    return Err(Error::Format(format!("report line {}: second summary", i + 1)))
                }
            }
        }
        let summary = summary.ok_or_else(|| Error::Format("report has no summary line".into()))?;
        Ok(Report { cases, summary })
    }

    /// Content that must be identical across runs with the same
    /// configuration: everything except timestamps and wall times.
    pub fn deterministic_view(&self) -> String {
        let mut r = self.clone();
        r.summary.timestamp = 0;
        r.summary.wall_time_s = 0.0;
        for s in &mut r.summary.suites {
            s.timestamp = 0;
            s.wall_time_s = 0.0;
        }
        r.to_jsonl()
    }
}

/// Merges reports. Suites keep their own summaries; a suite name appearing
/// in several reports is kept once per report, distinguished by timestamp.
pub fn merge_reports(reports: Vec<Report>) -> Report {
    let wall: f64 = reports.iter().map(|r| r.summary.wall_time_s).sum();
    let mut cases = Vec::new();
    let mut suites = Vec::new();
    for r in reports {
        cases.extend(r.cases);
        suites.extend(r.summary.suites);
    }
    Report {
        cases,
        summary: Summary::from_suites(suites, Duration::from_secs_f64(wall)),
    }
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Incremental SHA-256 over a canonical rendering of case inputs.
#[derive(Clone, Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(mut self, s: &str) -> Self {
        self.0.update(s.as_bytes());
        self.0.update([0u8]);
        self
    }

    pub fn matrix(self, m: &CMatrix) -> Self {
        let s = matrix_to_json(m);
        self.text(&s)
    }

    pub fn vector(self, v: &[C64]) -> Self {
        let s = serde_json::to_string(&v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).expect("serializable");
        self.text(&s)
    }

    pub fn finish(self) -> String {
        format!("{:x}", self.0.finalize())
    }
}
