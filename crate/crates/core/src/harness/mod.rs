//! Verification harness behind the `anomaly-lab` command line: seeded
//! invariant batteries, single-quantity computations, instance generation
//! and report merging.

mod commands;
mod report;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

pub use commands::{compute, generate, ComputeRequest, GenerateRequest, Generated, Quantity, InstanceKind};
pub use report::{merge_reports, CaseRecord, InputDigest, Report, SuiteSummary, Summary};

use crate::error::{Error, Result};

/// Exit status for a passing run.
pub const EXIT_PASS: i32 = 0;
/// Some invariant was violated.
pub const EXIT_INVARIANT: i32 = 1;
/// Bad command line; no report is written.
pub const EXIT_USAGE: i32 = 2;
/// An input could not be read or parsed.
pub const EXIT_FORMAT: i32 = 3;
/// Inputs parsed but the computation is undefined on them.
pub const EXIT_DOMAIN: i32 = 4;

/// Exit status for an error escaping a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Format(_) | Error::Json(_) | Error::Io(_) => EXIT_FORMAT,
        _ => EXIT_DOMAIN,
    }
}

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest one-particle dimension for matrix batteries.
    pub dim: usize,
    /// Largest number of Fock modes.
    pub modes: usize,
    /// Largest regularization order.
    pub p: u32,
    /// Largest phase modulus `N`.
    pub modulus: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { dim: 8, modes: 4, p: 4, modulus: 8 }
    }
}

impl Bounds {
    pub const MAX_DIM: usize = 16;
    pub const MAX_MODES: usize = 8;
    pub const MAX_P: u32 = 8;
    pub const MAX_MODULUS: u32 = 16;

    pub fn validate(&self) -> Result<()> {
        let ok = (2..=Self::MAX_DIM).contains(&self.dim)
            && (1..=Self::MAX_MODES).contains(&self.modes)
            && (1..=Self::MAX_P).contains(&self.p)
            && (2..=Self::MAX_MODULUS).contains(&self.modulus);
        if ok {
            Ok(())
        } else {
            Err(Error::Size(format!(
                "bounds {self:?} outside dim 2..={}, modes 1..={}, p 1..={}, modulus 2..={}",
                Self::MAX_DIM,
                Self::MAX_MODES,
                Self::MAX_P,
                Self::MAX_MODULUS
            )))
        }
    }
}

/// Default thresholds by name; `--tolerance KEY=VAL` overrides them.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("detp.series", 1e-10),
    ("detp.omega", 1e-9),
    ("detp.classical", 1e-12),
    ("detp.dual", 1e-9),
    ("grassmann.detline", 1e-9),
    ("grassmann.alpha", 1e-9),
    ("fock.scalar", 1e-9),
    ("fock.antisymmetry", 1e-10),
    ("fock.cocycle", 1e-9),
    ("fock.block", 1e-12),
    ("fock.fixture", 1e-10),
    ("fock.bogoliubov", 1e-8),
    ("fock.witness", 1e-10),
    ("fock.filling", 1e-9),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Domain(format!("unknown format {s:?}; expected json or text"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub bounds: Bounds,
    pub tolerances: BTreeMap<String, f64>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            bounds: Bounds::default(),
            tolerances: BTreeMap::new(),
            format: OutputFormat::Json,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        RunConfig { seed, ..Self::default() }
    }

    /// Parses and records a `KEY=VAL` tolerance override.
    pub fn set_tolerance(&mut self, spec: &str) -> Result<()> {
        let (key, val) = spec
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("tolerance {spec:?} is not KEY=VAL")))?;
        if !DEFAULT_TOLERANCES.iter().any(|(k, _)| *k == key) {
            return Err(Error::Domain(format!("unknown tolerance key {key:?}")));
        }
        let v: f64 = val
            .parse()
            .map_err(|_| Error::Domain(format!("tolerance value {val:?} is not a number")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain(format!("tolerance {key} must be positive, got {v}")));
        }
        self.tolerances.insert(key.to_string(), v);
        Ok(())
    }

    pub fn tolerance(&self, key: &str) -> f64 {
        self.tolerances.get(key).copied().unwrap_or_else(|| {
            DEFAULT_TOLERANCES
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .expect("tolerance key is registered")
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.bounds.validate()?;
        for (k, v) in &self.tolerances {
            if !(*v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("tolerance {k} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// The invariant batteries, one per library layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Detp,
    Grassmann,
    Fock,
    Groupoid,
    Cohomology,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Detp, Suite::Grassmann, Suite::Fock, Suite::Groupoid, Suite::Cohomology];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Detp => "detp",
            Suite::Grassmann => "grassmann",
            Suite::Fock => "fock",
            Suite::Groupoid => "groupoid",
            Suite::Cohomology => "cohomology",
        }
    }

    /// Per-suite seed, so a suite draws the same instances alone or in `all`.
    pub fn seed(&self, base: u64) -> u64 {
        let index = Suite::ALL.iter().position(|s| s == self).expect("listed") as u64;
        base ^ (index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }

    /// Suites selected by name; `all` selects every suite.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
            .ok_or_else(|| Error::Domain(format!("unknown suite {name:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs the selected suites concurrently and assembles one report.
pub fn verify(config: &RunConfig, suites: &[Suite]) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let results: Vec<(Vec<CaseRecord>, SuiteSummary)> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                scope.spawn(move || {
                    let t0 = Instant::now();
                    let seed = suite.seed(config.seed);
                    let cases = suites::run(suite, config, seed);
                    let summary = SuiteSummary::from_cases(suite.name(), seed, &cases, t0.elapsed());
                    (cases, summary)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut cases = Vec::new();
    let mut summaries = Vec::new();
    for (c, s) in results {
        cases.extend(c);
        summaries.push(s);
    }
    Ok(Report {
        cases,
        summary: Summary::from_suites(summaries, start.elapsed()),
    })
}
