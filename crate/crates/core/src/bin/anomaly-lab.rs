//! Command-line front end: `verify`, `compute`, `generate`, `report`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use anomaly_lab::harness::{
    self, compute, exit_code, generate, merge_reports, ComputeRequest, GenerateRequest, InstanceKind, OutputFormat,
    Report, RunConfig, Suite, EXIT_INVARIANT, EXIT_PASS, EXIT_USAGE,
};
use anomaly_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "anomaly-lab", version, about = "Verify, compute and generate anomaly-lab instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Detp,
    Grassmann,
    Fock,
    Groupoid,
    Cohomology,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override a named threshold, e.g. `detp.series=1e-8`.
    #[arg(long = "tolerance", value_name = "KEY=VAL")]
    tolerances: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run invariant batteries and emit a JSON-lines report.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Largest regularization order.
        #[arg(long)]
        p: Option<u32>,
        /// Largest number of Fock modes.
        #[arg(long)]
        modes: Option<usize>,
        /// Largest phase modulus.
        #[arg(long)]
        modulus: Option<u32>,
        /// Largest one-particle dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Compute one quantity from input files.
    Compute {
        #[command(subcommand)]
        what: ComputeArg,
    },
    /// Write a seeded random instance.
    Generate {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        modulus: u32,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge report files.
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ComputeArg {
    Detp {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Omega {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Schwinger {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        polarization: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    H2 {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(long)]
        modulus: u32,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Glue {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        modulus: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    RandomHermitian,
    RandomUnital,
    RandomActionGroupoid,
    RefinedCover,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(report: &Report, format: FormatArg) -> String {
    match format {
        FormatArg::Json => report.to_jsonl(),
        FormatArg::Text => report.to_text(),
    }
}

/// Builds and validates the run configuration; failures are usage errors.
fn build_config(bounds: [Option<usize>; 4], common: &Common) -> Result<RunConfig> {
    let mut config = RunConfig::with_seed(common.seed);
    let [p, modes, modulus, dim] = bounds;
    if let Some(p) = p {
        config.bounds.p = p as u32;
    }
    if let Some(m) = modes {
        config.bounds.modes = m;
    }
    if let Some(n) = modulus {
        config.bounds.modulus = n as u32;
    }
    if let Some(d) = dim {
        config.bounds.dim = d;
    }
    for t in &common.tolerances {
        config.set_tolerance(t)?;
    }
    config.format = match common.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Text => OutputFormat::Text,
    };
    config.out = common.out.clone();
    config.validate()?;
    Ok(config)
}

fn run_verify(suite: SuiteArg, config: RunConfig) -> Result<i32> {
    let suites = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Detp => vec![Suite::Detp],
        SuiteArg::Grassmann => vec![Suite::Grassmann],
        SuiteArg::Fock => vec![Suite::Fock],
        SuiteArg::Groupoid => vec![Suite::Groupoid],
        SuiteArg::Cohomology => vec![Suite::Cohomology],
    };
    let report = harness::verify(&config, &suites)?;
    let format = match config.format {
        OutputFormat::Json => FormatArg::Json,
        OutputFormat::Text => FormatArg::Text,
    };
    emit(&render(&report, format), config.out.as_deref())?;
    if config.out.is_some() {
        eprint!("{}", report.to_text().lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
    }
    Ok(if report.pass() { EXIT_PASS } else { EXIT_INVARIANT })
}

fn run_compute(what: ComputeArg) -> Result<i32> {
    let (req, out) = match what {
        ComputeArg::Detp { matrix, p, out } => (ComputeRequest::Detp { matrix, p }, out),
        ComputeArg::Omega { a, b, p, out } => (ComputeRequest::Omega { a, b, p }, out),
        ComputeArg::Schwinger { x, y, polarization, out } => (ComputeRequest::Schwinger { x, y, polarization }, out),
        ComputeArg::H2 { groupoid, modulus, degree, cocycle, out } => {
            (ComputeRequest::H2 { groupoid, modulus, degree, cocycle }, out)
        }
        ComputeArg::Glue { data, modulus, out } => (ComputeRequest::Glue { data, modulus }, out),
    };
    let value = compute(&req)?;
    emit(&format!("{}\n", serde_json::to_string_pretty(&value)?), out.as_deref())?;
    Ok(EXIT_PASS)
}

fn run_report(files: &[PathBuf], format: FormatArg, out: Option<&Path>) -> Result<i32> {
    let reports = files
        .iter()
        .map(|f| {
            let text = std::fs::read_to_string(f)
                .map_err(|e| Error::Format(format!("cannot read {}: {e}", f.display())))?;
            Report::from_jsonl(&text).map_err(|e| Error::Format(format!("{}: {e}", f.display())))
        })
        .collect::<Result<Vec<_>>>()?;
    let merged = merge_reports(reports);
    emit(&render(&merged, format), out)?;
    Ok(if merged.pass() { EXIT_PASS } else { EXIT_INVARIANT })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suite, p, modes, modulus, dim, common } => {
            match build_config([p.map(|p| p as usize), modes, modulus.map(|n| n as usize), dim], &common) {
                Ok(config) => run_verify(suite, config),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
        }
        Command::Compute { what } => run_compute(what),
        Command::Generate { kind, seed, dim, modulus, max_order, max_points, out } => {
            let kind = match kind {
                KindArg::RandomHermitian => InstanceKind::RandomHermitian,
                KindArg::RandomUnital => InstanceKind::RandomUnital,
                KindArg::RandomActionGroupoid => InstanceKind::RandomActionGroupoid,
                KindArg::RefinedCover => InstanceKind::RefinedCover,
            };
            let req = GenerateRequest { kind, seed, dim, modulus, max_order, max_points };
            generate(&req).and_then(|g| emit(&format!("{}\n", g.contents), out.as_deref()).map(|_| EXIT_PASS))
        }
        Command::Report { files, format, out } => run_report(&files, format, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
