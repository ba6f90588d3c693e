//! `mnns`: configuration-driven front end for the verification suites and
//! solver experiments.
//!
//! Exit codes: 0 when every check passes, 1 on a numerical failure, 2 on a
//! usage or configuration error.

mod config;
mod presets;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::config::ExperimentConfig;
use crate::report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(2),
            CliError::Compute(_) | CliError::Io(_) => ExitCode::from(1),
        }
    }
}

#[derive(Parser)]
#[command(name = "mnns", version, about = "Mixed-norm analysis suites and mild-solution experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML configuration.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Report directory; overrides `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the configured seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print a shipped configuration as TOML.
    Preset {
        /// One of tg2d-small, tg2d-large-local, aniso-demo, decay-matrix.
        name: String,
    },
}

const THREADS_VAR: &str = "MNNS_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_VAR}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn run(config: PathBuf, out: Option<PathBuf>, seed: Option<u64>) -> Result<bool, CliError> {
    let mut cfg = ExperimentConfig::load(&config)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let dir = out
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("mnns-out"));
    cfg.validate()?;
    configure_threads()?;
    let start = Instant::now();
    let (cases, summary) = suites::run(&cfg, &dir)?;
    let mut report = Report::new(&cfg, cases, summary);
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    report.write(&dir)?;
    for case in report.cases.iter().filter(|c| !c.pass) {
        let why = case.error.clone().unwrap_or_else(|| {
            case.checks
                .iter()
                .filter(|k| !k.pass)
                .map(|k| format!("{} = {:e} (target {:e} ± {:e})", k.quantity, k.measured, k.target, k.tolerance))
                .collect::<Vec<_>>()
                .join(", ")
        });
        eprintln!("FAIL case {} [{}]: {why}", case.index, case.label);
    }
    println!(
        "{}: {} cases, {} failures, report in {}",
        if report.summary.pass { "PASS" } else { "FAIL" },
        report.summary.cases,
        report.summary.failures,
        dir.display()
    );
    Ok(report.summary.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out, seed } => run(config, out, seed),
        Command::Preset { name } => presets::render(&name).map(|text| {
            print!("{text}");
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("mnns: {e}");
            e.exit_code()
        }
    }
}
