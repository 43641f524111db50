//! `bethe`: batch verification runs with machine-readable reports.
//!
//! Exit status: 0 when every check passes, 1 when a check fails (the report
//! is still written), 2 for usage errors and invalid configurations, 3 for
//! I/O errors.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{CentralizerArgs, ClassicalArgs, GaudinArgs, TalalaevArgs, VerifyArgs};
use report::{Format, RunReport};

#[derive(Parser, Debug)]
#[command(name = "bethe", version, about = "Exact checks for commutative subalgebras of loop algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report path; relative paths resolve against --out-dir when set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for reports. Without --out the report goes to <dir>/<command>.<ext>.
    #[arg(long, global = true, env = "BETHE_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20240611)]
    seed: u64,
    /// Embed stage timings in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quantum coefficients Q_(n,k) for gl_r.
    Talalaev(TalalaevArgs),
    /// Classical determinant generators in S(g-).
    Classical(ClassicalArgs),
    /// Graded centralizer dimension sweeps.
    Centralizer(CentralizerArgs),
    /// Quadratic Gaudin Hamiltonians, symbolic checks and spectra.
    Gaudin(GaudinArgs),
    /// Slice and Cartan projection identities plus seeded property checks.
    VerifyLemmas(VerifyArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Talalaev(_) => "talalaev",
            Command::Classical(_) => "classical",
            Command::Centralizer(_) => "centralizer",
            Command::Gaudin(_) => "gaudin",
            Command::VerifyLemmas(_) => "verify-lemmas",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Failure(String),
    Io(std::io::Error),
}

impl From<bethe_core::Error> for CliError {
    fn from(e: bethe_core::Error) -> Self {
        match e {
            bethe_core::Error::Invariant(m) => CliError::Failure(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn dispatch(cli: &Cli) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Talalaev(a) => commands::talalaev(a),
        Command::Classical(a) => commands::classical(a),
        Command::Centralizer(a) => commands::centralizer(a),
        Command::Gaudin(a) => commands::gaudin(a),
        Command::VerifyLemmas(a) => commands::verify_lemmas(a, cli.seed),
    }
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    match (&cli.out, &cli.out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{}", cli.command.name(), cli.format.extension()))),
        (None, None) => None,
    }
}

fn write_report(path: Option<&Path>, bytes: &[u8]) -> std::io::Result<()> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(p, bytes)
        }
        None => report::write_stdout(bytes),
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    if cli.workers == Some(0) {
        return Err(CliError::Config("--workers must be at least 1".into()));
    }
    let start = Instant::now();
    let mut report = bethe_core::par::with_workers(cli.workers, || dispatch(cli))?;
    let elapsed = start.elapsed();
    eprintln!(
        "{}: {} in {:.3}s, workers={}",
        report.command,
        if report.pass { "pass" } else { "FAIL" },
        elapsed.as_secs_f64(),
        cli.workers.unwrap_or_else(bethe_core::par::current_workers)
    );
    if cli.timings {
        report.timings_ms = Some(vec![("total".into(), elapsed.as_millis())]);
    }
    let bytes = report.render(cli.format)?;
    let dest = destination(cli);
    write_report(dest.as_deref(), &bytes)?;
    if let Some(p) = dest {
        eprintln!("report written to {}", p.display());
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failure(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Config(m)) => {
            eprintln!("error: invalid configuration: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: i/o: {e}");
            ExitCode::from(3)
        }
    }
}
