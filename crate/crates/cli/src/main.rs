use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};

use airy_gap_cli::commands::{
    cmd_compare, cmd_det, cmd_stats, cmd_sweep, CompareArgs, DetArgs, StatsArgs, SweepArgs,
};
use airy_gap_cli::error::{CliError, EXIT_NUMERICAL, EXIT_VALIDATION};
use airy_gap_cli::parametrix::{cmd_parametrix, ParametrixArgs};

const THREADS_VAR: &str = "AIRY_GAP_THREADS";

#[derive(Parser)]
#[command(
    name = "airy-gap",
    version,
    about = "Airy-kernel gap probabilities and their asymptotics"
)]
struct Cli {
    /// Write the JSON report here instead of stdout
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fredholm determinant at increasing resolution
    Det(DetArgs),
    /// Determinant against its large-gap expansion over a list of scales
    Compare(CompareArgs),
    /// Counting-function mean, variance and covariance
    Stats(StatsArgs),
    /// Jump, determinant and coefficient checks of a model solution
    Parametrix(ParametrixArgs),
    /// One row per value of a varied field, written as CSV
    Sweep(SweepArgs),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::validation(format!(
            "{THREADS_VAR} must be a positive integer, got `{v}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Numerical(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Det(a) => cmd_det(a).context("det")?,
        Command::Compare(a) => cmd_compare(a).context("compare")?,
        Command::Stats(a) => cmd_stats(a).context("stats")?,
        Command::Parametrix(a) => cmd_parametrix(a).context("parametrix")?,
        Command::Sweep(a) => cmd_sweep(a).context("sweep")?,
    };
    if cli.timing {
        report.timing = Some(start.elapsed().as_secs_f64());
    }
    report.emit(cli.out.as_deref())?;
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    e.chain()
        .find_map(|c| c.downcast_ref::<CliError>())
        .map(CliError::exit_code)
        .unwrap_or(EXIT_NUMERICAL)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
