//! `dirtytape` — deterministic plot data and verification runs for the
//! dirty-tape rate-bound library.
//!
//! Exit status: 0 success, 1 usage error, 2 verification failure, 3 I/O
//! error.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod output;

use config::{CommonOpts, Format, RunConfig};
use output::Table;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_VERIFY_FAILED: i32 = 2;
const EXIT_IO: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "dirtytape",
    version,
    about = "Achievable-rate lower bounds and rate regions for Gaussian dirty-tape \
             and joint dirty-paper/dirty-tape channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the single-user bounds over transmit power (figure-1 data).
    #[command(name = "single-user")]
    SingleUser(SingleUserArgs),
    /// All-causal MAC frontier plus the state-free outer bound (figure-2 data).
    #[command(name = "mac-dtc")]
    MacDtc(RegionArgs),
    /// Joint dirty-paper/dirty-tape frontier plus outer bound (figure-3 data).
    Jdpt(RegionArgs),
    /// Oracle-equivalence and theorem audits; exits 2 on any failed check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SingleUserArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// Lowest transmit power of the sweep.
    #[arg(long)]
    sweep_min: Option<f64>,
    /// Highest transmit power of the sweep.
    #[arg(long)]
    sweep_max: Option<f64>,
    /// Number of log-spaced sweep points.
    #[arg(long)]
    sweep_points: Option<usize>,
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonOpts,
    /// Random draws per oracle-equivalence audit.
    #[arg(long)]
    trials: Option<usize>,
    /// Jointly Gaussian triples for the dominance check.
    #[arg(long)]
    theorem2_trials: Option<usize>,
    /// Monte Carlo sample count per construction.
    #[arg(long)]
    mc_samples: Option<usize>,
}

/// Writes to stdout, treating a closed pipe as a normal early exit.
fn write_stdout(text: &str) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    match stdout.lock().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn write_output(table: &Table, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match out {
        None => write_stdout(&text),
        Some(path) if path.as_os_str() == "-" => write_stdout(&text),
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::SingleUser(args) => {
            let cfg = RunConfig::resolve(&args.common)?;
            let table =
                commands::single_user(&cfg, args.sweep_min, args.sweep_max, args.sweep_points)?;
            write_output(&table, cfg.format, cfg.out.as_ref())?;
            Ok(EXIT_OK)
        }
        Command::MacDtc(args) => {
            let cfg = RunConfig::resolve(&args.common)?;
            let table = commands::mac_dtc(&cfg)?;
            write_output(&table, cfg.format, cfg.out.as_ref())?;
            Ok(EXIT_OK)
        }
        Command::Jdpt(args) => {
            let cfg = RunConfig::resolve(&args.common)?;
            let table = commands::jdpt(&cfg)?;
            write_output(&table, cfg.format, cfg.out.as_ref())?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let cfg = RunConfig::resolve(&args.common)?;
            let (table, all_pass) =
                commands::verify(&cfg, args.trials, args.theorem2_trials, args.mc_samples)?;
            write_output(&table, cfg.format, cfg.out.as_ref())?;
            Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write_stdout(&e.to_string());
                return EXIT_OK;
            }
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(e @ CliError::Io(_)) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

fn main() {
    std::process::exit(real_main());
}
