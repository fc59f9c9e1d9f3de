//! Run configuration: shared command-line flags merged over an optional JSON
//! config file (flags win), then resolved against per-command defaults.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, Context};
use clap::Args;
use dirtytape::Unit;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(anyhow!("unknown format {other:?}, expected \"csv\" or \"json\"")),
        }
    }
}

/// `lo:hi` search bracket.
pub fn parse_bracket(s: &str) -> anyhow::Result<(f64, f64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().context("bracket low end")?;
    let hi: f64 = hi.trim().parse().context("bracket high end")?;
    if !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(anyhow!("invalid bracket [{lo}, {hi}]"));
    }
    Ok((lo, hi))
}

/// Flags shared by every command; all optional so a config file can supply
/// them. Flags override file values, and command-specific defaults fill the
/// rest.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonOpts {
    /// Transmit power (verify's theorem checks).
    #[arg(long)]
    pub p: Option<f64>,
    /// Transmitter-1 power (two-user commands).
    #[arg(long)]
    pub p1: Option<f64>,
    /// Transmitter-2 power (two-user commands).
    #[arg(long)]
    pub p2: Option<f64>,
    /// Interference power (required for mac-dtc and jdpt).
    #[arg(long)]
    pub ps: Option<f64>,
    /// Unknown-noise power.
    #[arg(long)]
    pub pz: Option<f64>,
    /// Grid resolution: time-sharing points per axis (single-user) or
    /// coefficient points per beta axis (mac-dtc, jdpt).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Dirty-paper coefficient search bracket, as lo:hi (jdpt).
    #[arg(long, value_name = "LO:HI")]
    pub alpha_bracket: Option<String>,
    /// Output unit for rates.
    #[arg(long, value_parser = ["bits", "nats"])]
    pub units: Option<String>,
    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    pub format: Option<String>,
    /// Output path; "-" writes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the randomized verification suites.
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON config file supplying any of the shared options.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// JSON config file mirror of [`CommonOpts`] plus the sweep and trial-count
/// knobs.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub p: Option<f64>,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub ps: Option<f64>,
    pub pz: Option<f64>,
    pub grid: Option<usize>,
    pub alpha_bracket: Option<String>,
    pub units: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub sweep_min: Option<f64>,
    pub sweep_max: Option<f64>,
    pub sweep_points: Option<usize>,
    pub trials: Option<usize>,
    pub theorem2_trials: Option<usize>,
    pub mc_samples: Option<usize>,
}

/// Fully merged configuration (flags over file), still holding options so
/// each command can apply its own defaults and requiredness.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: Option<f64>,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub ps: Option<f64>,
    pub pz: Option<f64>,
    pub grid: Option<usize>,
    pub alpha_bracket: Option<(f64, f64)>,
    pub units: Unit,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub sweep_min: Option<f64>,
    pub sweep_max: Option<f64>,
    pub sweep_points: Option<usize>,
    pub trials: Option<usize>,
    pub theorem2_trials: Option<usize>,
    pub mc_samples: Option<usize>,
}

impl RunConfig {
    pub fn resolve(opts: &CommonOpts) -> Result<Self, CliError> {
        let file: FileConfig = match &opts.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!("invalid config {}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };

        let units_s = opts.units.clone().or(file.units).unwrap_or_else(|| "bits".into());
        let units = units_s
            .parse::<Unit>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let format_s = opts.format.clone().or(file.format).unwrap_or_else(|| "csv".into());
        let format = format_s
            .parse::<Format>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let alpha_bracket = match opts.alpha_bracket.clone().or(file.alpha_bracket) {
            Some(s) => Some(parse_bracket(&s).map_err(|e| CliError::Usage(e.to_string()))?),
            None => None,
        };

        Ok(Self {
            p: opts.p.or(file.p),
            p1: opts.p1.or(file.p1),
            p2: opts.p2.or(file.p2),
            ps: opts.ps.or(file.ps),
            pz: opts.pz.or(file.pz),
            grid: opts.grid.or(file.grid),
            alpha_bracket,
            units,
            format,
            out: opts.out.clone().or(file.out),
            seed: opts.seed.or(file.seed).unwrap_or(42),
            sweep_min: file.sweep_min,
            sweep_max: file.sweep_max,
            sweep_points: file.sweep_points,
            trials: file.trials,
            theorem2_trials: file.theorem2_trials,
            mc_samples: file.mc_samples,
        })
    }
}
