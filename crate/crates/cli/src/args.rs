//! Command-line arguments. Flag names mirror the JSON keys; a flag given on
//! the command line replaces the corresponding config value.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{FieldModeName, Mode, RunConfig, Units};
use crate::error::CliError;

/// Environment variable that takes precedence over `--jobs`.
pub const JOBS_ENV: &str = "FANO_SIM_JOBS";

#[derive(Debug, Parser)]
#[command(name = "fano-sim", version, about = "Fano coherence in incoherently driven V-type three-level systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time evolution from the ground state: trajectory CSV and line plot.
    Simulate(RunArgs),
    /// Stationary state: single-row CSV.
    Steady(RunArgs),
    /// Stationary states over an (n_bar, delta/gamma) grid: CSV and heatmaps.
    Sweep(RunArgs),
    /// List or show parameter presets.
    Preset(PresetArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PresetArgs {
    #[arg(long)]
    pub list: bool,
    #[arg(long, value_name = "NAME")]
    pub show: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    #[arg(long = "gamma_a_iso")]
    pub gamma_a_iso: Option<f64>,
    #[arg(long = "gamma_b_iso")]
    pub gamma_b_iso: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long = "delta_over_gamma", allow_hyphen_values = true)]
    pub delta_over_gamma: Option<f64>,
    #[arg(long = "n_bar")]
    pub n_bar: Option<f64>,
    #[arg(long = "temperature_k")]
    pub temperature_k: Option<f64>,
    #[arg(long = "transition_frequency")]
    pub transition_frequency: Option<f64>,
    #[arg(long = "field_mode", value_enum)]
    pub field_mode: Option<FieldModeName>,
    #[arg(long = "t_max")]
    pub t_max: Option<f64>,
    #[arg(long = "n_samples")]
    pub n_samples: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps (overridden by FANO_SIM_JOBS).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl RunArgs {
    /// Loads the config file (if any) and applies the flags on top.
    pub fn into_config(self, mode: Mode, jobs_env: Option<&str>) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if cfg.mode.is_some_and(|m| m != mode) {
            return Err(CliError::Config(format!(
                "config mode {:?} does not match subcommand {mode:?}",
                cfg.mode.unwrap()
            )));
        }
        cfg.mode = Some(mode);
        macro_rules! set {
            ($($field:ident).+ <- $value:expr) => {
                if let Some(v) = $value {
                    cfg.$($field).+ = Some(v);
                }
            };
        }
        set!(preset <- self.preset);
        set!(units <- self.units);
        set!(params.gamma_a_iso <- self.gamma_a_iso);
        set!(params.gamma_b_iso <- self.gamma_b_iso);
        set!(params.p <- self.p);
        set!(params.field_mode <- self.field_mode);
        set!(time.t_max <- self.t_max);
        set!(time.n_samples <- self.n_samples);
        set!(out <- self.out);
        set!(jobs <- self.jobs);
        // a flag for one form of an exclusive pair replaces the other form
        if self.delta.is_some() {
            cfg.params.delta = self.delta;
            cfg.params.delta_over_gamma = None;
        }
        if self.delta_over_gamma.is_some() {
            cfg.params.delta_over_gamma = self.delta_over_gamma;
            cfg.params.delta = None;
        }
        if self.n_bar.is_some() {
            cfg.params.n_bar = self.n_bar;
            cfg.params.temperature_k = None;
            cfg.params.transition_frequency = None;
        }
        if self.temperature_k.is_some() || self.transition_frequency.is_some() {
            set!(params.temperature_k <- self.temperature_k);
            set!(params.transition_frequency <- self.transition_frequency);
            cfg.params.n_bar = None;
        }
        if let Some(text) = jobs_env {
            let jobs = text.trim().parse::<usize>().map_err(|_| {
                CliError::Config(format!("{JOBS_ENV} must be a positive integer, got {text:?}"))
            })?;
            cfg.jobs = Some(jobs);
        }
        Ok(cfg)
    }
}
