//! Command-line front end: configuration, subcommand dispatch and artifact
//! writing for the `gk` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::Outcome;
pub use config::{Format, RunConfig};
pub use error::CliError;
pub use output::Output;

#[derive(Debug, Parser)]
#[command(name = "gk", version, about = "Symbolic and numerical analysis of the Gardner-Kawahara equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory (overrides `output.dir`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Table format (overrides `output.format`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Omit the generation time from JSON reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Point symmetries, commutator table and travelling-wave reduction.
    Symmetries,
    /// Zero-order multipliers and conserved currents.
    Conslaws,
    /// Power-series coefficients of the travelling-wave ODE.
    Series,
    /// Tanh-method families and their verification.
    Tanh,
    /// Data files for the six closed-form figures.
    Figures,
    /// Numerical evolution of a closed-form wave and conservation drift.
    Simulate,
}

impl Cli {
    /// The configuration file merged with command-line overrides.
    pub fn resolve(&self) -> Result<(RunConfig, Output), CliError> {
        let cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let out = Output {
            dir: self.out.clone().unwrap_or_else(|| cfg.output.dir.clone()),
            format: self.format.unwrap_or(cfg.output.format),
            timestamp: cfg.output.timestamp && !self.no_timestamp,
        };
        Ok((cfg, out))
    }
}

pub fn run_command(command: Command, cfg: &RunConfig, out: &Output) -> Result<Outcome, CliError> {
    log::info!("running {command:?} into {}", out.dir.display());
    match command {
        Command::Symmetries => commands::cmd_symmetries(cfg, out),
        Command::Conslaws => commands::cmd_conslaws(cfg, out),
        Command::Series => commands::cmd_series(cfg, out),
        Command::Tanh => commands::cmd_tanh(cfg, out),
        Command::Figures => commands::cmd_figures(cfg, out),
        Command::Simulate => commands::cmd_simulate(cfg, out),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (cfg, out) = cli.resolve()?;
    run_command(cli.command, &cfg, &out)
}
