//! The `quenchkit` command line.
//!
//! Every command reads a [`RunConfig`]: defaults, overridden by an optional
//! `--config` file, overridden in turn by flags. File-producing commands keep
//! stdout empty and report on stderr; `lmg-check` prints its table to stdout.
//!
//! Exit codes: 0 success, 2 configuration, 3 numerical failure,
//! 4 failed statistical check, 5 I/O.

pub mod commands;
pub mod config;
pub mod table;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use commands::{Artifact, CliError, CliResult};
pub use config::{ConfigError, Origin, RawConfig, RunConfig};
pub use table::{format_number, Cell, Table};

#[derive(Debug, Parser)]
#[command(
    name = "quenchkit",
    version,
    about = "Quench defect densities and entanglement scaling datasets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Defect densities, closed form and quadrature
    Kinks(CommonArgs),
    /// Quench-limited block entropy sweep
    Entropy(CommonArgs),
    /// Ornstein-Uhlenbeck correlation check
    Ou(CommonArgs),
    /// Free-fermion and exact-diagonalization baselines
    Exact(CommonArgs),
    /// LMG operator identities
    #[command(name = "lmg-check")]
    LmgCheck(CommonArgs),
    /// Every figure panel plus a checksum manifest
    Figures(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Config file of `section.key = value` lines
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory (default: $QUENCHKIT_OUT, else ./out)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma list of ising, xx, xxx, lmg
    #[arg(long)]
    pub model: Option<String>,
    /// Comma list of quench times
    #[arg(long)]
    pub tau: Option<String>,
    /// Comma list of block sizes; `a..=b` ranges allowed
    #[arg(long = "L")]
    pub block_sizes: Option<String>,
    /// Quadrature tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Override any config key, e.g. `--set ou.n_paths=1000`
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

impl CommonArgs {
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut raw = RawConfig::with_defaults();
        if let Some(path) = &self.config {
            raw.merge_file(path)?;
        }
        let flag = |raw: &mut RawConfig, key: &str, value: Option<String>| match value {
            Some(v) => raw.set(key, &v, Origin::Flag),
            None => Ok(()),
        };
        flag(
            &mut raw,
            "run.out",
            self.out.as_ref().map(|p| p.display().to_string()),
        )?;
        flag(&mut raw, "run.seed", self.seed.map(|s| s.to_string()))?;
        flag(&mut raw, "run.model", self.model.clone())?;
        flag(&mut raw, "run.tau", self.tau.clone())?;
        flag(&mut raw, "run.L", self.block_sizes.clone())?;
        flag(&mut raw, "run.tol", self.tol.map(|t| t.to_string()))?;
        for kv in &self.set {
            let Some((k, v)) = kv.split_once('=') else {
                return Err(ConfigError {
                    origin: Origin::Flag,
                    key: kv.clone(),
                    message: "expected KEY=VALUE".into(),
                });
            };
            raw.set(k, v, Origin::Flag)?;
        }
        RunConfig::from_raw(&raw)
    }
}

fn report(written: &[PathBuf]) {
    for p in written {
        eprintln!("wrote {}", p.display());
    }
}

/// Runs one command; the caller maps the error to an exit code.
pub fn execute(command: &Command) -> CliResult<()> {
    match command {
        Command::Kinks(a) => {
            let cfg = a.resolve()?;
            report(&commands::write_artifacts(&cfg.out, &commands::kinks(&cfg)?)?);
        }
        Command::Entropy(a) => {
            let cfg = a.resolve()?;
            report(&commands::write_artifacts(&cfg.out, &commands::entropy(&cfg)?)?);
        }
        Command::Ou(a) => {
            let cfg = a.resolve()?;
            let (artifacts, verdict) = commands::ou(&cfg)?;
            report(&commands::write_artifacts(&cfg.out, &artifacts)?);
            if let Some(e) = verdict {
                return Err(e);
            }
        }
        Command::Exact(a) => {
            let cfg = a.resolve()?;
            report(&commands::write_artifacts(&cfg.out, &commands::exact(&cfg)?)?);
        }
        Command::LmgCheck(a) => {
            let cfg = a.resolve()?;
            let rows = commands::lmg_audit(&cfg)?;
            print!("{}", commands::format_lmg_report(&rows));
            if let Some(bad) = rows.iter().find(|r| !r.passes()) {
                return Err(CliError::Numeric(format!(
                    "identity residual above {:e} at N = {}, lambda = {}",
                    crate::lmg::IDENTITY_TOLERANCE,
                    bad.sites,
                    bad.field
                )));
            }
        }
        Command::Figures(a) => {
            let cfg = a.resolve()?;
            let artifacts = commands::figures(&cfg)?;
            report(&commands::write_figures(
                &cfg.out,
                &artifacts,
                cfg.figures.gnuplot,
            )?);
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quenchkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
