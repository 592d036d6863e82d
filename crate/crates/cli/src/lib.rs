//! Command-line front end: single evaluations, chain evaluations, sweeps,
//! random-position Monte Carlo and figure data, written as CSV or JSON.

pub mod config;
pub mod figures;
pub mod output;
pub mod run;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::{Command, ConfigError, RawConfig, RunConfig};
use output::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Model(#[from] wqed_core::Error),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Model(e) if e.is_numerical_guard() => EXIT_NUMERICAL,
            CliError::Model(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wqed",
    version,
    about = "Two-photon response of waveguide-coupled emitter chains"
)]
pub struct Cli {
    /// Output file (figure: output directory); stdout if omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format: csv or json
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Frequency grid half-width in units of Γ
    #[arg(long, global = true)]
    pub grid_width: Option<String>,

    /// Number of frequency grid points (power of two)
    #[arg(long, global = true)]
    pub grid_points: Option<String>,

    /// Monte Carlo seed
    #[arg(long, global = true)]
    pub seed: Option<String>,

    /// key=value config file, or an output file of an earlier run
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// One emitter driven externally, through the waveguide, or both
    Single(RunArgs),
    /// A chain of N emitters
    Ensemble(RunArgs),
    /// g²(0) and ψ_incoh(τ=0) over a range of chain lengths
    Sweep(RunArgs),
    /// g²(0) for randomly placed emitters
    Mc(RunArgs),
    /// Data behind a figure, one file per panel
    Figure(FigureArgs),
}

#[derive(Debug, Args, Default)]
pub struct RunArgs {
    /// external, waveguide, bragg, antibragg or combined
    #[arg(long)]
    pub geometry: Option<String>,
    /// Fraction of emission into the guided mode
    #[arg(long)]
    pub beta: Option<String>,
    /// Laser detuning in units of Γ
    #[arg(long)]
    pub delta: Option<String>,
    /// Emitter count: 7, 1:300, 1:300:2 or 2,4,10
    #[arg(long)]
    pub n: Option<String>,
    /// Real part of the reference Rabi frequency (units of Γ)
    #[arg(long)]
    pub drive_re: Option<String>,
    /// Imaginary part of the reference Rabi frequency (units of Γ)
    #[arg(long)]
    pub drive_im: Option<String>,
    /// External to guided drive ratio for combined illumination
    #[arg(long)]
    pub ratio: Option<String>,
    /// g2_trace, g2_zero, psi_incoh_spectrum, psi_incoh_zero or squeezing
    #[arg(long)]
    pub observable: Option<String>,
    /// Quadrature angle for the squeezing spectrum
    #[arg(long)]
    pub theta: Option<String>,
    /// Largest |τ|Γ written for g2_trace
    #[arg(long)]
    pub tau_max: Option<String>,
    /// Largest |ω|/Γ written for spectra
    #[arg(long)]
    pub omega_max: Option<String>,
    /// Monte Carlo sample count
    #[arg(long)]
    pub samples: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct FigureArgs {
    /// fig2, fig3, fig4, fig5, fig6, fig7, fig8, fig9 or figB1
    pub id: Option<String>,
}

impl Cli {
    /// Merges the config file (if any) and the flags into a resolved config.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut raw = match &self.config {
            Some(path) => RawConfig::from_file(path)?,
            None => RawConfig::default(),
        };
        raw.set_flag("format", self.format.as_deref());
        raw.set_flag("grid_width", self.grid_width.as_deref());
        raw.set_flag("grid_points", self.grid_points.as_deref());
        raw.set_flag("seed", self.seed.as_deref());
        let command = match &self.command {
            CliCommand::Single(a)
            | CliCommand::Ensemble(a)
            | CliCommand::Sweep(a)
            | CliCommand::Mc(a) => {
                for (key, value) in [
                    ("geometry", &a.geometry),
                    ("beta", &a.beta),
                    ("delta", &a.delta),
                    ("n", &a.n),
                    ("drive_re", &a.drive_re),
                    ("drive_im", &a.drive_im),
                    ("ratio", &a.ratio),
                    ("observable", &a.observable),
                    ("theta", &a.theta),
                    ("tau_max", &a.tau_max),
                    ("omega_max", &a.omega_max),
                    ("samples", &a.samples),
                ] {
                    raw.set_flag(key, value.as_deref());
                }
                match self.command {
                    CliCommand::Single(_) => Command::Single,
                    CliCommand::Ensemble(_) => Command::Ensemble,
                    CliCommand::Sweep(_) => Command::Sweep,
                    _ => Command::Mc,
                }
            }
            CliCommand::Figure(f) => {
                raw.set_flag("figure", f.id.as_deref());
                Command::Figure
            }
        };
        Ok(raw.resolve(command)?)
    }
}

/// Output tables of a run; figures give one named table per panel.
pub fn execute(cfg: &RunConfig) -> Result<Vec<(String, Table)>, CliError> {
    let one = |t: Table| vec![(cfg.command.name().to_string(), t)];
    Ok(match cfg.command {
        Command::Single | Command::Ensemble => one(run::evaluate(cfg)?),
        Command::Sweep => one(run::sweep(cfg)?),
        Command::Mc => one(run::monte_carlo(cfg)?),
        Command::Figure => figures::render(cfg)?,
    })
}

fn write_file(path: &Path, table: &Table, cfg: &RunConfig) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut buf = Vec::new();
    table.write(cfg.format, &mut buf).map_err(io_err)?;
    fs::write(path, buf).map_err(io_err)
}

pub fn write_outputs(
    cfg: &RunConfig,
    tables: &[(String, Table)],
    out: Option<&Path>,
) -> Result<Vec<PathBuf>, CliError> {
    if cfg.command == Command::Figure {
        let dir = out.unwrap_or(Path::new("."));
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let mut written = Vec::new();
        for (name, table) in tables {
            let path = dir.join(format!("{name}.{}", cfg.format.extension()));
            write_file(&path, table, cfg)?;
            written.push(path);
        }
        return Ok(written);
    }
    let (_, table) = &tables[0];
    match out {
        Some(path) => {
            write_file(path, table, cfg)?;
            Ok(vec![path.to_path_buf()])
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table
                .write(cfg.format, &mut lock)
                .and_then(|_| lock.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })?;
            Ok(Vec::new())
        }
    }
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = cli.resolve().and_then(|cfg| {
        execute(&cfg).and_then(|tables| write_outputs(&cfg, &tables, cli.out.as_deref()))
    });
    match result {
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
