//! Command-line front end: `sweep`, `verify`, `spectrum`, `special-cases`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 I/O error, 4 invalid `z` request.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::closed_forms::{
    classical, is_valid, metric_scalars, singular_band, Branch, MetricChoice, OscillatorParams,
};
use crate::error::Error;
use crate::verification::{low_spectrum, run_suite_with_sector, special_cases};

pub use config::{Format, PartialConfig, RunConfig};
pub use output::SweepRow;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INVALID_Z: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("invalid z: {0}")]
    InvalidZ(String),
    #[error(transparent)]
    Library(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Io(_) => EXIT_IO,
            Self::InvalidZ(_) => EXIT_INVALID_Z,
            Self::Library(_) => EXIT_FAILED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "swanson", version, about = "Metric operators for the Swanson oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ε, η, θ², μ, ν and the classical mass over a z grid
    Sweep(Common),
    /// Run the identity suite over a z grid
    Verify(Common),
    /// Lowest `sector` eigenvalues of h_S(z) against (n+½)Ω
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Compare Θ(z) and h_S(z) with the closed forms at z = 0, ±1
    SpecialCases(Common),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    branch: Option<Branch>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    sector: Option<usize>,
    /// Output path, `-` for standard output
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    format: Option<Format>,
    /// `key=value` file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                PartialConfig::from_text(&text)?
            }
            None => PartialConfig::default(),
        };
        let flags = PartialConfig {
            omega: self.omega,
            alpha: self.alpha,
            beta: self.beta,
            z_min: self.z_min,
            z_max: self.z_max,
            steps: self.steps,
            branch: self.branch,
            dim: self.dim,
            sector: self.sector,
            output_path: self.out,
            format: self.format,
        };
        RunConfig::resolve(flags.over(file))
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_CONFIG
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Sweep(c) => c.resolve().and_then(|cfg| cmd_sweep(&cfg, stdout)),
        Command::Verify(c) => c.resolve().and_then(|cfg| cmd_verify(&cfg, stdout, stderr)),
        Command::Spectrum { z, common } => {
            common.resolve().and_then(|cfg| cmd_spectrum(&cfg, z, stdout))
        }
        Command::SpecialCases(c) => c.resolve().and_then(|cfg| cmd_special_cases(&cfg, stdout)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "swanson: {e}");
            e.exit_code()
        }
    }
}

fn emit(cfg: &RunConfig, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", cfg.output_path));
    if cfg.output_path == "-" {
        stdout.write_all(bytes).map_err(io)
    } else {
        std::fs::write(&cfg.output_path, bytes).map_err(io)
    }
}

/// One row per grid point of ε, η, θ², μ, ν, μν − Ω², the mass `1/μ` and the
/// branch-adjusted band.
pub fn sweep_rows(params: &OscillatorParams, grid: &[f64], branch: Branch) -> Result<Vec<SweepRow>, Error> {
    let band = match singular_band(params) {
        Ok(b) => Some(b.for_branch(branch)),
        Err(Error::HermitianCase) => None,
        Err(e) => return Err(e),
    };
    let om2 = params.big_omega_sq();
    grid.iter()
        .map(|&z| {
            let choice = MetricChoice::new(z, branch)?;
            let mut row = SweepRow {
                z,
                branch,
                valid: is_valid(params, &choice),
                epsilon: None,
                eta: None,
                theta_sq: None,
                mu: None,
                nu: None,
                mu_nu_minus_omega_sq: None,
                mass: None,
                z_minus: band.map(|b| b.0),
                z_plus: band.map(|b| b.1),
            };
            if row.valid {
                let s = metric_scalars(params, &choice)?;
                row.epsilon = Some(s.epsilon);
                row.eta = Some(s.eta);
                row.theta_sq = Some(s.theta_sq);
                row.mu = Some(s.mu);
                row.nu = Some(s.nu);
                row.mu_nu_minus_omega_sq = Some(s.mu * s.nu - om2);
                row.mass = Some(classical(params, &choice, 1.0)?.mass);
            }
            Ok(row)
        })
        .collect()
}

pub fn cmd_sweep(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let rows = sweep_rows(&cfg.params()?, &cfg.grid(), cfg.branch)?;
    emit(cfg, &output::sweep(&rows, cfg.format)?, stdout)?;
    Ok(EXIT_OK)
}

/// Writes the report to `out` and a summary to standard output, or to
/// standard error when the report itself occupies standard output.
pub fn cmd_verify(
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let report = run_suite_with_sector(&cfg.params()?, cfg.dim, cfg.sector, &cfg.grid(), cfg.branch)?;
    emit(cfg, &output::report(&report, cfg.format)?, stdout)?;

    let mut summary = String::new();
    let s = &report.summary;
    summary.push_str(&format!(
        "{} checks: {} passed, {} failed; {} of {} grid points skipped\n",
        s.checks,
        s.passed,
        s.failed,
        s.skipped_points,
        report.grid.len()
    ));
    for w in report.worst_residuals() {
        let mark = if w.residual <= w.tolerance { "ok  " } else { "FAIL" };
        summary.push_str(&format!(
            "  {mark} {:<26} worst {:.3e} at z = {} (tolerance {:.0e})\n",
            w.check, w.residual, w.z, w.tolerance
        ));
    }
    if !report.grid.is_empty() && s.skipped_points == report.grid.len() {
        summary.push_str("warning: every grid point lies in the singular band; no checks were run\n");
    }
    let sink: &mut dyn Write = if cfg.output_path == "-" { stderr } else { stdout };
    sink.write_all(summary.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILED })
}

pub fn cmd_spectrum(cfg: &RunConfig, z: f64, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let params = cfg.params()?;
    let choice = MetricChoice::new(z, cfg.branch).map_err(|e| CliError::InvalidZ(e.to_string()))?;
    let rows = match low_spectrum(&params, &choice, cfg.dim, cfg.sector) {
        Ok(rows) => rows,
        Err(e @ (Error::InvalidRegion { .. } | Error::ExceptionalPoint { .. })) => {
            return Err(CliError::InvalidZ(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    emit(cfg, &output::spectrum(&rows, cfg.format)?, stdout)?;
    Ok(EXIT_OK)
}

pub fn cmd_special_cases(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let rows = special_cases(&cfg.params()?, cfg.dim, cfg.sector, cfg.branch)?;
    emit(cfg, &output::special_cases(&rows, cfg.format)?, stdout)?;
    Ok(EXIT_OK)
}
