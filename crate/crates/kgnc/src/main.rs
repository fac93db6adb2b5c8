//! Thin CLI over the batch pipeline: flags mirror the config-file keys,
//! `--config` loads a file first, flags win. Exit codes: 0 success,
//! 1 config error, 2 I/O error, 3 internal numeric failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use kgnc::report::{build_config, emit, run_spectrum, ConfigOverrides};

#[derive(Parser, Debug)]
#[command(
    name = "kgnc",
    version,
    about = "Relativistic Coulomb bound-state spectrum with noncommutative level splitting"
)]
struct Cli {
    /// Flat `key = value` config file, loaded before any flags.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Rest mass M (natural units).
    #[arg(long)]
    mass: Option<f64>,

    /// Dimensionless Coulomb coupling Zα.
    #[arg(long)]
    z_alpha: Option<f64>,

    /// Noncommutativity parameter θ (z-aligned, area units).
    #[arg(long)]
    theta: Option<f64>,

    /// Formula mode: paper | rederived.
    #[arg(long)]
    mode: Option<String>,

    /// Largest principal quantum number.
    #[arg(long)]
    n_max: Option<u32>,

    /// Restrict the batch to one orbital quantum number.
    #[arg(long)]
    ell: Option<u32>,

    /// Comma-separated subset of paper,matrix,oracle.
    #[arg(long)]
    routes: Option<String>,

    /// Radial box size for the finite-difference oracle (auto when unset).
    #[arg(long)]
    grid_rmax: Option<f64>,

    /// Interior grid points for the finite-difference oracle.
    #[arg(long)]
    grid_points: Option<usize>,

    /// Fixed-point tolerance of the self-consistent oracle.
    #[arg(long)]
    tol: Option<f64>,

    /// Output format: csv | json | svg-lines.
    #[arg(long)]
    format: Option<String>,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> kgnc::Result<()> {
    let file_body = match &cli.config {
        Some(path) => Some(
            std::fs::read_to_string(path).map_err(|source| kgnc::Error::Io {
                path: path.clone(),
                source,
            })?,
        ),
        None => None,
    };
    let overrides = ConfigOverrides {
        mass: cli.mass,
        z_alpha: cli.z_alpha,
        theta: cli.theta,
        mode: cli.mode,
        n_max: cli.n_max,
        ell: cli.ell,
        routes: cli.routes,
        grid_rmax: cli.grid_rmax,
        grid_points: cli.grid_points,
        tol: cli.tol,
        format: cli.format,
        out: cli.out,
    };
    let config = build_config(file_body.as_deref(), &overrides)?;
    let result = run_spectrum(&config)?;
    emit(&result)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("kgnc: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
