//! Command-line front end for the driven two-atom simulator.
//!
//! Exit codes: 0 success, 2 usage error (bad flags, conflicting parameter
//! sources, malformed config), 3 runtime failure (integration, I/O), with
//! diagnostics on stderr.

mod config;
mod modes;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunArgs;
use dicke_pair::PairGeometry;
use modes::SweepAxis;

/// Errors carrying their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation; exits with code 2.
    Usage(String),
    /// Runtime failure (integration, I/O); exits with code 3.
    Run(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn run(err: impl ToString) -> Self {
        CliError::Run(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "dicke-pair",
    version,
    about = "Dynamics and entanglement of a laser-driven, dipole-dipole coupled atom pair",
    after_help = "All rates are in units of the single-atom decay rate; time is gamma*t.\n\
                  Relative --out paths land in $DICKE_PAIR_OUT_DIR when it is set."
)]
struct Cli {
    #[command(subcommand)]
    mode: Mode,
}

#[derive(Subcommand)]
enum Mode {
    /// Collective parameters (dipole-dipole shift, collective decay) from geometry
    Geom(GeomArgs),
    /// Dissipation-free time series: concurrences, populations, coherences
    Pure(RunArgs),
    /// Master-equation time series with entanglement measures
    Master(RunArgs),
    /// Closed-form and directly solved steady state with the stationary concurrence
    Steady(RunArgs),
    /// Stationary concurrence over a one- or two-parameter grid
    Sweep(SweepCmd),
    /// Bell-state fidelity along the dissipative trajectory
    Fidelity(RunArgs),
}

#[derive(Args)]
struct GeomArgs {
    /// Interatomic separation r12/λ
    #[arg(long)]
    r12: Option<f64>,
    /// Dipole angle θ in radians (default π/2)
    #[arg(long)]
    theta: Option<f64>,
    /// Config file with `key = value` lines; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    run: RunArgs,
    /// Swept axis as param=start:stop:points (repeat for a 2D grid)
    #[arg(long = "sweep")]
    sweeps: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.mode {
        Mode::Geom(args) => {
            let mut r12 = args.r12;
            let mut theta = args.theta;
            if let Some(path) = &args.config {
                let file = config::parse_config_file(path)?;
                for (key, raw) in &file {
                    let parsed: f64 = raw.parse().map_err(|_| {
                        CliError::usage(format!("config key {key}: invalid number {raw:?}"))
                    })?;
                    match key.as_str() {
                        "r12" => r12 = r12.or(Some(parsed)),
                        "theta" => theta = theta.or(Some(parsed)),
                        _ => {} // geom ignores dynamics keys in shared configs
                    }
                }
            }
            let r12 = r12.ok_or_else(|| CliError::usage("missing --r12"))?;
            let geom = PairGeometry::new(r12, theta.unwrap_or(std::f64::consts::FRAC_PI_2))
                .map_err(CliError::run)?;
            modes::run_geom(geom)
        }
        Mode::Pure(args) => modes::run_pure(&args.resolve()?),
        Mode::Master(args) => modes::run_master(&args.resolve()?),
        Mode::Steady(args) => modes::run_steady(&args.resolve()?),
        Mode::Fidelity(args) => modes::run_fidelity(&args.resolve()?),
        Mode::Sweep(cmd) => {
            let settings = cmd.run.resolve()?;
            let axes: Result<Vec<SweepAxis>, CliError> =
                cmd.sweeps.iter().map(|s| SweepAxis::parse(s)).collect();
            modes::run_sweep(&settings, &axes?)
        }
    }
}
