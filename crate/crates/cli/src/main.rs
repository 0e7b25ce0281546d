//! `atombell`: Bell-test calculations for pairs of two-level atoms.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use atombell_core::ramsey::ShotPlan;
use clap::{Args, Parser, Subcommand};

use commands::{Family, FreedomArg, ObjectiveArg, Search};
use input::{parse_angle, parse_efficiency, parse_settings, parse_state};
use output::{emit, render, Format, Output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

impl From<atombell_core::Error> for CliError {
    fn from(e: atombell_core::Error) -> Self {
        match e {
            atombell_core::Error::Config(m) => CliError::Usage(m),
            atombell_core::Error::Domain(m) => CliError::Input(m),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "atombell", version, about = "Clauser-Horne tests with spin coherent states of two-level atoms")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; tables default to csv, reports are json only.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Total Γ evaluations for the settings search.
    #[arg(long, default_value_t = 20_000)]
    budget: u64,
    /// Coarse-grid points per angle.
    #[arg(long, default_value_t = 12)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Auto)]
    objective: ObjectiveArg,
    /// Which settings move: pinned keeps a = b = ẑ.
    #[arg(long, value_enum, default_value_t = FreedomArg::Pinned)]
    freedom: FreedomArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SearchArgs {
    fn search(&self) -> Search {
        Search { objective: self.objective, freedom: self.freedom, budget: self.budget, grid: self.grid, seed: self.seed }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Γ along an equal-tilt line, closed form against direct evaluation.
    GammaScan {
        #[arg(long, value_enum)]
        family: Family,
        /// Relative phase of the family (radians; `pi/3` style accepted).
        #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
        varphi: f64,
        /// Azimuth of a′ with b′ at azimuth 0; defaults to the optimal value.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        offset: Option<f64>,
        /// Comma-separated tilts; overrides --grid.
        #[arg(long, value_parser = parse_angle, value_delimiter = ',', allow_hyphen_values = true)]
        thetas: Option<Vec<f64>>,
        /// Number of equal steps over [0, π] when --thetas is absent.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        grid: u64,
    },
    /// Search settings for the largest violation by one state.
    Optimize {
        /// State as inline JSON or a path to a JSON file.
        #[arg(long)]
        state: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Simulate a finite-shot experiment and estimate Γ.
    Sample {
        #[arg(long)]
        state: String,
        /// `optimal`, `zero`, or settings JSON (inline or file).
        #[arg(long, default_value = "optimal")]
        settings: String,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        /// Probability that an atom in |+⟩ is registered as such.
        #[arg(long, default_value = "1", value_parser = parse_efficiency)]
        efficiency: f64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The 16 deterministic local strategies and their Γ.
    Lhv,
    /// Joint and marginal Q functions on a product grid.
    Qmap {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 12)]
        grid: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out: Output = match &cli.command {
        Command::GammaScan { family, varphi, offset, thetas, grid } => {
            let thetas = thetas
                .clone()
                .unwrap_or_else(|| (0..=*grid).map(|k| std::f64::consts::PI * k as f64 / *grid as f64).collect());
            commands::gamma_scan(*family, *varphi, *offset, &thetas)?
        }
        Command::Optimize { state, search } => commands::optimize(&parse_state(state)?, &search.search())?,
        Command::Sample { state, settings, shots, efficiency, search } => {
            let plan = ShotPlan::with_efficiency(*shots, search.seed, *efficiency)?;
            commands::sample(&parse_state(state)?, &parse_settings(settings)?, &plan, &search.search())?
        }
        Command::Lhv => commands::lhv(),
        Command::Qmap { state, grid } => commands::qmap(&parse_state(state)?, *grid)?,
    };
    let format = cli.format.unwrap_or(match out {
        Output::Table { .. } => Format::Csv,
        Output::Report(_) => Format::Json,
    });
    emit(&render(&out, format)?, cli.out.as_deref())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
