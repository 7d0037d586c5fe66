//! Command-line frontend: tables, method cross-validation, and CSV data
//! for the level-density figure.
//!
//! Exit codes: 0 success, 2 bad input, 3 numerical failure, 4 I/O error.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, CommandOutput};

#[derive(Parser)]
#[command(
    name = "levden",
    version,
    about = "Level density of a free Fermi gas: exact counts, saddle point, asymptotics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the excitation energy and emit every density column of the
    /// level-density figure (exact counts require --nu 1)
    Figure(FigureArgs),
    /// Restricted and unrestricted partition counts with their asymptotics
    Partitions(PartitionsArgs),
    /// Exact configuration count of an integer power-law spectrum
    Exact(ExactArgs),
    /// Solve the two-constraint saddle point at one energy
    Saddle(SaddleArgs),
    /// Closed-form degenerate/classical quantities over an excitation sweep
    Asymptotic(AsymptoticArgs),
    /// Evaluate the polylogarithm by every applicable route
    Polylog(PolylogArgs),
}

/// Variable convention for the fluctuation prefactor 1/(2 pi sqrt(D)).
#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Prefactor {
    /// no prefactor (bare exponential of the entropy)
    None,
    /// determinant in (beta, mu) variables
    BetaMu,
    /// determinant in (beta, beta*mu) variables
    BetaAlpha,
    /// the figure's high-temperature convention (equals beta-alpha for the
    /// saddle column, and D = E^2 in the classical column)
    Fig1,
}

#[derive(Args)]
pub struct SweepArgs {
    /// first excitation energy of the sweep
    #[arg(long, default_value_t = 1)]
    pub q_min: u64,
    /// last excitation energy of the sweep (inclusive)
    #[arg(long, default_value_t = 30)]
    pub q_max: u64,
    /// stride through the sweep
    #[arg(long, default_value_t = 1)]
    pub q_step: u64,
}

#[derive(Args)]
pub struct OutputArgs {
    /// write here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json; defaults to an aligned text table on stdout, csv when
    /// --out is given
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct FigureArgs {
    /// power-law exponent of the smooth single-particle density
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    /// particle number
    #[arg(long, default_value_t = 5)]
    pub particles: usize,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// fluctuation-prefactor convention for ln_mb and ln_saddle
    #[arg(long, value_enum, default_value_t = Prefactor::Fig1)]
    pub prefactor: Prefactor,
    /// relative residual target of the saddle solver
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct PartitionsArgs {
    /// maximum number of parts (the particle number)
    #[arg(long)]
    pub particles: usize,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct ExactArgs {
    /// 1/k for the integer spectrum of k-th powers
    #[arg(long)]
    pub nu: f64,
    /// particle number
    #[arg(long)]
    pub particles: usize,
    /// excitation energy above the ground state
    #[arg(long)]
    pub q: Option<u64>,
    /// raw total energy (alternative to --q)
    #[arg(long)]
    pub energy: Option<u64>,
    /// fermi or bose
    #[arg(long, default_value = "fermi")]
    pub stats: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct SaddleArgs {
    #[arg(long)]
    pub nu: f64,
    #[arg(long)]
    pub particles: f64,
    /// raw total energy
    #[arg(long)]
    pub energy: Option<f64>,
    /// excitation energy above the smooth ground state (alternative)
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, value_enum, default_value_t = Prefactor::BetaAlpha)]
    pub prefactor: Prefactor,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct AsymptoticArgs {
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long)]
    pub particles: f64,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct PolylogArgs {
    /// polylogarithm order
    #[arg(long)]
    pub nu: f64,
    /// evaluation point: the argument is -e^a
    #[arg(long)]
    pub a: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn emit(out: &OutputArgs, result: &CommandOutput) -> Result<(), CliError> {
    let format = match (out.format, &out.out) {
        (Some(f), _) => Some(f),
        (None, Some(_)) => Some(Format::Csv),
        (None, None) => None,
    };
    match &out.out {
        Some(path) => {
            let file = File::create(path)?;
            write_formatted(&result.table, format, file)?;
        }
        None => {
            let stdout = io::stdout().lock();
            write_formatted(&result.table, format, stdout)?;
        }
    }
    Ok(())
}

fn write_formatted<W: Write>(
    table: &output::Table,
    format: Option<Format>,
    w: W,
) -> io::Result<()> {
    match format {
        Some(Format::Csv) => table.write_csv(w),
        Some(Format::Json) => table.write_json(w),
        None => table.write_aligned(w),
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let (result, out) = match &cli.command {
        Command::Figure(a) => (commands::run_figure(a)?, &a.output),
        Command::Partitions(a) => (commands::run_partitions(a)?, &a.output),
        Command::Exact(a) => (commands::run_exact(a)?, &a.output),
        Command::Saddle(a) => (commands::run_saddle(a)?, &a.output),
        Command::Asymptotic(a) => (commands::run_asymptotic(a)?, &a.output),
        Command::Polylog(a) => (commands::run_polylog(a)?, &a.output),
    };
    emit(out, &result)?;
    Ok(result.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
