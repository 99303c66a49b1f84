use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sparse_galois_cli::{
    analyze, connectivity, mixed_volume, monodromy, render, CliError, ConnectivityDocument, Format, Options,
    Report, TupleDocument,
};

#[derive(Parser)]
#[command(name = "sparse-galois", version, about = "Galois groups of sparse polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Maximum number of monodromy loops.
    #[arg(long, default_value_t = 400, global = true)]
    budget: usize,
    /// Scaled residual required of tracked end points.
    #[arg(long, default_value_t = 1e-12, global = true)]
    newton_tol: f64,
    /// Log-distance tolerance for matching end points to roots.
    #[arg(long, default_value_t = 1e-4, global = true)]
    match_tol: f64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact combinatorial analysis and verdict.
    Analyze { path: PathBuf },
    /// Numerical monodromy group and solution lattice (n <= 2, at most 20 roots).
    Monodromy { path: PathBuf },
    /// Mixed volume of the convex hulls.
    MixedVolume { path: PathBuf },
    /// Inductive connectivity check on an abelian presentation.
    Connectivity { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let opts = Options { seed: cli.seed, budget: cli.budget, newton_tol: cli.newton_tol, match_tol: cli.match_tol };
    match &cli.command {
        Cmd::Analyze { path } => analyze(&TupleDocument::parse(&read(path)?)?, &opts),
        Cmd::Monodromy { path } => monodromy(&TupleDocument::parse(&read(path)?)?, &opts),
        Cmd::MixedVolume { path } => mixed_volume(&TupleDocument::parse(&read(path)?)?, &opts),
        Cmd::Connectivity { path } => connectivity(&ConnectivityDocument::parse(&read(path)?)?, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", render(&report, format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
