//! `gitgraph`: count, sample, enumerate and tune Git feature-branch graphs.

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exit status 2: the request itself is invalid.
const EXIT_INVALID: u8 = 2;
/// Exit status 1: two computations that must agree did not.
const EXIT_INTERNAL: u8 = 1;

/// Environment variable consulted for the seed when `--seed` is absent.
pub const SEED_ENV: &str = "GITGRAPH_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "gitgraph",
    version,
    about = "Count and randomly generate Git feature-branch graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print exact counts g(n, k), or the total over k when --k is omitted.
    Count(CountArgs),
    /// Draw random graphs.
    Sample(SampleArgs),
    /// List every graph with n vertices, k of them on the main branch.
    Enumerate(EnumerateArgs),
    /// Boltzmann parameters for a target main-branch ratio and size.
    Tune(TuneArgs),
    /// Exact distribution of k (or of f at fixed k) as CSV.
    Stats(StatsArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("route").args(["closed", "recurrence", "both"])))]
struct CountArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Stirling-number closed form.
    #[arg(long)]
    closed: bool,
    /// Recurrence on the last main vertex (default).
    #[arg(long)]
    recurrence: bool,
    /// Both routes; fails with status 1 if they disagree.
    #[arg(long)]
    both: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Rejection,
    Exact,
    Boltzmann,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Edges,
    Gitscript,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Number of free main vertices (exact method only).
    #[arg(long)]
    f: Option<usize>,
    /// Target main-branch ratio in (0, 1/2) (boltzmann only).
    #[arg(long)]
    alpha: Option<f64>,
    /// Target expected size (boltzmann only).
    #[arg(long)]
    size: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Worker threads. Output does not depend on this.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Boltzmann only: resample until the size is at least this.
    #[arg(long)]
    min_size: Option<usize>,
    /// Boltzmann only: resample until the size is at most this.
    #[arg(long)]
    max_size: Option<usize>,
    /// Boltzmann only: give up after this many draws per sample.
    #[arg(long, default_value_t = 10_000_000)]
    max_attempts: u64,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct TuneArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    size: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Dist {
    K,
    F,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long, value_enum)]
    dist: Dist,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Labeled-main weight u (decimal, read exactly); uniform when omitted.
    #[arg(long)]
    u: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Internal(String),
}

impl CliError {
    fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(a) => commands::count(&a),
        Command::Sample(a) => commands::sample(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Tune(a) => commands::tune(&a),
        Command::Stats(a) => commands::stats(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Invalid(msg)) => {
            eprintln!("gitgraph: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("gitgraph: internal inconsistency: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
