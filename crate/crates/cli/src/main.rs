//! `trie-runs`: enumerate runs on tries from the command line.

mod bench;
mod commands;
mod fail;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::fail::Fail;

#[derive(Parser)]
#[command(name = "trie-runs", version, about = "Enumerate maximal repetitions on edge-labeled tries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic trie as an edge list.
    Gen(GenArgs),
    /// Enumerate all runs and write them as JSON.
    Runs(RunsArgs),
    /// Count runs without locating their deep endpoints.
    Count(RunsArgs),
    /// Summary statistics, with optional per-node tables.
    Stats(StatsArgs),
    /// Time the pipeline on generated tries of increasing size.
    Bench(BenchArgs),
    /// Render the trie as a DOT graph.
    ExportDot(DotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Strings,
    Edges,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Leafward,
    Rootward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Random,
    Path,
    FibonacciPath,
    ThueMorsePath,
    Caterpillar,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Input file; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Edges)]
    format: Format,
    /// How string-set input is read: rootward strings are read leaf to root.
    #[arg(long, value_enum, default_value_t = DirectionArg::Rootward)]
    direction: DirectionArg,
}

#[derive(Args, Clone)]
struct GenSpecArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Random)]
    kind: KindArg,
    #[arg(long, default_value_t = 2)]
    alphabet: u32,
    /// Probability of attaching a new node somewhere other than the newest one.
    #[arg(long, default_value_t = 0.3)]
    branching: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Label pattern repeated along a path (path kind only).
    #[arg(long)]
    pattern: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    spec: GenSpecArgs,
    /// Number of real nodes.
    #[arg(long)]
    size: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RunsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Confirm candidates on several threads (capped by TRIE_RUNS_THREADS).
    #[arg(long)]
    parallel: bool,
    /// Also print the statistics summary to standard error.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    parallel: bool,
    /// Write node, sdepth, isa0, isa1 and lcp0 as TSV instead of the summary.
    #[arg(long, conflicts_with = "dump_lyndon")]
    dump_suffixes: bool,
    /// Write NSV and Lyndon prefix lengths for both orders as TSV.
    #[arg(long)]
    dump_lyndon: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    spec: GenSpecArgs,
    /// Comma-separated node counts, ascending.
    #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000])]
    sizes: Vec<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    parallel: bool,
    /// Omit wall-clock columns so the table is reproducible.
    #[arg(long)]
    counts_only: bool,
    /// Threshold file overriding the built-in advisory limits.
    #[arg(long)]
    thresholds: Option<PathBuf>,
}

#[derive(Args)]
struct DotArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Index of a run in `runs` output whose path is highlighted.
    #[arg(long)]
    highlight: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(), Fail> = match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::Runs(a) => commands::runs(&a),
        Command::Count(a) => commands::count(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Bench(a) => bench::run(&a),
        Command::ExportDot(a) => commands::export_dot(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
