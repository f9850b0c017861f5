use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "groupie", version, about = "Groupie vertices in random graphs")]
pub struct Cli {
    /// Worker threads for trial execution (default: all cores). Results do
    /// not depend on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a graph and print it as an edge list.
    Generate(GenerateArgs),
    /// Classify the vertices of a graph read from an edge-list file.
    Analyze(AnalyzeArgs),
    /// Estimate the groupie proportion over many sampled graphs.
    Simulate(SimulateArgs),
    /// Conditional moments of the single-vertex and pair statistics.
    #[command(subcommand)]
    Moments(MomentsCommand),
    /// Limiting groupie proportions.
    #[command(subcommand)]
    Limit(LimitCommand),
    /// Run a simulation per size and tabulate the deviation from the limit.
    Sweep(SweepArgs),
    /// Run the exhaustive verification suites on small graphs.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Gnp,
    Bipartite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Printed,
    Exact,
    Both,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Vertex count of B(n, p).
    #[arg(long)]
    pub n: Option<usize>,
    /// First part size of B(n1, n2, p).
    #[arg(long)]
    pub n1: Option<usize>,
    /// Second part size of B(n1, n2, p).
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub trials: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Include every per-trial proportion in the output.
    #[arg(long)]
    pub keep_trials: bool,
}

#[derive(Debug, Subcommand)]
pub enum MomentsCommand {
    /// Moments of S given the degree i of one vertex.
    Single {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
    },
    /// Moments of (B1, B2) given the partition sizes around an adjacent pair.
    Pair {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i1: usize,
        #[arg(long)]
        i2: usize,
        #[arg(long)]
        i3: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
    },
}

#[derive(Debug, Subcommand)]
pub enum LimitCommand {
    /// Phi(1), the limit in B(n, p).
    Gnp,
    /// max(1, alpha) / (1 + alpha) for unbalanced parts.
    Bipartite {
        #[arg(long)]
        alpha: f64,
    },
    /// Limit for parts differing by a fixed c.
    Balanced {
        #[arg(long)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Comma-separated sizes: n for gnp, n2 for bipartite.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Bipartite sweeps: n1 = round(alpha * n2).
    #[arg(long, conflicts_with = "c")]
    pub alpha: Option<f64>,
    /// Bipartite sweeps: n1 = n2 + c.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<i64>,
    /// CSV output file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest vertex count to enumerate (at most 6).
    #[arg(long, default_value_t = 5)]
    pub max_n: usize,
    /// Seed for the randomized parts of the suites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
