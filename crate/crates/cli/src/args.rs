use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wabl", version, about = "Level-based weighted averaging (WABL) of fuzzy numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the WABL value of every record
    Compute(RunArgs),
    /// Rank records by descending WABL value
    Rank(RunArgs),
    /// Cross-check closed forms against summation and quadrature
    Verify(RunArgs),
    /// Print the pattern weight table for --k and --t
    Weights(WeightArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Args)]
pub struct LevelArgs {
    /// Pattern exponent k of the level weights i^k
    #[arg(long)]
    pub k: Option<u32>,
    /// Number of equal level sub-intervals (levels i/t, i = 0..t)
    #[arg(long)]
    pub t: Option<u32>,
    /// JSON file of [alpha, mass] pairs
    #[arg(long, value_name = "FILE")]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Input document (JSON)
    pub input: PathBuf,
    /// Optimism coefficient in [0, 1]
    #[arg(long = "c", allow_hyphen_values = true)]
    pub c: f64,
    #[command(flatten)]
    pub levels: LevelArgs,
    /// Sum over levels even when a closed form exists
    #[arg(long)]
    pub force_summation: bool,
    /// Print per-level terms
    #[arg(long)]
    pub verbose: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub levels: LevelArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}
