//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::params::{GenSpec, Preset};

#[derive(Parser, Debug)]
#[command(name = "minorvc", version, about = "Distance oracles, eccentricities and VC-dimension tools for planar graphs")]
pub struct Cli {
    /// Worker threads for batch commands (vcdim, bench). Results do not
    /// depend on this value.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eccentricities, diameter and (undirected) Wiener index as JSON.
    Stats(StatsArgs),
    /// Build an oracle and write it to a file.
    OracleBuild(OracleBuildArgs),
    /// Answer distance queries from a saved oracle.
    OracleQuery(OracleQueryArgs),
    /// VC dimension of a set system, one JSON line per instance.
    Vcdim(VcdimArgs),
    /// Build and verify the shortest-path-tree shattering gadget.
    Lowerbound(LowerboundArgs),
    /// Oracle scaling sweep as CSV.
    Bench(BenchArgs),
    /// Write a generated graph in the text format.
    Gen(GenArgs),
}

/// Exactly one of `--input` or `--gen`.
#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Graph file in the text format.
    #[arg(long, required_unless_present = "gen", conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Generator spec: grid:WxH, path:N, cycle:N, dcycle:N, tree:N, planar:N,
    /// planar-oriented:N, planar-strong:N, gadget:R.
    #[arg(long)]
    pub gen: Option<GenSpec>,
    /// Seed for random generators.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct DivisionArgs {
    /// Cluster size; overrides --preset.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: Option<u64>,
    /// Rule for r as a function of n and h.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Assumed excluded-minor size (5 for planar inputs).
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(3..))]
    pub h: u32,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub division: DivisionArgs,
    /// Cross-check against all-pairs BFS (n ≤ 5000).
    #[arg(long)]
    pub brute: bool,
    /// Also write the division dump here.
    #[arg(long)]
    pub dump_division: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OracleBuildArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub division: DivisionArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct OracleQueryArgs {
    #[arg(long)]
    pub oracle: PathBuf,
    /// File of `u v` lines.
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    pub pairs: Option<PathBuf>,
    /// Query this many uniformly random pairs instead.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Answers go here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Graph file to verify every answer against with BFS.
    #[arg(long)]
    pub verify: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Distance balls (out-balls on digraphs).
    Balls,
    /// Terminal-difference system against the first terminal.
    LpHat,
    /// Edge sets of shortest-path trees.
    SpTrees,
}

#[derive(Args, Debug)]
pub struct VcdimArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[command(flatten)]
    pub input: InputArgs,
    /// Number of instances, with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Largest set size to search (at most 7).
    #[arg(long, default_value_t = 5)]
    pub cap: usize,
    /// Terminal count for lp-hat; terminals are drawn with the instance seed.
    #[arg(long, default_value_t = 5)]
    pub terminals: usize,
    /// Exit 1 if some instance is not proven to have dimension ≤ K.
    #[arg(long)]
    pub expect_max: Option<usize>,
    /// Exit 1 if some instance has dimension < K.
    #[arg(long)]
    pub expect_min: Option<usize>,
}

#[derive(Args, Debug)]
pub struct LowerboundArgs {
    #[arg(long)]
    pub r: usize,
    /// First anchor constant.
    #[arg(long, default_value_t = 2)]
    pub a0: u64,
    /// Horizontal weight M as a decimal integer (default 10·A_last).
    #[arg(long)]
    pub m: Option<String>,
    /// Write the gadget graph here.
    #[arg(long)]
    pub graph_out: Option<PathBuf>,
    /// Also verify on the unit-weight subdivision (small r only).
    #[arg(long)]
    pub unweighted: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 4000, 16000])]
    pub sizes: Vec<usize>,
    #[command(flatten)]
    pub division: DivisionArgs,
    /// Oriented inputs and the directed oracle.
    #[arg(long)]
    pub directed: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random queries timed per row.
    #[arg(long, default_value_t = 100_000)]
    pub queries: usize,
    /// CSV goes here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub gen: GenSpec,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
