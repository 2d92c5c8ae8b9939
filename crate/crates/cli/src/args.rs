use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "mqo",
    version,
    about = "Reset-based quadratic optimization for MIS and max-cut"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random graph and write it in canonical format.
    Gen(GenArgs),
    /// Solve one instance and emit a run record.
    Solve(SolveArgs),
    /// Sweep one parameter over a list of values.
    Sweep(SweepArgs),
    /// Run the oracle-backed verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Er,
    Ba,
    Sbm,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "er")]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    /// Mean degree (ER: p = d/n).
    #[arg(long, conflicts_with = "p")]
    pub d: Option<f64>,
    /// Edge probability (ER).
    #[arg(long)]
    pub p: Option<f64>,
    /// Edges per new vertex (BA).
    #[arg(long)]
    pub m_attach: Option<usize>,
    /// Number of blocks (SBM).
    #[arg(long)]
    pub k: Option<usize>,
    /// Within-block edge probability (SBM).
    #[arg(long)]
    pub p_in: Option<f64>,
    /// Between-block edge probability (SBM).
    #[arg(long)]
    pub p_out: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Mis,
    Maxcut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Laplacian,
    PerturbedLaplacian,
    Adjacency,
    PerturbedBias,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    /// Nearest built-in row by (problem, family, n, mean degree).
    Auto,
    /// Built-in solver defaults only.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Er,
    Sbm,
    Ba,
    Rb,
    Dimacs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    /// Graph file (canonical or DIMACS, detected from the content).
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub graph: Option<PathBuf>,
    /// Generator spec such as `er:1000:100@1`.
    #[arg(long)]
    pub gen: Option<String>,
    /// Wall-clock budget in seconds, excluding graph construction.
    #[arg(long)]
    pub budget_secs: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step size α.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Momentum β in [0, 1); 0 gives plain gradient ascent.
    #[arg(long)]
    pub momentum: Option<f64>,
    /// Fraction of coordinates re-randomized per global reset.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Global-reset rounds per outer loop.
    #[arg(long)]
    pub tgs: Option<usize>,
    /// Perturbation λ for the perturbed max-cut objectives.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Edge penalty γ > 1 for MIS.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Standard deviation of the initialization noise.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Iteration cap per trajectory.
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Trajectories per batch (pooled solver when B or K > 1).
    #[arg(long, default_value_t = 1)]
    pub pool_b: usize,
    /// Solutions retained in the pool.
    #[arg(long, default_value_t = 1)]
    pub pool_k: usize,
    /// Skip the discrete local-search phase.
    #[arg(long)]
    pub no_local_search: bool,
    /// Max-cut objective (default: perturbed-bias).
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveArg>,
    /// Hyperparameter preset; explicit flags override it.
    #[arg(long, value_enum, default_value = "auto")]
    pub preset: PresetArg,
    /// Graph family for preset lookup (inferred from the source by default).
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Stop after this many outer loops.
    #[arg(long)]
    pub max_loops: Option<usize>,
    /// Probe mode: one trajectory from x = c·1, no resets or local search.
    #[arg(long, allow_hyphen_values = true)]
    pub init_constant: Option<f64>,
    /// Output format (solve: json, sweep: csv).
    #[arg(long, value_enum)]
    pub report: Option<ReportArg>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Rho,
    Lambda,
    Momentum,
    Alpha,
    Tgs,
    Gamma,
    LocalSearch,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// Comma-separated values (`on`/`off` for local-search).
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<String>,
    /// Seeds per value; defaults to `--seed`.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u64>,
    /// Concurrent solves.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// One CSV row per value (means over seeds) instead of one per run.
    #[arg(long)]
    pub summary: bool,
    #[command(flatten)]
    pub solve: SolveArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// fixed-points, exact and solver.
    Default,
    FixedPoints,
    Exact,
    Solver,
    Escapability,
    Comparison,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "default")]
    pub suite: Suite,
    /// Largest graph size for exhaustive suites.
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    /// Graph size for the escapability and comparison suites.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Edge probability for the escapability suite.
    #[arg(long, default_value_t = 0.66)]
    pub p: f64,
    /// Mean degree for the comparison suite.
    #[arg(long, default_value_t = 50.0)]
    pub d: f64,
    /// Graphs per suite.
    #[arg(long, default_value_t = 10)]
    pub graphs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
