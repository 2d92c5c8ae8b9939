//! The mQO solvers.
//!
//! Every outer loop:
//!
//! 1. starts fresh trajectories from a noisy degree-based initialization,
//! 2. runs `T_gs` global-reset rounds: encode a retained solution, zero a
//!    uniformly random `⌊ρn⌋`-subset of its coordinates, re-run the ascent,
//!    and keep the result only if it beats what is already retained,
//! 3. polishes the retained solutions with discrete local search.
//!
//! The sequential solvers ([`solve_mis`], [`solve_maxcut`]) are the pooled
//! solver with one trajectory per round and a pool of one.

mod engine;
pub mod presets;
pub mod toy;

pub use engine::PoolStats;
pub use presets::{GraphFamily, Preset};
pub use toy::{toy_reset_experiment, ToyRecord};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::{ObjectiveSpec, Problem, RelaxedState, Solution};
use crate::pga::{OptimizerConfig, StopReason};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

pub const DEFAULT_SIGMA: f64 = 0.15;

/// Top-K pool shape. `batch = keep = 1` is the sequential solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolConfig {
    /// Trajectories per round (B).
    pub batch: usize,
    /// Retained solutions (K).
    pub keep: usize,
}

impl PoolConfig {
    pub const SEQUENTIAL: PoolConfig = PoolConfig { batch: 1, keep: 1 };
    pub const DEFAULT_POOLED: PoolConfig = PoolConfig { batch: 8, keep: 8 };
}

impl Default for PoolConfig {
    fn default() -> Self {
        Self::SEQUENTIAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitMode {
    /// `Π(d_base + ε)` with `ε ~ N(0, σ²I)`.
    #[default]
    Degree,
    /// `x = c·1`, no noise.
    Constant { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub objective: ObjectiveSpec,
    pub optimizer: OptimizerConfig,
    /// Reset fraction ρ ∈ [0, 1).
    pub rho: f64,
    /// Global-reset rounds per outer loop.
    pub t_gs: usize,
    /// Initialization noise standard deviation.
    pub sigma: f64,
    /// Wall-clock budget in seconds, measured from the start of the solve.
    pub time_budget: f64,
    pub seed: u64,
    pub local_search: bool,
    pub pool: PoolConfig,
    /// Optional cap on outer loops (for reproducible, clock-independent runs).
    pub max_loops: Option<usize>,
    pub init: InitMode,
}

impl SolverConfig {
    pub fn mis() -> Self {
        Self {
            objective: ObjectiveSpec::mis(),
            optimizer: OptimizerConfig::for_problem(Problem::Mis),
            rho: 0.6,
            t_gs: 60,
            sigma: DEFAULT_SIGMA,
            time_budget: 60.0,
            seed: 0,
            local_search: true,
            pool: PoolConfig::SEQUENTIAL,
            max_loops: None,
            init: InitMode::Degree,
        }
    }

    pub fn maxcut() -> Self {
        Self {
            objective: ObjectiveSpec::default(),
            optimizer: OptimizerConfig::for_problem(Problem::MaxCut),
            rho: 0.8,
            t_gs: 90,
            ..Self::mis()
        }
    }

    pub fn for_problem(problem: Problem) -> Self {
        match problem {
            Problem::Mis => Self::mis(),
            Problem::MaxCut => Self::maxcut(),
        }
    }

    pub fn problem(&self) -> Problem {
        self.objective.problem()
    }

    /// Overwrites α, momentum, ρ and `T_gs` with a preset row.
    pub fn apply_preset(&mut self, preset: &Preset) {
        self.optimizer.alpha = preset.alpha;
        self.optimizer.momentum = preset.momentum;
        self.rho = preset.rho;
        self.t_gs = preset.t_gs;
    }

    pub fn validate(&self) -> Result<()> {
        self.objective.validate()?;
        self.optimizer.validate()?;
        if !(0.0..1.0).contains(&self.rho) {
            return Err(Error::InvalidParameter(format!(
                "rho = {} must lie in [0, 1)",
                self.rho
            )));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma = {} must be >= 0", self.sigma)));
        }
        if !(self.time_budget > 0.0 && self.time_budget.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "time budget {} must be a positive number of seconds",
                self.time_budget
            )));
        }
        if self.pool.batch == 0 || self.pool.keep == 0 {
            return Err(Error::InvalidParameter("pool batch and keep must be >= 1".into()));
        }
        if self.max_loops == Some(0) {
            return Err(Error::InvalidParameter("max_loops must be >= 1".into()));
        }
        if let InitMode::Constant { value } = self.init {
            let d = self.problem().domain();
            if !(value >= d.lower() && value <= d.upper()) {
                return Err(Error::InvalidParameter(format!(
                    "constant init {value} lies outside the {} domain",
                    d.name()
                )));
            }
        }
        Ok(())
    }
}

/// Global-best scores at the end of each phase of one outer loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopPhases {
    pub after_gradient: u64,
    pub after_reset_loop: u64,
    pub after_local_search: u64,
}

/// Improvements of the global best attributed to each phase, summed over
/// all outer loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PhaseGains {
    pub gradient: u64,
    pub reset: u64,
    pub local_search: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StopCounts {
    pub converged: u64,
    pub checker_accepted: u64,
    pub iter_cap: u64,
    pub deadline: u64,
}

impl StopCounts {
    pub fn record(&mut self, stop: StopReason) {
        match stop {
            StopReason::Converged => self.converged += 1,
            StopReason::CheckerAccepted => self.checker_accepted += 1,
            StopReason::IterCap => self.iter_cap += 1,
            StopReason::Deadline => self.deadline += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.converged + self.checker_accepted + self.iter_cap + self.deadline
    }
}

/// At most this many per-loop records are kept in a report.
pub const MAX_LOOP_RECORDS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: Problem,
    /// Best solution in the input graph's indexing; `None` if the budget ran
    /// out before the first trajectory finished.
    pub best: Option<Solution>,
    pub best_score: u64,
    /// Per-loop phase scores (first [`MAX_LOOP_RECORDS`] loops).
    pub loops: Vec<LoopPhases>,
    pub phase_gains: PhaseGains,
    pub outer_loops: u64,
    pub resets_accepted: u64,
    pub resets_rejected: u64,
    pub trajectories: u64,
    pub iterations: u64,
    pub stops: StopCounts,
    pub pool: PoolStats,
    /// Vertices removed as isolated before solving.
    pub isolated: usize,
    pub elapsed_secs: f64,
    pub config: SolverConfig,
    pub seed: u64,
}

impl RunReport {
    /// Checks the internal consistency of the report against `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        if let Some(best) = &self.best {
            best.verify(g)?;
            if best.score() != self.best_score {
                return fail(format!(
                    "best score {} != solution score {}",
                    self.best_score,
                    best.score()
                ));
            }
        } else if self.best_score != 0 {
            return fail("empty report carries a nonzero score".into());
        }
        let mut prev = 0;
        for (i, l) in self.loops.iter().enumerate() {
            if !(prev <= l.after_gradient
                && l.after_gradient <= l.after_reset_loop
                && l.after_reset_loop <= l.after_local_search)
            {
                return fail(format!("phase scores decrease in loop {i}: {l:?}"));
            }
            prev = l.after_local_search;
        }
        if let Some(last) = self.loops.last() {
            if self.loops.len() as u64 == self.outer_loops && last.after_local_search != self.best_score {
                return fail("best score differs from the last loop's final phase".into());
            }
        }
        Ok(())
    }
}

/// Degree-based initialization `Π(d_base + ε)`, `ε ~ N(0, σ²I)`.
///
/// MIS uses `d_base,v = 1 − d(v)/Δ`, max-cut `2(1 − d(v)/Δ) − 1`.
pub fn init_state<R: Rng + ?Sized>(problem: Problem, g: &Graph, sigma: f64, rng: &mut R) -> Result<RelaxedState> {
    let delta = g.max_degree();
    if delta == 0 {
        return Err(Error::EmptyGraph);
    }
    let noise = if sigma > 0.0 {
        Some(Normal::new(0.0, sigma).map_err(|e| Error::InvalidParameter(e.to_string()))?)
    } else {
        None
    };
    let x = g
        .degrees()
        .map(|d| {
            let base = 1.0 - d as f64 / delta as f64;
            let base = match problem {
                Problem::Mis => base,
                Problem::MaxCut => 2.0 * base - 1.0,
            };
            base + noise.as_ref().map_or(0.0, |n| n.sample(rng))
        })
        .collect();
    Ok(RelaxedState::projected(x, problem.domain()))
}

/// A uniformly random vertex subset of size `⌊ρn⌋`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResetDraw {
    pub indices: Vec<usize>,
}

impl ResetDraw {
    pub fn reset_size(n: usize, rho: f64) -> usize {
        ((rho * n as f64).floor() as usize).min(n)
    }

    pub fn draw<R: Rng + ?Sized>(n: usize, rho: f64, rng: &mut R) -> Self {
        let k = Self::reset_size(n, rho);
        let mut indices = rand::seq::index::sample(rng, n, k).into_vec();
        indices.sort_unstable();
        Self { indices }
    }
}

/// Zeros a fresh [`ResetDraw`] of `state`'s coordinates.
pub fn global_reset<R: Rng + ?Sized>(state: &RelaxedState, rho: f64, rng: &mut R) -> (RelaxedState, ResetDraw) {
    let draw = ResetDraw::draw(state.len(), rho, rng);
    if draw.indices.is_empty() && rho > 0.0 {
        log::debug!("reset fraction {rho} zeroes no coordinate of an {}-vector", state.len());
    }
    let mut out = state.clone();
    apply_reset(&mut out.x, &draw);
    (out, draw)
}

pub(crate) fn apply_reset(x: &mut [f64], draw: &ResetDraw) {
    draw.indices.iter().for_each(|&v| x[v] = 0.0);
}

fn expect_problem(cfg: &SolverConfig, problem: Problem) -> Result<()> {
    if cfg.problem() != problem {
        return Err(Error::InvalidParameter(format!(
            "objective {} does not solve {}",
            cfg.objective.name(),
            problem.name()
        )));
    }
    Ok(())
}

/// mQO for maximum independent set.
pub fn solve_mis(g: &Graph, cfg: &SolverConfig) -> Result<RunReport> {
    expect_problem(cfg, Problem::Mis)?;
    solve_pooled(
        g,
        &SolverConfig {
            pool: PoolConfig::SEQUENTIAL,
            ..cfg.clone()
        },
    )
}

/// mQO for max-cut. Any max-cut objective is accepted; cut values are always
/// scored discretely.
pub fn solve_maxcut(g: &Graph, cfg: &SolverConfig) -> Result<RunReport> {
    expect_problem(cfg, Problem::MaxCut)?;
    solve_pooled(
        g,
        &SolverConfig {
            pool: PoolConfig::SEQUENTIAL,
            ..cfg.clone()
        },
    )
}

/// Multi-trajectory mQO with a top-K pool; the problem follows from the
/// objective.
pub fn solve_pooled(g: &Graph, cfg: &SolverConfig) -> Result<RunReport> {
    cfg.validate()?;
    engine::run(g, cfg)
}
