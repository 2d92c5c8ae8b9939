use super::{
    apply_reset, init_state, InitMode, LoopPhases, PhaseGains, ResetDraw, RunReport, SolverConfig, StopCounts,
    MAX_LOOP_RECORDS,
};
use crate::error::{Error, Result};
use crate::graph::{strip_isolated, Graph, StrippedGraph};
use crate::localsearch::{maximalize, one_two_flip, one_two_swap};
use crate::objectives::{cut_value, is_independent_indicator, threshold, Problem, RelaxedState, Solution};
use crate::pga::{run_trajectory, StopReason, StopRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Environment variable capping the pooled solver's worker threads.
pub const THREADS_ENV: &str = "MQO_THREADS";

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PoolStats {
    pub batch: usize,
    pub keep: usize,
    /// Scores of the retained solutions at the end of the run, best first.
    pub final_scores: Vec<u64>,
    /// Candidates that entered the pool.
    pub insertions: u64,
    /// Candidates discarded as duplicates of a retained solution.
    pub duplicates: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    score: u64,
    bits: Vec<bool>,
}

enum Offer {
    Inserted,
    Duplicate,
    Rejected,
}

// Retained solutions, best first; equal scores keep insertion order.
struct Pool {
    keep: usize,
    entries: Vec<Entry>,
}

impl Pool {
    fn offer(&mut self, e: Entry) -> Offer {
        if self.entries.iter().any(|x| x.score == e.score && x.bits == e.bits) {
            return Offer::Duplicate;
        }
        if self.entries.len() == self.keep {
            if self.entries.last().is_some_and(|w| w.score >= e.score) {
                return Offer::Rejected;
            }
            self.entries.pop();
        }
        let at = self.entries.partition_point(|x| x.score >= e.score);
        self.entries.insert(at, e);
        Offer::Inserted
    }

    fn best_score(&self) -> Option<u64> {
        self.entries.first().map(|e| e.score)
    }

    // Re-sorts (stably) and drops duplicates after in-place local search.
    fn normalize(&mut self) {
        self.entries.sort_by_key(|e| std::cmp::Reverse(e.score));
        let mut kept: Vec<Entry> = Vec::with_capacity(self.entries.len());
        for e in self.entries.drain(..) {
            if !kept.iter().any(|k| k.score == e.score && k.bits == e.bits) {
                kept.push(e);
            }
        }
        self.entries = kept;
    }
}

struct TrajResult {
    entry: Option<Entry>,
    iterations: usize,
    stop: StopReason,
}

struct Ctx<'a> {
    g: &'a Graph,
    cfg: &'a SolverConfig,
    problem: Problem,
    rule: StopRule,
    deadline: Instant,
}

impl Ctx<'_> {
    fn trajectory(&self, init: &RelaxedState) -> Result<TrajResult> {
        let out = run_trajectory(
            &self.cfg.objective,
            self.g,
            init,
            &self.cfg.optimizer,
            self.rule,
            Some(self.deadline),
        )?;
        let mut bits = threshold(self.problem, &out.state.x);
        let entry = match self.problem {
            Problem::Mis => {
                if out.stop == StopReason::CheckerAccepted {
                    Some(bits)
                } else if is_independent_indicator(self.g, &bits) {
                    maximalize(self.g, &mut bits);
                    Some(bits)
                } else {
                    None
                }
            }
            Problem::MaxCut => Some(bits),
        }
        .map(|bits| Entry {
            score: self.score(&bits),
            bits,
        });
        Ok(TrajResult {
            entry,
            iterations: out.iterations,
            stop: out.stop,
        })
    }

    fn score(&self, bits: &[bool]) -> u64 {
        match self.problem {
            Problem::Mis => bits.iter().filter(|&&b| b).count() as u64,
            Problem::MaxCut => cut_value(self.g, bits),
        }
    }

    fn fresh(&self, rng: &mut ChaCha8Rng) -> Result<TrajResult> {
        let init = match self.cfg.init {
            InitMode::Degree => init_state(self.problem, self.g, self.cfg.sigma, rng)?,
            InitMode::Constant { value } => RelaxedState::new(vec![value; self.g.n()], self.problem.domain())?,
        };
        self.trajectory(&init)
    }

    fn reset(&self, pool: &Pool, rng: &mut ChaCha8Rng) -> Result<TrajResult> {
        let base = &pool.entries[rng.random_range(0..pool.entries.len())];
        let mut x = match self.problem {
            Problem::Mis => Solution::from_indicator(&base.bits).encode(self.g.n()),
            Problem::MaxCut => Solution::CutPartition {
                side: base.bits.clone(),
                score: base.score,
            }
            .encode(self.g.n()),
        };
        let draw = ResetDraw::draw(self.g.n(), self.cfg.rho, rng);
        apply_reset(&mut x.x, &draw);
        self.trajectory(&x)
    }

    fn polish(&self, e: &mut Entry) -> Result<()> {
        match self.problem {
            Problem::Mis => {
                one_two_swap(self.g, &mut e.bits)?;
            }
            Problem::MaxCut => {
                one_two_flip(self.g, &mut e.bits);
            }
        }
        e.score = self.score(&e.bits);
        Ok(())
    }
}

fn worker_threads(batch: usize) -> usize {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(rayon::current_num_threads);
    cap.min(batch).max(1)
}

fn run_batch<F>(threads: Option<&rayon::ThreadPool>, slots: &mut [ChaCha8Rng], f: F) -> Result<Vec<TrajResult>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<TrajResult> + Sync,
{
    match threads {
        Some(tp) => tp.install(|| slots.par_iter_mut().map(&f).collect()),
        None => slots.iter_mut().map(f).collect(),
    }
}

struct Tally {
    trajectories: u64,
    iterations: u64,
    stops: StopCounts,
}

impl Tally {
    fn add(&mut self, r: &TrajResult) {
        self.trajectories += 1;
        self.iterations += r.iterations as u64;
        self.stops.record(r.stop);
    }
}

pub(super) fn run(g: &Graph, cfg: &SolverConfig) -> Result<RunReport> {
    let start = Instant::now();
    let deadline = start + Duration::from_secs_f64(cfg.time_budget);
    let problem = cfg.problem();
    let stripped = strip_isolated(g);
    let core = &stripped.core;
    let offset = match problem {
        Problem::Mis => stripped.removed.len() as u64,
        Problem::MaxCut => 0,
    };

    let mut report = RunReport {
        problem,
        best: None,
        best_score: 0,
        loops: Vec::new(),
        phase_gains: PhaseGains::default(),
        outer_loops: 0,
        resets_accepted: 0,
        resets_rejected: 0,
        trajectories: 0,
        iterations: 0,
        stops: StopCounts::default(),
        pool: PoolStats {
            batch: cfg.pool.batch,
            keep: cfg.pool.keep,
            ..PoolStats::default()
        },
        isolated: stripped.removed.len(),
        elapsed_secs: 0.0,
        config: cfg.clone(),
        seed: cfg.seed,
    };

    if core.m() == 0 {
        // nothing to optimize: every vertex is isolated
        let sol = map_back(g, &stripped, problem, &vec![false; core.n()]);
        report.best_score = sol.score();
        report.best = Some(sol);
        report.elapsed_secs = start.elapsed().as_secs_f64();
        return Ok(report);
    }
    if cfg.rho > 0.0 && ResetDraw::reset_size(core.n(), cfg.rho) == 0 {
        log::warn!(
            "reset fraction {} zeroes no coordinate on {} vertices",
            cfg.rho,
            core.n()
        );
    }

    let ctx = Ctx {
        g: core,
        cfg,
        problem,
        rule: StopRule::for_problem(problem),
        deadline,
    };
    let mut slots: Vec<ChaCha8Rng> = (0..cfg.pool.batch)
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b as u64);
            rng
        })
        .collect();
    let threads = if cfg.pool.batch > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(worker_threads(cfg.pool.batch))
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut pool = Pool {
        keep: cfg.pool.keep,
        entries: Vec::new(),
    };
    let mut tally = Tally {
        trajectories: 0,
        iterations: 0,
        stops: StopCounts::default(),
    };
    let mut gains = PhaseGains::default();
    let global = |pool: &Pool| pool.best_score().map_or(0, |s| s + offset);

    while cfg.max_loops.is_none_or(|cap| report.outer_loops < cap as u64) && Instant::now() < deadline {
        let before = global(&pool);

        for r in run_batch(threads.as_ref(), &mut slots, |rng| ctx.fresh(rng))? {
            tally.add(&r);
            if let Some(e) = r.entry {
                record_offer(&mut report.pool, pool.offer(e));
            }
        }
        let after_gradient = global(&pool);

        if !pool.entries.is_empty() {
            for _ in 0..cfg.t_gs {
                if Instant::now() >= deadline {
                    break;
                }
                let results = run_batch(threads.as_ref(), &mut slots, |rng| ctx.reset(&pool, rng))?;
                for r in results {
                    tally.add(&r);
                    let accepted = match r.entry {
                        Some(e) => record_offer(&mut report.pool, pool.offer(e)),
                        None => false,
                    };
                    if accepted {
                        report.resets_accepted += 1;
                    } else {
                        report.resets_rejected += 1;
                    }
                }
            }
        }
        let after_reset_loop = global(&pool);

        if cfg.local_search {
            for e in pool.entries.iter_mut() {
                ctx.polish(e)?;
            }
            pool.normalize();
        }
        let after_local_search = global(&pool);

        gains.gradient += after_gradient - before;
        gains.reset += after_reset_loop - after_gradient;
        gains.local_search += after_local_search - after_reset_loop;
        if report.loops.len() < MAX_LOOP_RECORDS {
            report.loops.push(LoopPhases {
                after_gradient,
                after_reset_loop,
                after_local_search,
            });
        }
        report.outer_loops += 1;
        log::debug!(
            "loop {}: gradient {after_gradient}, reset {after_reset_loop}, local search {after_local_search}",
            report.outer_loops
        );
    }

    report.phase_gains = gains;
    report.trajectories = tally.trajectories;
    report.iterations = tally.iterations;
    report.stops = tally.stops;
    report.pool.final_scores = pool.entries.iter().map(|e| e.score + offset).collect();
    if let Some(best) = pool.entries.first() {
        let sol = map_back(g, &stripped, problem, &best.bits);
        report.best_score = sol.score();
        report.best = Some(sol);
    }
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

fn record_offer(stats: &mut PoolStats, offer: Offer) -> bool {
    match offer {
        Offer::Inserted => {
            stats.insertions += 1;
            true
        }
        Offer::Duplicate => {
            stats.duplicates += 1;
            false
        }
        Offer::Rejected => false,
    }
}

fn map_back(g: &Graph, stripped: &StrippedGraph, problem: Problem, core_bits: &[bool]) -> Solution {
    match problem {
        Problem::Mis => {
            let members = core_bits
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(stripped.core_to_original[i]))
                .chain(stripped.removed.iter().copied())
                .collect();
            Solution::from_members(members)
        }
        Problem::MaxCut => {
            let mut side = vec![false; g.n()];
            for (i, &b) in core_bits.iter().enumerate() {
                side[stripped.core_to_original[i]] = b;
            }
            Solution::from_side(g, side)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(score: u64, tag: bool) -> Entry {
        Entry {
            score,
            bits: vec![tag, !tag],
        }
    }

    #[test]
    fn pool_keeps_top_k_with_stable_ties() {
        let mut p = Pool {
            keep: 2,
            entries: vec![],
        };
        assert!(matches!(p.offer(e(3, true)), Offer::Inserted));
        assert!(matches!(p.offer(e(3, true)), Offer::Duplicate));
        assert!(matches!(p.offer(e(3, false)), Offer::Inserted));
        assert_eq!(p.entries[0], e(3, true));
        assert!(matches!(
            p.offer(Entry {
                score: 3,
                bits: vec![true, true]
            }),
            Offer::Rejected
        ));
        assert!(matches!(
            p.offer(Entry {
                score: 5,
                bits: vec![true, true]
            }),
            Offer::Inserted
        ));
        assert_eq!(p.entries.iter().map(|x| x.score).collect::<Vec<_>>(), vec![5, 3]);
        assert_eq!(p.entries[1], e(3, true));
    }

    #[test]
    fn singleton_pool_replaces_only_on_strict_improvement() {
        let mut p = Pool {
            keep: 1,
            entries: vec![],
        };
        p.offer(e(2, true));
        assert!(matches!(p.offer(e(2, false)), Offer::Rejected));
        assert!(matches!(p.offer(e(4, false)), Offer::Inserted));
        assert_eq!(p.entries, vec![e(4, false)]);
    }
}
