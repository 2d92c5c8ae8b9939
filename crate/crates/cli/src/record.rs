//! Serialized run reports.

use crate::error::{CliError, CliResult};
use crate::source::GraphDescriptor;
use mqo_core::mqo::{LoopPhases, PhaseGains, PoolStats, StopCounts};
use mqo_core::objectives::{cut_value, is_independent};
use mqo_core::{Graph, Problem, RunReport, SolverConfig, StopReason};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Side bitmaps longer than this are run-length encoded.
pub const RLE_THRESHOLD: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "encoding", rename_all = "snake_case")]
pub enum SolutionRecord {
    /// Independent-set members, ascending.
    Vertices { vertices: Vec<usize> },
    /// One `0`/`1` character per vertex; `1` is side `S`.
    Bitmap { bits: String },
    /// Alternating run lengths, starting with a run of `first`.
    Rle { n: usize, first: bool, runs: Vec<usize> },
}

impl SolutionRecord {
    pub fn encode_side(side: &[bool]) -> Self {
        if side.len() <= RLE_THRESHOLD {
            return SolutionRecord::Bitmap {
                bits: side.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            };
        }
        let mut runs = Vec::new();
        let mut current = side[0];
        let mut len = 0;
        for &b in side {
            if b == current {
                len += 1;
            } else {
                runs.push(len);
                current = b;
                len = 1;
            }
        }
        runs.push(len);
        SolutionRecord::Rle {
            n: side.len(),
            first: side[0],
            runs,
        }
    }

    /// The side bitmap, if this is a partition.
    pub fn decode_side(&self) -> CliResult<Vec<bool>> {
        match self {
            SolutionRecord::Bitmap { bits } => bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(CliError::Usage(format!("bad bitmap character {c:?}"))),
                })
                .collect(),
            SolutionRecord::Rle { n, first, runs } => {
                let mut side = Vec::with_capacity(*n);
                let mut value = *first;
                for &r in runs {
                    side.extend(std::iter::repeat_n(value, r));
                    value = !value;
                }
                if side.len() != *n {
                    return Err(CliError::Usage(format!("run lengths sum to {} not {n}", side.len())));
                }
                Ok(side)
            }
            SolutionRecord::Vertices { .. } => {
                Err(CliError::Usage("record holds a vertex set, not a partition".into()))
            }
        }
    }

    /// Re-scores against `g`, checking feasibility.
    pub fn score(&self, problem: Problem, g: &Graph) -> CliResult<u64> {
        match (problem, self) {
            (Problem::Mis, SolutionRecord::Vertices { vertices }) => {
                if vertices.iter().any(|&v| v >= g.n()) || !is_independent(g, vertices) {
                    return Err(CliError::Failed("recorded vertex set is not independent".into()));
                }
                let mut sorted = vertices.clone();
                sorted.sort_unstable();
                sorted.dedup();
                Ok(sorted.len() as u64)
            }
            (Problem::MaxCut, _) => {
                let side = self.decode_side()?;
                if side.len() != g.n() {
                    return Err(CliError::Failed(format!(
                        "partition has {} entries for {} vertices",
                        side.len(),
                        g.n()
                    )));
                }
                Ok(cut_value(g, &side))
            }
            _ => Err(CliError::Usage("solution encoding does not match the problem".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    #[serde(flatten)]
    pub descriptor: GraphDescriptor,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Timings {
    /// Graph generation or loading; not charged to the budget.
    pub graph_secs: f64,
    pub solve_secs: f64,
}

/// One solver run. Everything except `timings` is reproducible from the
/// graph, config and seed when the run is capped by `max_loops`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub problem: Problem,
    pub graph: GraphInfo,
    pub config: SolverConfig,
    pub best_score: u64,
    pub solution: Option<SolutionRecord>,
    pub phase_gains: PhaseGains,
    pub loops: Vec<LoopPhases>,
    pub outer_loops: u64,
    pub resets_accepted: u64,
    pub resets_rejected: u64,
    pub trajectories: u64,
    pub iterations: u64,
    pub stops: StopCounts,
    /// Set when the run consisted of a single trajectory.
    pub stop_reason: Option<StopReason>,
    pub isolated: usize,
    pub pool: PoolStats,
    pub timings: Timings,
}

impl RunRecord {
    pub fn from_report(report: &RunReport, graph: GraphInfo, graph_secs: f64) -> Self {
        let solution = report.best.as_ref().map(|s| match s {
            mqo_core::Solution::IndependentSet { members, .. } => SolutionRecord::Vertices {
                vertices: members.clone(),
            },
            mqo_core::Solution::CutPartition { side, .. } => SolutionRecord::encode_side(side),
        });
        let s = report.stops;
        let only = if s.converged == 1 {
            StopReason::Converged
        } else if s.checker_accepted == 1 {
            StopReason::CheckerAccepted
        } else if s.iter_cap == 1 {
            StopReason::IterCap
        } else {
            StopReason::Deadline
        };
        let stop_reason = (s.total() == 1).then_some(only);
        RunRecord {
            schema_version: SCHEMA_VERSION,
            problem: report.problem,
            graph,
            config: report.config.clone(),
            best_score: report.best_score,
            solution,
            phase_gains: report.phase_gains,
            loops: report.loops.clone(),
            outer_loops: report.outer_loops,
            resets_accepted: report.resets_accepted,
            resets_rejected: report.resets_rejected,
            trajectories: report.trajectories,
            iterations: report.iterations,
            stops: report.stops,
            stop_reason,
            isolated: report.isolated,
            pool: report.pool.clone(),
            timings: Timings {
                graph_secs,
                solve_secs: report.elapsed_secs,
            },
        }
    }

    /// Checks that the recorded solution scores `best_score` on `g`.
    pub fn rescore(&self, g: &Graph) -> CliResult<()> {
        if (g.n(), g.m()) != (self.graph.n, self.graph.m) {
            return Err(CliError::Failed(format!(
                "graph has (n, m) = ({}, {}), record says ({}, {})",
                g.n(),
                g.m(),
                self.graph.n,
                self.graph.m
            )));
        }
        let score = match &self.solution {
            Some(sol) => sol.score(self.problem, g)?,
            None => 0,
        };
        if score != self.best_score {
            return Err(CliError::Failed(format!(
                "recorded score {} but the solution scores {score}",
                self.best_score
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(line: &str) -> CliResult<Self> {
        let record: RunRecord = serde_json::from_str(line)?;
        if record.schema_version > SCHEMA_VERSION {
            return Err(CliError::Usage(format!(
                "record schema {} is newer than {SCHEMA_VERSION}",
                record.schema_version
            )));
        }
        Ok(record)
    }
}

pub const CSV_HEADER: &str = "problem,graph,n,m,seed,objective,alpha,momentum,rho,t_gs,sigma,local_search,pool_b,pool_k,best,gain_gradient,gain_reset,gain_local_search,outer_loops,resets_accepted,resets_rejected,trajectories,iterations,solve_secs";

fn graph_label(d: &GraphDescriptor) -> String {
    match d {
        GraphDescriptor::Generated { spec } => spec.clone(),
        GraphDescriptor::File { path, .. } => path.clone(),
    }
}

/// Quotes a CSV field when it contains a separator or quote.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl RunRecord {
    pub fn csv_row(&self) -> String {
        let c = &self.config;
        let fields: Vec<String> = vec![
            self.problem.name().into(),
            csv_field(&graph_label(&self.graph.descriptor)),
            self.graph.n.to_string(),
            self.graph.m.to_string(),
            c.seed.to_string(),
            c.objective.name().into(),
            c.optimizer.alpha.to_string(),
            c.optimizer.momentum.to_string(),
            c.rho.to_string(),
            c.t_gs.to_string(),
            c.sigma.to_string(),
            c.local_search.to_string(),
            c.pool.batch.to_string(),
            c.pool.keep.to_string(),
            self.best_score.to_string(),
            self.phase_gains.gradient.to_string(),
            self.phase_gains.reset.to_string(),
            self.phase_gains.local_search.to_string(),
            self.outer_loops.to_string(),
            self.resets_accepted.to_string(),
            self.resets_rejected.to_string(),
            self.trajectories.to_string(),
            self.iterations.to_string(),
            format!("{:.3}", self.timings.solve_secs),
        ];
        fields.join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rle_round_trip() {
        let side: Vec<bool> = (0..3000).map(|i| (i / 7) % 3 == 0).collect();
        let rec = SolutionRecord::encode_side(&side);
        assert!(matches!(rec, SolutionRecord::Rle { .. }));
        assert_eq!(rec.decode_side().unwrap(), side);
        let small = vec![true, false, false];
        let rec = SolutionRecord::encode_side(&small);
        assert_eq!(rec, SolutionRecord::Bitmap { bits: "100".into() });
        assert_eq!(rec.decode_side().unwrap(), small);
    }

    #[test]
    fn bad_rle_is_rejected() {
        let rec = SolutionRecord::Rle {
            n: 5,
            first: true,
            runs: vec![2, 2],
        };
        assert!(rec.decode_side().is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(CSV_HEADER.split(',').count(), 24);
    }
}
