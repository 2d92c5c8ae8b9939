//! Relaxed objectives, their gradients, and the discrete scorers.
//!
//! | objective            | problem | box       | value                  | gradient        |
//! |----------------------|---------|-----------|------------------------|-----------------|
//! | `MisQubo { γ }`      | MIS     | `[0,1]`   | `1ᵀx − (γ/2)·xᵀAx`     | `1 − γ·Ax`      |
//! | `Laplacian`          | MaxCut  | `[−1,1]`  | `¼·xᵀLx`               | `½·Lx`          |
//! | `PerturbedLaplacian` | MaxCut  | `[−1,1]`  | `xᵀ(L + λI)x`          | `2(L + λI)x`    |
//! | `Adjacency`          | MaxCut  | `[−1,1]`  | `−xᵀAx`                | `−2·Ax`         |
//! | `PerturbedBias`      | MaxCut  | `[−1,1]`  | `−λ·1ᵀx − xᵀAx`        | `−2·Ax − λ·1`   |
//!
//! All objectives are maximized. Quadratic forms are evaluated edge by edge,
//! so every value costs `O(n + m)`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

pub const DEFAULT_GAMMA: f64 = 2.0;
pub const DEFAULT_LAMBDA: f64 = 0.001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mis,
    MaxCut,
}

impl Problem {
    pub fn domain(self) -> BoxDomain {
        match self {
            Problem::Mis => BoxDomain::UnitBox,
            Problem::MaxCut => BoxDomain::SymmetricBox,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::Mis => "mis",
            Problem::MaxCut => "maxcut",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxDomain {
    /// `[0, 1]^n`
    UnitBox,
    /// `[−1, 1]^n`
    SymmetricBox,
}

impl BoxDomain {
    pub fn lower(self) -> f64 {
        match self {
            BoxDomain::UnitBox => 0.0,
            BoxDomain::SymmetricBox => -1.0,
        }
    }

    pub fn upper(self) -> f64 {
        1.0
    }

    #[inline]
    pub fn clamp(self, t: f64) -> f64 {
        t.clamp(self.lower(), self.upper())
    }

    pub fn contains(self, x: &[f64]) -> bool {
        x.iter().all(|&t| t >= self.lower() && t <= self.upper())
    }

    pub fn name(self) -> &'static str {
        match self {
            BoxDomain::UnitBox => "unit-box",
            BoxDomain::SymmetricBox => "symmetric-box",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectiveSpec {
    MisQubo { gamma: f64 },
    Laplacian,
    PerturbedLaplacian { lambda: f64 },
    Adjacency,
    PerturbedBias { lambda: f64 },
}

impl Default for ObjectiveSpec {
    fn default() -> Self {
        ObjectiveSpec::PerturbedBias { lambda: DEFAULT_LAMBDA }
    }
}

impl ObjectiveSpec {
    pub fn mis() -> Self {
        ObjectiveSpec::MisQubo { gamma: DEFAULT_GAMMA }
    }

    pub fn problem(&self) -> Problem {
        match self {
            ObjectiveSpec::MisQubo { .. } => Problem::Mis,
            _ => Problem::MaxCut,
        }
    }

    pub fn domain(&self) -> BoxDomain {
        self.problem().domain()
    }

    pub fn name(&self) -> &'static str {
        match self {
            ObjectiveSpec::MisQubo { .. } => "mis-qubo",
            ObjectiveSpec::Laplacian => "laplacian",
            ObjectiveSpec::PerturbedLaplacian { .. } => "perturbed-laplacian",
            ObjectiveSpec::Adjacency => "adjacency",
            ObjectiveSpec::PerturbedBias { .. } => "perturbed-bias",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ObjectiveSpec::MisQubo { gamma } if !(gamma > 1.0 && gamma.is_finite()) => Err(Error::InvalidParameter(
                format!("penalty gamma = {gamma} must be finite and > 1"),
            )),
            ObjectiveSpec::PerturbedLaplacian { lambda } if !(lambda > 0.0 && lambda.is_finite()) => {
                Err(Error::InvalidParameter(format!("lambda = {lambda} must be > 0")))
            }
            ObjectiveSpec::PerturbedBias { lambda } if !(lambda > 0.0 && lambda < 2.0) => {
                Err(Error::InvalidParameter(format!("lambda = {lambda} must lie in (0, 2)")))
            }
            _ => Ok(()),
        }
    }

    fn check(&self, g: &Graph, state: &RelaxedState) -> Result<()> {
        if state.domain != self.domain() {
            return Err(Error::DomainMismatch {
                objective: self.name(),
                expected: self.domain().name(),
            });
        }
        g.check_len(state.len())
    }

    /// Objective value at `state`.
    pub fn value(&self, g: &Graph, state: &RelaxedState) -> Result<f64> {
        self.check(g, state)?;
        Ok(self.eval(g, &state.x))
    }

    /// Gradient at `state`.
    pub fn gradient(&self, g: &Graph, state: &RelaxedState) -> Result<Vec<f64>> {
        self.check(g, state)?;
        let mut out = vec![0.0; state.len()];
        self.gradient_into(g, &state.x, &mut out);
        Ok(out)
    }

    /// Unchecked value on a raw slice; `x.len()` must equal `g.n()`.
    pub fn eval(&self, g: &Graph, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), g.n());
        match *self {
            ObjectiveSpec::MisQubo { gamma } => x.iter().sum::<f64>() - gamma * edge_products(g, x),
            ObjectiveSpec::Laplacian => 0.25 * edge_squares(g, x),
            ObjectiveSpec::PerturbedLaplacian { lambda } => {
                edge_squares(g, x) + lambda * x.iter().map(|t| t * t).sum::<f64>()
            }
            ObjectiveSpec::Adjacency => -2.0 * edge_products(g, x),
            ObjectiveSpec::PerturbedBias { lambda } => -lambda * x.iter().sum::<f64>() - 2.0 * edge_products(g, x),
        }
    }

    /// Unchecked gradient written into `out`.
    pub fn gradient_into(&self, g: &Graph, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), g.n());
        debug_assert_eq!(out.len(), g.n());
        match *self {
            ObjectiveSpec::MisQubo { gamma } => {
                adjacency(g, x, out);
                out.iter_mut().for_each(|o| *o = 1.0 - gamma * *o);
            }
            ObjectiveSpec::Laplacian => {
                laplacian(g, x, out);
                out.iter_mut().for_each(|o| *o *= 0.5);
            }
            ObjectiveSpec::PerturbedLaplacian { lambda } => {
                laplacian(g, x, out);
                out.iter_mut().zip(x).for_each(|(o, &t)| *o = 2.0 * (*o + lambda * t));
            }
            ObjectiveSpec::Adjacency => {
                adjacency(g, x, out);
                out.iter_mut().for_each(|o| *o *= -2.0);
            }
            ObjectiveSpec::PerturbedBias { lambda } => {
                adjacency(g, x, out);
                out.iter_mut().for_each(|o| *o = -2.0 * *o - lambda);
            }
        }
    }
}

fn adjacency(g: &Graph, x: &[f64], out: &mut [f64]) {
    g.adjacency_apply_into(x, out).expect("dimensions checked by caller");
}

fn laplacian(g: &Graph, x: &[f64], out: &mut [f64]) {
    g.laplacian_apply_into(x, out).expect("dimensions checked by caller");
}

// Σ_{(u,v)∈E} x_u x_v  (= ½ xᵀAx)
fn edge_products(g: &Graph, x: &[f64]) -> f64 {
    g.edges().map(|(u, v)| x[u] * x[v]).sum()
}

// Σ_{(u,v)∈E} (x_u − x_v)²  (= xᵀLx)
fn edge_squares(g: &Graph, x: &[f64]) -> f64 {
    g.edges()
        .map(|(u, v)| {
            let d = x[u] - x[v];
            d * d
        })
        .sum()
}

/// A continuous assignment together with its box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxedState {
    pub x: Vec<f64>,
    pub domain: BoxDomain,
}

impl RelaxedState {
    /// Fails if any coordinate lies outside the box (or is NaN).
    pub fn new(x: Vec<f64>, domain: BoxDomain) -> Result<Self> {
        if let Some((i, &t)) = x
            .iter()
            .enumerate()
            .find(|(_, &t)| !(t >= domain.lower() && t <= domain.upper()))
        {
            return Err(Error::InvalidParameter(format!(
                "coordinate {i} = {t} lies outside the {} domain",
                domain.name()
            )));
        }
        Ok(Self { x, domain })
    }

    /// Clamps every coordinate into the box.
    pub fn projected(mut x: Vec<f64>, domain: BoxDomain) -> Self {
        x.iter_mut().for_each(|t| *t = domain.clamp(*t));
        Self { x, domain }
    }

    pub fn constant(n: usize, c: f64, domain: BoxDomain) -> Result<Self> {
        Self::new(vec![c; n], domain)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        let (lo, hi) = (self.domain.lower(), self.domain.upper());
        self.x.iter().all(|&t| t == lo || t == hi)
    }

    /// Index and value of the first coordinate not at a box corner.
    pub fn first_non_binary(&self) -> Option<(usize, f64)> {
        let (lo, hi) = (self.domain.lower(), self.domain.upper());
        self.x.iter().copied().enumerate().find(|&(_, t)| t != lo && t != hi)
    }
}

/// Discrete solution with its score (`|I|` or `Cut(S)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Solution {
    IndependentSet { members: Vec<usize>, score: u64 },
    CutPartition { side: Vec<bool>, score: u64 },
}

impl Solution {
    /// Builds a vertex-set solution; `members` is sorted and deduplicated.
    /// Independence is not checked.
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let score = members.len() as u64;
        Solution::IndependentSet { members, score }
    }

    pub fn from_indicator(in_set: &[bool]) -> Self {
        let members = in_set
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
            .collect::<Vec<_>>();
        let score = members.len() as u64;
        Solution::IndependentSet { members, score }
    }

    pub fn from_side(g: &Graph, side: Vec<bool>) -> Self {
        let score = cut_value(g, &side);
        Solution::CutPartition { side, score }
    }

    pub fn score(&self) -> u64 {
        match self {
            Solution::IndependentSet { score, .. } | Solution::CutPartition { score, .. } => *score,
        }
    }

    pub fn problem(&self) -> Problem {
        match self {
            Solution::IndependentSet { .. } => Problem::Mis,
            Solution::CutPartition { .. } => Problem::MaxCut,
        }
    }

    /// Membership / side as a boolean vector of length `n`.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        match self {
            Solution::IndependentSet { members, .. } => {
                let mut b = vec![false; n];
                members.iter().for_each(|&v| b[v] = true);
                b
            }
            Solution::CutPartition { side, .. } => side.clone(),
        }
    }

    /// Binary encoding: `𝟙(v ∈ I)` for MIS, `±1` by side for max-cut.
    pub fn encode(&self, n: usize) -> RelaxedState {
        match self {
            Solution::IndependentSet { members, .. } => {
                let mut x = vec![0.0; n];
                members.iter().for_each(|&v| x[v] = 1.0);
                RelaxedState {
                    x,
                    domain: BoxDomain::UnitBox,
                }
            }
            Solution::CutPartition { side, .. } => RelaxedState {
                x: side.iter().map(|&s| if s { 1.0 } else { -1.0 }).collect(),
                domain: BoxDomain::SymmetricBox,
            },
        }
    }

    /// Recomputes the score from `g` and checks feasibility.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        match self {
            Solution::IndependentSet { members, score } => {
                if let Some(&v) = members.iter().find(|&&v| v >= g.n()) {
                    return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
                }
                if !is_independent(g, members) {
                    return Err(Error::InvalidParameter("vertex set is not independent".into()));
                }
                if members.len() as u64 != *score {
                    return Err(Error::InvalidParameter(format!(
                        "stored size {score} differs from |I| = {}",
                        members.len()
                    )));
                }
            }
            Solution::CutPartition { side, score } => {
                g.check_len(side.len())?;
                let actual = cut_value(g, side);
                if actual != *score {
                    return Err(Error::InvalidParameter(format!(
                        "stored cut {score} differs from recomputed {actual}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Thresholds a relaxed state: MIS keeps `x_v > 0.5`, max-cut puts `x_v > 0`
/// on side `S`. Exact ties go to the unselected side. Independence is not
/// checked.
pub fn extract_solution(problem: Problem, g: &Graph, state: &RelaxedState) -> Solution {
    match problem {
        Problem::Mis => Solution::from_indicator(&threshold(problem, &state.x)),
        Problem::MaxCut => Solution::from_side(g, threshold(problem, &state.x)),
    }
}

pub fn threshold(problem: Problem, x: &[f64]) -> Vec<bool> {
    let t = match problem {
        Problem::Mis => 0.5,
        Problem::MaxCut => 0.0,
    };
    x.iter().map(|&v| v > t).collect()
}

/// Number of edges with endpoints on opposite sides.
pub fn cut_value(g: &Graph, side: &[bool]) -> u64 {
    debug_assert_eq!(side.len(), g.n());
    g.edges().filter(|&(u, v)| side[u] != side[v]).count() as u64
}

pub fn is_independent(g: &Graph, members: &[usize]) -> bool {
    let mut in_set = vec![false; g.n()];
    members.iter().for_each(|&v| in_set[v] = true);
    is_independent_indicator(g, &in_set)
}

pub fn is_independent_indicator(g: &Graph, in_set: &[bool]) -> bool {
    g.edges().all(|(u, v)| !(in_set[u] && in_set[v]))
}
