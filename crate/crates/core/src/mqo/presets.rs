//! Built-in hyperparameter rows keyed by (problem, family, n, mean degree).

use crate::objectives::Problem;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    ErdosRenyi,
    StochasticBlock,
    BarabasiAlbert,
    Rb,
    Dimacs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub family: GraphFamily,
    pub problem: Problem,
    pub n: usize,
    /// Mean degree of the row's instances.
    pub d: f64,
    pub alpha: f64,
    pub momentum: f64,
    pub rho: f64,
    pub t_gs: usize,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    family: GraphFamily,
    problem: Problem,
    n: usize,
    d: f64,
    alpha: f64,
    momentum: f64,
    rho: f64,
    t_gs: usize,
) -> Preset {
    Preset {
        family,
        problem,
        n,
        d,
        alpha,
        momentum,
        rho,
        t_gs,
    }
}

use GraphFamily::*;
use Problem::*;

pub const PRESETS: &[Preset] = &[
    row(ErdosRenyi, Mis, 1000, 100.0, 0.8, 0.30, 0.70, 60),
    row(ErdosRenyi, Mis, 1000, 300.0, 0.8, 0.45, 0.70, 60),
    row(ErdosRenyi, Mis, 1000, 500.0, 0.8, 0.45, 0.60, 60),
    row(ErdosRenyi, Mis, 3000, 100.0, 0.8, 0.30, 0.60, 60),
    row(ErdosRenyi, Mis, 3000, 300.0, 0.8, 0.45, 0.60, 60),
    row(ErdosRenyi, Mis, 3000, 1000.0, 0.8, 0.45, 0.50, 60),
    row(ErdosRenyi, Mis, 10000, 5000.0, 0.8, 0.75, 0.50, 60),
    row(ErdosRenyi, Mis, 20000, 10000.0, 0.8, 0.75, 0.50, 60),
    row(ErdosRenyi, Mis, 30000, 15000.0, 0.8, 0.75, 0.50, 60),
    row(ErdosRenyi, MaxCut, 100, 50.0, 0.0025, 0.9, 0.8, 90),
    row(ErdosRenyi, MaxCut, 1000, 100.0, 0.0025, 0.8, 0.8, 90),
    row(ErdosRenyi, MaxCut, 1000, 500.0, 0.0025, 0.8, 0.8, 90),
    row(ErdosRenyi, MaxCut, 1000, 800.0, 0.0025, 0.8, 0.8, 90),
    row(ErdosRenyi, MaxCut, 30000, 15000.0, 5e-5, 0.8, 0.8, 90),
    row(ErdosRenyi, MaxCut, 30000, 24000.0, 5e-5, 0.8, 0.8, 90),
    row(ErdosRenyi, MaxCut, 40000, 20000.0, 5e-5, 0.8, 0.8, 90),
    row(ErdosRenyi, MaxCut, 40000, 32000.0, 5e-5, 0.8, 0.8, 90),
    // two blocks of 2500, p_out = 0.05, p_in ∈ {0.1, …, 0.5}
    row(StochasticBlock, Mis, 5000, 375.0, 0.8, 0.45, 0.6, 60),
    row(StochasticBlock, Mis, 5000, 625.0, 0.8, 0.45, 0.6, 60),
    row(StochasticBlock, Mis, 5000, 875.0, 0.8, 0.45, 0.6, 60),
    row(StochasticBlock, Mis, 5000, 1125.0, 0.8, 0.45, 0.6, 60),
    row(StochasticBlock, Mis, 5000, 1375.0, 0.8, 0.45, 0.6, 60),
    row(Rb, Mis, 3000, 1500.0, 0.8, 0.5, 0.5, 60),
    row(Rb, Mis, 10000, 5000.0, 0.8, 0.7, 0.5, 60),
    // BA mean degree ≈ 2m'
    row(BarabasiAlbert, MaxCut, 3000, 3000.0, 0.001, 0.8, 0.8, 90),
    row(BarabasiAlbert, MaxCut, 30000, 30000.0, 5e-5, 0.8, 0.8, 90),
    row(Dimacs, Mis, 200, 100.0, 0.75, 0.8, 0.6, 60),
];

fn distance(p: &Preset, n: usize, d: f64) -> f64 {
    let ln = |t: f64| t.max(1.0).ln();
    (ln(p.n as f64) - ln(n as f64)).powi(2) + (ln(p.d) - ln(d)).powi(2)
}

/// The row nearest to `(n, d)` in log-space among rows for `problem` and
/// `family`, falling back to Erdős–Rényi rows when the family has none.
pub fn lookup(problem: Problem, family: Option<GraphFamily>, n: usize, d: f64) -> &'static Preset {
    let family = family.unwrap_or(ErdosRenyi);
    let pick = |fam: GraphFamily| {
        PRESETS
            .iter()
            .filter(|p| p.problem == problem && p.family == fam)
            .min_by(|a, b| distance(a, n, d).total_cmp(&distance(b, n, d)))
    };
    pick(family)
        .or_else(|| pick(ErdosRenyi))
        .expect("every problem has Erdős–Rényi rows")
}
