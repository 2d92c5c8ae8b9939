//! Oracle-backed verification suites for `mqo verify`.

use crate::args::{Suite, VerifyArgs};
use mqo_core::graph::{generate, named, GraphGenSpec};
use mqo_core::mqo::{presets, solve_maxcut, solve_mis};
use mqo_core::objectives::{cut_value, extract_solution};
use mqo_core::oracle::{
    enumerate_fixed_points, exact_maxcut, exact_mis, is_one_flip_repairable, maximal_independent_sets,
    FIXED_POINT_LIMIT,
};
use mqo_core::pga::{run_trajectory, StopRule};
use mqo_core::{BoxDomain, Graph, ObjectiveSpec, OptimizerConfig, Problem, RelaxedState, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

fn check(suite: &'static str, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        suite,
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn er(n: usize, p: f64, seed: u64) -> Graph {
    generate(&GraphGenSpec::erdos_renyi(n, p, seed)).expect("valid generator parameters")
}

/// Small random graphs: sizes cycle through `4..=max_n`, densities 0.3/0.5.
fn small_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let max_n = max_n.max(4);
    (0..count)
        .map(|i| {
            let n = 4 + i % (max_n - 3);
            let p = if i % 2 == 0 { 0.3 } else { 0.5 };
            er(n, p, seed.wrapping_mul(1000).wrapping_add(i as u64))
        })
        .collect()
}

pub fn fixed_points(args: &VerifyArgs) -> Vec<Check> {
    const S: &str = "fixed-points";
    let max_n = args.max_n.min(FIXED_POINT_LIMIT);
    let graphs = small_graphs(args.graphs, max_n, args.seed);
    let mut perturbed_ok = true;
    let mut flip_ok = true;
    let mut bias_ok = true;
    let mut mis_ok = true;
    let mut states = 0usize;
    for g in &graphs {
        let n = g.n();
        states += 1 << n;
        for lambda in [0.001, 0.1, 1.0] {
            let pts = enumerate_fixed_points(&ObjectiveSpec::PerturbedLaplacian { lambda }, g).expect("size guarded");
            perturbed_ok &= pts.iter().all(|p| p.fixed);
        }
        let fa = enumerate_fixed_points(&ObjectiveSpec::Adjacency, g).expect("size guarded");
        let fb = enumerate_fixed_points(&ObjectiveSpec::PerturbedBias { lambda: 0.001 }, g).expect("size guarded");
        for (a, b) in fa.iter().zip(&fb) {
            let repairable = is_one_flip_repairable(g, a.mask);
            flip_ok &= !(repairable && (a.fixed || b.fixed));
            bias_ok &= !(b.fixed && repairable);
        }
        let fixed: Vec<u32> = enumerate_fixed_points(&ObjectiveSpec::mis(), g)
            .expect("size guarded")
            .into_iter()
            .filter(|p| p.fixed)
            .map(|p| p.mask)
            .collect();
        mis_ok &= fixed == maximal_independent_sets(g).expect("size guarded");
    }
    let detail = format!("{} graphs, {states} binary states", graphs.len());
    vec![
        check(S, "perturbed-laplacian-all-fixed", perturbed_ok, &detail),
        check(S, "adjacency-repairable-not-fixed", flip_ok, &detail),
        check(S, "bias-fixed-are-irreparable", bias_ok, &detail),
        check(S, "mis-fixed-are-maximal-sets", mis_ok, &detail),
    ]
}

fn loop_capped(problem: Problem, loops: usize, seed: u64) -> SolverConfig {
    SolverConfig {
        max_loops: Some(loops),
        seed,
        time_budget: 5.0,
        ..SolverConfig::for_problem(problem)
    }
}

pub fn exact(args: &VerifyArgs) -> Vec<Check> {
    const S: &str = "exact";
    let graphs = small_graphs(args.graphs, args.max_n.max(4), args.seed);
    let mut matched = [0usize; 2];
    let mut exceeded = [0usize; 2];
    for (i, g) in graphs.iter().enumerate() {
        let seed = args.seed.wrapping_add(i as u64);
        let mis = solve_mis(g, &loop_capped(Problem::Mis, 3, seed)).map(|r| r.best_score);
        let cut = solve_maxcut(g, &loop_capped(Problem::MaxCut, 3, seed)).map(|r| r.best_score);
        let opt = [exact_mis(g).map(|r| r.optimum), exact_maxcut(g).map(|r| r.optimum)];
        for (k, (got, opt)) in [mis, cut].into_iter().zip(opt).enumerate() {
            let (Ok(got), Ok(opt)) = (got, opt) else {
                exceeded[k] += 1;
                continue;
            };
            matched[k] += usize::from(got == opt);
            exceeded[k] += usize::from(got > opt);
        }
    }
    let total = graphs.len();
    let needed = (total * 95).div_ceil(100);
    ["mis", "maxcut"]
        .into_iter()
        .enumerate()
        .map(|(k, name)| {
            check(
                S,
                format!("{name}-matches-optimum"),
                matched[k] >= needed && exceeded[k] == 0,
                format!("{}/{total} optimal, {} above optimum", matched[k], exceeded[k]),
            )
        })
        .collect()
}

pub fn solver(args: &VerifyArgs) -> Vec<Check> {
    const S: &str = "solver";
    let cases: [(&str, Graph, Problem, u64); 5] = [
        ("mis-c5", named::cycle(5), Problem::Mis, 2),
        ("mis-petersen", named::petersen(), Problem::Mis, 4),
        ("maxcut-k3", named::complete(3), Problem::MaxCut, 2),
        ("maxcut-petersen", named::petersen(), Problem::MaxCut, 12),
        ("maxcut-c6", named::cycle(6), Problem::MaxCut, 6),
    ];
    cases
        .into_iter()
        .map(|(name, g, problem, want)| {
            let cfg = loop_capped(problem, 2, args.seed);
            let report = match problem {
                Problem::Mis => solve_mis(&g, &cfg),
                Problem::MaxCut => solve_maxcut(&g, &cfg),
            };
            match report.and_then(|r| r.verify(&g).map(|_| r)) {
                Ok(r) => check(
                    S,
                    name,
                    r.best_score == want,
                    format!("best {} (optimum {want})", r.best_score),
                ),
                Err(e) => check(S, name, false, e.to_string()),
            }
        })
        .collect()
}

/// Mean final cut of one projected-ascent trajectory per (graph, init).
fn mean_final_cut(spec: &ObjectiveSpec, cases: &[(Graph, RelaxedState)], cfg: &OptimizerConfig) -> f64 {
    let total: u64 = cases
        .iter()
        .map(|(g, init)| {
            let out = run_trajectory(spec, g, init, cfg, StopRule::Convergence, None).expect("valid inputs");
            extract_solution(Problem::MaxCut, g, &out.state).score()
        })
        .sum();
    total as f64 / cases.len() as f64
}

/// Uniform sign vector resampled until some single move improves the cut.
pub fn repairable_signs(g: &Graph, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let side: Vec<bool> = (0..g.n()).map(|_| rng.random()).collect();
        let improvable = (0..g.n()).any(|v| {
            let same = g.neighbors(v).iter().filter(|&&u| side[u] == side[v]).count();
            2 * same > g.degree(v)
        });
        if improvable {
            return side.iter().map(|&s| if s { 1.0 } else { -1.0 }).collect();
        }
    }
}

pub fn escapability(args: &VerifyArgs) -> Vec<Check> {
    const S: &str = "escapability";
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let graphs: Vec<Graph> = (0..args.graphs.max(1))
        .map(|i| er(args.n, args.p, args.seed.wrapping_add(i as u64)))
        .collect();
    let constant: Vec<(Graph, RelaxedState)> = graphs
        .iter()
        .map(|g| {
            let c: f64 = rng.random_range(-1.0..1.0);
            (
                g.clone(),
                RelaxedState::constant(g.n(), c, BoxDomain::SymmetricBox).expect("c inside the box"),
            )
        })
        .collect();
    let repairable: Vec<(Graph, RelaxedState)> = graphs
        .iter()
        .map(|g| {
            let x = repairable_signs(g, &mut rng);
            (g.clone(), RelaxedState::new(x, BoxDomain::SymmetricBox).expect("signs"))
        })
        .collect();
    let init_cut: f64 = repairable
        .iter()
        .map(|(g, s)| cut_value(g, &s.x.iter().map(|&t| t > 0.0).collect::<Vec<_>>()) as f64)
        .sum::<f64>()
        / repairable.len() as f64;
    let cfg = OptimizerConfig::new(0.1, 0.0);
    let fl = ObjectiveSpec::Laplacian;
    let fp = ObjectiveSpec::PerturbedLaplacian { lambda: 0.001 };
    let fb = ObjectiveSpec::PerturbedBias { lambda: 0.001 };
    let (l4, p4, b4) = (
        mean_final_cut(&fl, &constant, &cfg),
        mean_final_cut(&fp, &constant, &cfg),
        mean_final_cut(&fb, &constant, &cfg),
    );
    let (l5, p5, b5) = (
        mean_final_cut(&fl, &repairable, &cfg),
        mean_final_cut(&fp, &repairable, &cfg),
        mean_final_cut(&fb, &repairable, &cfg),
    );
    vec![
        check(S, "stationary/laplacian-stuck", l4 == 0.0, format!("mean cut {l4:.1}")),
        check(
            S,
            "stationary/perturbed-laplacian-escapes",
            p4 >= 40.0,
            format!("mean cut {p4:.1} (want >= 40)"),
        ),
        check(
            S,
            "stationary/perturbed-bias-escapes",
            b4 >= 40.0,
            format!("mean cut {b4:.1} (want >= 40)"),
        ),
        check(
            S,
            "repairable/laplacian-stuck",
            l5 == init_cut,
            format!("{init_cut:.1} -> {l5:.1}"),
        ),
        check(
            S,
            "repairable/perturbed-laplacian-stuck",
            p5 == init_cut,
            format!("{init_cut:.1} -> {p5:.1}"),
        ),
        check(
            S,
            "repairable/perturbed-bias-improves",
            b5 - init_cut >= 4.0,
            format!("{init_cut:.1} -> {b5:.1} (want +4)"),
        ),
    ]
}

/// Mean best cut per objective from one shared init, no resets or local search.
pub fn compare_objectives(graphs: &[Graph], seed: u64) -> [f64; 4] {
    let specs = [
        ObjectiveSpec::Laplacian,
        ObjectiveSpec::PerturbedLaplacian { lambda: 0.001 },
        ObjectiveSpec::Adjacency,
        ObjectiveSpec::PerturbedBias { lambda: 0.001 },
    ];
    let mut means = [0.0; 4];
    for (i, g) in graphs.iter().enumerate() {
        let mut cfg = SolverConfig::maxcut();
        cfg.apply_preset(presets::lookup(Problem::MaxCut, None, g.n(), g.mean_degree()));
        cfg.t_gs = 0;
        cfg.local_search = false;
        cfg.max_loops = Some(1);
        cfg.time_budget = 600.0;
        cfg.seed = seed.wrapping_add(i as u64);
        for (k, spec) in specs.iter().enumerate() {
            cfg.objective = *spec;
            let r = solve_maxcut(g, &cfg).expect("valid configuration");
            means[k] += r.best_score as f64 / graphs.len() as f64;
        }
    }
    means
}

pub fn comparison(args: &VerifyArgs) -> Vec<Check> {
    const S: &str = "comparison";
    let graphs: Vec<Graph> = (0..args.graphs.max(1))
        .map(|i| {
            generate(&GraphGenSpec::erdos_renyi_degree(
                args.n,
                args.d,
                args.seed.wrapping_add(i as u64),
            ))
            .expect("valid")
        })
        .collect();
    let [l, p, a, b] = compare_objectives(&graphs, args.seed);
    let detail = format!("L {l:.2}  P {p:.2}  A {a:.2}  B {b:.2}");
    vec![
        check(S, "bias-beats-laplacian", b >= 1.05 * l, &detail),
        check(S, "bias-beats-perturbed-laplacian", b >= 1.05 * p, &detail),
        check(S, "bias-matches-adjacency", b >= a, &detail),
    ]
}

pub fn run(args: &VerifyArgs) -> Vec<Check> {
    let mut out = Vec::new();
    let wants = |s: Suite| args.suite == s || args.suite == Suite::All;
    let default = args.suite == Suite::Default;
    if wants(Suite::FixedPoints) || default {
        out.extend(fixed_points(args));
    }
    if wants(Suite::Exact) || default {
        out.extend(exact(args));
    }
    if wants(Suite::Solver) || default {
        out.extend(solver(args));
    }
    if wants(Suite::Escapability) {
        out.extend(escapability(args));
    }
    if wants(Suite::Comparison) {
        out.extend(comparison(args));
    }
    out
}
