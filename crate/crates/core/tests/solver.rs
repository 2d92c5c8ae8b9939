mod common;

use common::*;
use mqo_core::graph::named;
use mqo_core::mqo::{solve_maxcut, solve_mis, solve_pooled, toy_reset_experiment, PoolConfig};
use mqo_core::oracle::{exact_maxcut, exact_mis};
use mqo_core::{Graph, Problem, RunReport, SolverConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(problem: Problem, loops: usize, seed: u64) -> SolverConfig {
    SolverConfig {
        max_loops: Some(loops),
        time_budget: 30.0,
        seed,
        ..SolverConfig::for_problem(problem)
    }
}

fn solve(problem: Problem, g: &Graph, cfg: &SolverConfig) -> RunReport {
    let r = match problem {
        Problem::Mis => solve_mis(g, cfg),
        Problem::MaxCut => solve_maxcut(g, cfg),
    }
    .unwrap();
    r.verify(g).unwrap();
    r
}

fn without_timing(mut r: RunReport) -> RunReport {
    r.elapsed_secs = 0.0;
    r
}

#[test]
fn named_graph_optima() {
    let mis = |g: &Graph| solve(Problem::Mis, g, &cfg(Problem::Mis, 3, 1)).best_score;
    let cut = |g: &Graph| solve(Problem::MaxCut, g, &cfg(Problem::MaxCut, 3, 1)).best_score;
    assert_eq!(mis(&named::cycle(5)), 2);
    assert_eq!(mis(&named::petersen()), 4);
    assert_eq!(mis(&named::star(6)), 6);
    assert_eq!(cut(&named::complete(3)), 2);
    assert_eq!(cut(&named::petersen()), 12);
    assert_eq!(cut(&named::cycle(6)), 6);
}

#[test]
fn isolated_vertices_join_the_independent_set() {
    let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0)]).unwrap();
    let r = solve(Problem::Mis, &g, &cfg(Problem::Mis, 2, 3));
    assert_eq!(r.isolated, 4);
    assert_eq!(r.best_score, 5);
    let r = solve(Problem::MaxCut, &g, &cfg(Problem::MaxCut, 2, 3));
    assert_eq!(r.best_score, 2);
}

#[test]
fn edgeless_graphs_are_solved_outright() {
    let g = Graph::empty(5);
    assert_eq!(solve(Problem::Mis, &g, &cfg(Problem::Mis, 1, 0)).best_score, 5);
    assert_eq!(solve(Problem::MaxCut, &g, &cfg(Problem::MaxCut, 1, 0)).best_score, 0);
}

#[test]
fn loop_capped_runs_are_reproducible() {
    let g = er(120, 0.1, 9);
    for problem in [Problem::Mis, Problem::MaxCut] {
        let c = cfg(problem, 3, 42);
        let a = without_timing(solve(problem, &g, &c));
        let b = without_timing(solve(problem, &g, &c));
        assert_eq!(a, b);
    }
}

#[test]
fn unit_pool_matches_the_sequential_solver() {
    let g = er(100, 0.1, 4);
    for problem in [Problem::Mis, Problem::MaxCut] {
        let c = cfg(problem, 2, 5);
        let seq = without_timing(solve(problem, &g, &c));
        let pooled = without_timing(solve_pooled(&g, &c).unwrap());
        assert_eq!(seq, pooled);
    }
}

#[test]
fn pooled_fresh_batch_dominates_a_single_trajectory() {
    // slot 0 of the pool replays the singleton's RNG stream, so one fresh
    // batch can only match or beat it
    let g = er(200, 0.1, 8);
    for seed in 0..3 {
        let mut c = cfg(Problem::MaxCut, 1, seed);
        c.t_gs = 0;
        c.local_search = false;
        let single = solve(Problem::MaxCut, &g, &c);
        c.pool = PoolConfig { batch: 8, keep: 4 };
        let pooled = solve_pooled(&g, &c).unwrap();
        pooled.verify(&g).unwrap();
        assert!(pooled.best_score >= single.best_score);
        assert!(pooled.pool.final_scores.len() <= 4);
        assert!(pooled.pool.final_scores.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(pooled.pool.final_scores[0], pooled.best_score);
    }
}

#[test]
fn pooled_runs_are_reproducible() {
    let g = er(150, 0.08, 2);
    let mut c = cfg(Problem::Mis, 2, 13);
    c.t_gs = 10;
    c.pool = PoolConfig::DEFAULT_POOLED;
    let a = without_timing(solve_pooled(&g, &c).unwrap());
    let b = without_timing(solve_pooled(&g, &c).unwrap());
    assert_eq!(a, b);
}

#[test]
fn solutions_never_beat_the_exact_optimum() {
    let mut hits = 0;
    let total = 40;
    for i in 0..total {
        let g = er(8 + i % 7, if i % 2 == 0 { 0.3 } else { 0.5 }, 500 + i as u64);
        let best_mis = exact_mis(&g).unwrap().optimum;
        let best_cut = exact_maxcut(&g).unwrap().optimum;
        let mis = solve(Problem::Mis, &g, &cfg(Problem::Mis, 3, i as u64)).best_score;
        let cut = solve(Problem::MaxCut, &g, &cfg(Problem::MaxCut, 3, i as u64)).best_score;
        assert!(mis <= best_mis && cut <= best_cut);
        hits += usize::from(mis == best_mis && cut == best_cut);
    }
    assert!(hits >= total * 9 / 10, "{hits}/{total} exact");
}

#[test]
fn budget_is_respected() {
    let g = er(400, 0.05, 1);
    let mut c = SolverConfig::mis();
    c.time_budget = 0.5;
    let r = solve(Problem::Mis, &g, &c);
    assert!(r.elapsed_secs <= 1.5, "{}", r.elapsed_secs);
    assert!(r.best_score > 0);
}

#[test]
fn mis_reports_are_maximal_independent_sets() {
    let g = er(200, 0.05, 21);
    let r = solve(Problem::Mis, &g, &cfg(Problem::Mis, 2, 21));
    let members = r.best.unwrap().indicator(g.n());
    assert!((0..g.n()).all(|v| members[v] != g.neighbors(v).iter().any(|&u| members[u])));
}

#[test]
fn coordinate_reset_beats_full_restart() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let records: Vec<_> = (0..100).map(|_| toy_reset_experiment(16, 0.05, &mut rng)).collect();
    let reset = records.iter().filter(|r| r.reset_attempts.is_some()).count();
    let restart = records.iter().filter(|r| r.restart_attempts.is_some()).count();
    assert!(reset >= 95, "{reset}");
    assert!(restart < 50, "{restart}");
}
