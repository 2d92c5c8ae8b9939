mod common;

use common::*;
use mqo_core::objectives::{cut_value, extract_solution, threshold};
use mqo_core::oracle::dense_reference;
use mqo_core::{BoxDomain, ObjectiveSpec, Problem, RelaxedState, Solution};
use proptest::prelude::*;

fn state(spec: &ObjectiveSpec, x: &[f64]) -> RelaxedState {
    RelaxedState::new(x.to_vec(), spec.domain()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn gradients_match_central_differences((g, x) in graph_and_point(1, 24, -0.9, 0.9)) {
        let h = 1e-5;
        for spec in all_objectives() {
            // MIS points live in the unit box
            let x: Vec<f64> = match spec.domain() {
                BoxDomain::UnitBox => x.iter().map(|t| (t + 1.0) / 2.0).collect(),
                BoxDomain::SymmetricBox => x.clone(),
            };
            let grad = spec.gradient(&g, &state(&spec, &x)).unwrap();
            for i in 0..g.n() {
                let mut up = x.clone();
                let mut down = x.clone();
                up[i] += h;
                down[i] -= h;
                let fd = (spec.eval(&g, &up) - spec.eval(&g, &down)) / (2.0 * h);
                prop_assert!((fd - grad[i]).abs() <= 1e-6 * (1.0 + grad[i].abs()),
                    "{}: coordinate {} fd {} vs {}", spec.name(), i, fd, grad[i]);
            }
        }
    }

    #[test]
    fn value_and_gradient_match_dense((g, x) in graph_and_point(1, 40, -1.0, 1.0)) {
        for spec in all_objectives() {
            let x: Vec<f64> = match spec.domain() {
                BoxDomain::UnitBox => x.iter().map(|t| (t + 1.0) / 2.0).collect(),
                BoxDomain::SymmetricBox => x.clone(),
            };
            let (value, grad) = dense_reference(&spec, &g, &x).unwrap();
            let s = state(&spec, &x);
            prop_assert!((spec.value(&g, &s).unwrap() - value).abs() <= 1e-9 * (1.0 + value.abs()));
            for (a, b) in spec.gradient(&g, &s).unwrap().iter().zip(&grad) {
                prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
            }
        }
    }

    #[test]
    fn bias_offset_identity((g, x) in graph_and_point(1, 40, -1.0, 1.0), lambda in 0.0f64..2.0) {
        let fb = ObjectiveSpec::PerturbedBias { lambda }.eval(&g, &x);
        let fa = ObjectiveSpec::Adjacency.eval(&g, &x);
        let sum: f64 = x.iter().sum();
        prop_assert!((fb - fa + lambda * sum).abs() <= 1e-9 * (1.0 + fa.abs()));
    }

    #[test]
    fn laplacian_value_is_cut_on_signs((g, x) in graph_and_signs(1, 64)) {
        let side = threshold(Problem::MaxCut, &x);
        prop_assert_eq!(ObjectiveSpec::Laplacian.eval(&g, &x), cut_value(&g, &side) as f64);
    }

    #[test]
    fn extraction_round_trips_solutions((g, x) in graph_and_signs(1, 40)) {
        let side: Vec<bool> = x.iter().map(|&t| t > 0.0).collect();
        let sol = Solution::from_side(&g, side);
        let back = extract_solution(Problem::MaxCut, &g, &sol.encode(g.n()));
        prop_assert_eq!(back, sol);
    }
}

#[test]
fn binary_identities_exhaustive() {
    for seed in 0..6 {
        for n in [10, 12] {
            let g = er(n, 0.4, seed);
            let m = g.m() as f64;
            for mask in 0u32..1 << n {
                let x = signs_of_mask(mask, n);
                let fl = ObjectiveSpec::Laplacian.eval(&g, &x);
                let cut = cut_value(&g, &bits_of_mask(mask, n)) as f64;
                assert_eq!(fl, cut);
                if n <= 10 {
                    assert_eq!(ObjectiveSpec::Adjacency.eval(&g, &x), 4.0 * fl - 2.0 * m);
                }
            }
        }
    }
}

#[test]
fn k3_interior_stationary_points() {
    let g = mqo_core::graph::named::complete(3);
    for t in [-0.5, 0.0, 0.5] {
        let x = RelaxedState::new(vec![t, 1.0, -1.0], BoxDomain::SymmetricBox).unwrap();
        let grad = ObjectiveSpec::Adjacency.gradient(&g, &x).unwrap();
        assert_eq!(grad[0], 0.0);
    }
}

#[test]
fn constant_state_has_empty_cut() {
    let g = er(30, 0.5, 3);
    for c in [0.2, 0.9] {
        let x = RelaxedState::constant(30, c, BoxDomain::SymmetricBox).unwrap();
        assert!(ObjectiveSpec::Laplacian
            .gradient(&g, &x)
            .unwrap()
            .iter()
            .all(|&t| t == 0.0));
        assert_eq!(extract_solution(Problem::MaxCut, &g, &x).score(), 0);
    }
}
