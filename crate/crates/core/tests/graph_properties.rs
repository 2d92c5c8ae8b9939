mod common;

use common::*;
use mqo_core::graph::{
    connected_components, generate, parse_dimacs, read_canonical, strip_isolated, write_canonical, GraphGenSpec,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_graphs_are_well_formed(g in graphs(1, 64)) {
        prop_assert!(g.check_invariants().is_ok());
        let degree_sum: usize = g.degrees().sum();
        prop_assert_eq!(degree_sum, 2 * g.m());
        for (u, v) in g.edges() {
            prop_assert!(u < v);
            prop_assert!(g.has_edge(v, u));
        }
    }

    #[test]
    fn laplacian_kills_constants(g in graphs(1, 64), c in -3.0f64..3.0) {
        let y = g.laplacian_apply(&vec![c; g.n()]).unwrap();
        prop_assert!(y.iter().all(|&t| t == 0.0));
    }

    #[test]
    fn matvecs_match_dense((g, x) in graph_and_point(1, 64, -1.0, 1.0)) {
        let a = dense_adjacency(&g);
        let ax = g.adjacency_apply(&x).unwrap();
        let lx = g.laplacian_apply(&x).unwrap();
        for i in 0..g.n() {
            let dense_ax: f64 = (0..g.n()).map(|j| a[i][j] * x[j]).sum();
            let deg: f64 = a[i].iter().sum();
            prop_assert!((ax[i] - dense_ax).abs() <= 1e-12);
            prop_assert!((lx[i] - (deg * x[i] - dense_ax)).abs() <= 1e-12);
        }
    }

    #[test]
    fn generation_is_deterministic(n in 1usize..80, p in 0.0f64..1.0, seed in any::<u64>()) {
        let spec = GraphGenSpec::erdos_renyi(n, p, seed);
        prop_assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }

    #[test]
    fn canonical_round_trip(g in graphs(1, 40)) {
        prop_assert_eq!(read_canonical(&write_canonical(&g)).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip(g in graphs(1, 40)) {
        let mut text = format!("c random\np edge {} {}\n", g.n(), g.m());
        for (u, v) in g.edges() {
            text.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        let parsed = parse_dimacs(&text).unwrap();
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(parsed.graph, g);
    }

    #[test]
    fn stripping_keeps_all_edges(n in 2usize..40, p in 0.0f64..0.15, seed in any::<u64>()) {
        let g = er(n, p, seed);
        let s = strip_isolated(&g);
        prop_assert_eq!(s.core.m(), g.m());
        prop_assert_eq!(s.core.n() + s.removed.len(), g.n());
        for &v in &s.removed {
            prop_assert_eq!(g.degree(v), 0);
        }
        for (u, v) in s.core.edges() {
            prop_assert!(g.has_edge(s.core_to_original[u], s.core_to_original[v]));
        }
    }

    #[test]
    fn components_partition_vertices(g in graphs(1, 40)) {
        let comps = connected_components(&g);
        let mut seen = vec![false; g.n()];
        for c in &comps {
            for &v in c {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        for (u, v) in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(&u) && c.contains(&v)));
        }
    }
}

#[test]
fn generator_families_are_well_formed() {
    for spec in [
        GraphGenSpec::barabasi_albert(300, 3, 7),
        GraphGenSpec::stochastic_block(200, 2, 0.3, 0.02, 7),
        GraphGenSpec::erdos_renyi_degree(500, 20.0, 7),
    ] {
        let g = generate(&spec).unwrap();
        g.check_invariants().unwrap();
        assert_eq!(g, generate(&spec).unwrap());
    }
}
