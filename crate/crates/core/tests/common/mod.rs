#![allow(dead_code)]

use mqo_core::graph::{generate, GraphGenSpec};
use mqo_core::Graph;
use proptest::prelude::*;

pub fn er(n: usize, p: f64, seed: u64) -> Graph {
    generate(&GraphGenSpec::erdos_renyi(n, p, seed)).unwrap()
}

/// Random ER graphs with `n ∈ [lo, hi]` and density in `[0.05, 0.8]`.
pub fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.05f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| er(n, p, seed))
}

/// A graph together with a point in `[lo, hi]^n`.
pub fn graph_and_point(n_lo: usize, n_hi: usize, lo: f64, hi: f64) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    graphs(n_lo, n_hi).prop_flat_map(move |g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(lo..=hi, n))
    })
}

/// A graph together with a `±1` vector.
pub fn graph_and_signs(n_lo: usize, n_hi: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    graphs(n_lo, n_hi).prop_flat_map(|g| {
        let n = g.n();
        let signs = proptest::collection::vec(any::<bool>(), n)
            .prop_map(|b| b.into_iter().map(|s| if s { 1.0 } else { -1.0 }).collect());
        (Just(g), signs)
    })
}

pub fn signs_of_mask(mask: u32, n: usize) -> Vec<f64> {
    (0..n).map(|v| if mask >> v & 1 == 1 { 1.0 } else { -1.0 }).collect()
}

pub fn bits_of_mask(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

/// Dense adjacency matrix built straight from the edge list.
pub fn dense_adjacency(g: &Graph) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    a
}

pub fn all_objectives() -> Vec<mqo_core::ObjectiveSpec> {
    use mqo_core::ObjectiveSpec::*;
    vec![
        MisQubo { gamma: 2.0 },
        Laplacian,
        PerturbedLaplacian { lambda: 0.001 },
        Adjacency,
        PerturbedBias { lambda: 0.001 },
    ]
}
