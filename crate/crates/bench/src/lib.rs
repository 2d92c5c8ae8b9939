//! Seeded fixtures shared by the benchmarks and the scaling smoke test.

use mqo_core::graph::generate;
use mqo_core::{BoxDomain, Graph, GraphGenSpec, RelaxedState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi graph with expected mean degree `d`.
pub fn er_graph(n: usize, d: f64, seed: u64) -> Graph {
    generate(&GraphGenSpec::erdos_renyi_degree(n, d, seed)).expect("valid generator parameters")
}

/// Uniform random point in the interior of `domain`.
pub fn random_state(n: usize, domain: BoxDomain, seed: u64) -> RelaxedState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = (0..n)
        .map(|_| rng.random_range(domain.lower()..domain.upper()))
        .collect();
    RelaxedState::new(x, domain).expect("point lies in the box")
}

/// Uniform random boolean vector.
pub fn random_bits(n: usize, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random()).collect()
}
