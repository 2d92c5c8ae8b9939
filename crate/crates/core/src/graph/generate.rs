use super::Graph;
use crate::error::{Error, Result};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Random graph model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    /// G(n, p): every pair is an edge independently with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// Preferential attachment; every new vertex attaches `m_attach` edges.
    BarabasiAlbert { n: usize, m_attach: usize },
    /// `k` near-equal blocks, intra-block probability `p_in`, inter `p_out`.
    StochasticBlock { n: usize, k: usize, p_in: f64, p_out: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphGenSpec {
    #[serde(flatten)]
    pub kind: GraphKind,
    pub seed: u64,
}

impl GraphGenSpec {
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Self {
        Self {
            kind: GraphKind::ErdosRenyi { n, p },
            seed,
        }
    }

    /// ER graph with expected average degree `d` (`p = d / n`).
    pub fn erdos_renyi_degree(n: usize, d: f64, seed: u64) -> Self {
        let p = if n == 0 { 0.0 } else { d / n as f64 };
        Self::erdos_renyi(n, p, seed)
    }

    pub fn barabasi_albert(n: usize, m_attach: usize, seed: u64) -> Self {
        Self {
            kind: GraphKind::BarabasiAlbert { n, m_attach },
            seed,
        }
    }

    pub fn stochastic_block(n: usize, k: usize, p_in: f64, p_out: f64, seed: u64) -> Self {
        Self {
            kind: GraphKind::StochasticBlock { n, k, p_in, p_out },
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidGenerator(format!("{name} = {p} is not in [0, 1]")))
            }
        };
        match self.kind {
            GraphKind::ErdosRenyi { p, .. } => prob("p", p),
            GraphKind::BarabasiAlbert { n, m_attach } => {
                if m_attach == 0 || m_attach >= n {
                    Err(Error::InvalidGenerator(format!(
                        "attachment count {m_attach} must satisfy 1 <= m' < n = {n}"
                    )))
                } else {
                    Ok(())
                }
            }
            GraphKind::StochasticBlock { n, k, p_in, p_out } => {
                prob("p_in", p_in)?;
                prob("p_out", p_out)?;
                if k == 0 || k > n.max(1) {
                    return Err(Error::InvalidGenerator(format!("block count {k} invalid for n = {n}")));
                }
                if p_in <= p_out {
                    return Err(Error::InvalidGenerator(format!(
                        "p_in = {p_in} must exceed p_out = {p_out}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Samples a graph. Deterministic in `spec` (including the seed).
pub fn generate(spec: &GraphGenSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let g = match spec.kind {
        GraphKind::ErdosRenyi { n, p } => bernoulli_pairs(n, &mut rng, |_, _| p),
        GraphKind::StochasticBlock { n, k, p_in, p_out } => {
            let block = block_labels(n, k);
            bernoulli_pairs(n, &mut rng, |u, v| if block[u] == block[v] { p_in } else { p_out })
        }
        GraphKind::BarabasiAlbert { n, m_attach } => barabasi_albert(n, m_attach, &mut rng),
    };
    debug_assert!(g.check_invariants().is_ok());
    Ok(g)
}

// One uniform draw per unordered pair, visited in canonical (u < v) order.
fn bernoulli_pairs<F>(n: usize, rng: &mut ChaCha8Rng, prob: F) -> Graph
where
    F: Fn(usize, usize) -> f64,
{
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < prob(u, v) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_canonical_pairs(n, &pairs)
}

// Blocks of size ⌈n/k⌉ or ⌊n/k⌋, larger blocks first.
fn block_labels(n: usize, k: usize) -> Vec<usize> {
    let base = n / k;
    let extra = n % k;
    (0..k)
        .flat_map(|b| std::iter::repeat_n(b, base + usize::from(b < extra)))
        .collect()
}

// Seed graph is the star on the first m' + 1 vertices; each later vertex picks
// m' distinct targets with probability proportional to degree.
fn barabasi_albert(n: usize, m_attach: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::with_capacity(m_attach * n);
    let mut repeated = Vec::with_capacity(2 * m_attach * n);
    for leaf in 1..=m_attach {
        edges.push((0, leaf));
        repeated.push(0);
        repeated.push(leaf);
    }
    let mut targets = Vec::with_capacity(m_attach);
    for source in m_attach + 1..n {
        targets.clear();
        while targets.len() < m_attach {
            let t = *repeated.choose(rng).expect("seed star is non-empty");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, source));
            repeated.push(t);
            repeated.push(source);
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}
