//! Brute-force references.
//!
//! Deliberately naive and size-guarded. Nothing here calls into the solver,
//! objective, or local-search code; only the graph's edge list is read.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::ObjectiveSpec;
use serde::{Deserialize, Serialize};

pub const MIS_LIMIT: usize = 26;
pub const MAXCUT_LIMIT: usize = 24;
pub const FIXED_POINT_LIMIT: usize = 16;
pub const DENSE_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub optimum: u64,
    /// One optimal solution as a membership / side vector.
    pub solution: Vec<bool>,
    /// Number of optimal solutions, when the oracle counts them.
    pub count: Option<u64>,
    /// FNV-1a hash of `n` and the sorted edge list.
    pub fingerprint: u64,
}

pub fn fingerprint(g: &Graph) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(g.n() as u64);
    for (u, v) in g.edges() {
        feed(u as u64);
        feed(v as u64);
    }
    h
}

fn guard(g: &Graph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    Ok(())
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    let mut masks = vec![0u32; g.n()];
    for (u, v) in g.edges() {
        masks[u] |= 1 << v;
        masks[v] |= 1 << u;
    }
    masks
}

fn bits_to_vec(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

/// Maximum independent set by branch and bound (`n ≤ 26`).
pub fn exact_mis(g: &Graph) -> Result<ExactResult> {
    guard(g, MIS_LIMIT)?;
    let n = g.n();
    let adj = neighbor_masks(g);
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut best = 0u32;
    branch(&adj, all, 0, &mut best);
    Ok(ExactResult {
        optimum: u64::from(best.count_ones()),
        solution: bits_to_vec(best, n),
        count: None,
        fingerprint: fingerprint(g),
    })
}

// `cand`: vertices still addable; `chosen`: current set.
fn branch(adj: &[u32], cand: u32, chosen: u32, best: &mut u32) {
    if cand == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let bit = 1u32 << v;
    // take v
    branch(adj, cand & !bit & !adj[v], chosen | bit, best);
    // skip v (only useful if v has a candidate neighbor)
    if cand & adj[v] != 0 {
        branch(adj, cand & !bit, chosen, best);
    }
}

/// Maximum cut by exhaustive Gray-code scan over `2^{n−1}` partitions with
/// vertex `n−1` fixed on the unselected side (`n ≤ 24`). Counts optimal
/// partitions up to complement.
pub fn exact_maxcut(g: &Graph) -> Result<ExactResult> {
    guard(g, MAXCUT_LIMIT)?;
    let n = g.n();
    if n <= 1 {
        return Ok(ExactResult {
            optimum: 0,
            solution: vec![false; n],
            count: Some(1),
            fingerprint: fingerprint(g),
        });
    }
    let adj = neighbor_masks(g);
    let mut mask = 0u32;
    let mut cut: i64 = 0;
    let (mut best, mut best_mask, mut count) = (0i64, 0u32, 1u64);
    for k in 1u64..1u64 << (n - 1) {
        let v = k.trailing_zeros() as usize;
        // flipping v turns its same-side neighbors into cross ones and back
        let deg = i64::from(adj[v].count_ones());
        let v_in = mask >> v & 1 == 1;
        let same_before = if v_in {
            i64::from((adj[v] & mask).count_ones())
        } else {
            i64::from((adj[v] & !mask).count_ones())
        };
        cut += same_before - (deg - same_before);
        mask ^= 1 << v;
        if cut > best {
            best = cut;
            best_mask = mask;
            count = 1;
        } else if cut == best {
            count += 1;
        }
    }
    Ok(ExactResult {
        optimum: best as u64,
        solution: bits_to_vec(best_mask, n),
        count: Some(count),
        fingerprint: fingerprint(g),
    })
}

/// Classification of one binary state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryPoint {
    /// Bit `v` set ⇔ `x_v` at the upper bound.
    pub mask: u32,
    /// `x` is unchanged by one projected ascent step of any size.
    pub fixed: bool,
}

/// Scans all `2^n` binary states (`n ≤ 16`) and classifies each as a PGA
/// fixed point or not, using a dense gradient.
///
/// At a box corner a projected step leaves `x` unchanged exactly when the
/// gradient points out of the box (or vanishes) in every coordinate.
pub fn enumerate_fixed_points(spec: &ObjectiveSpec, g: &Graph) -> Result<Vec<BinaryPoint>> {
    guard(g, FIXED_POINT_LIMIT)?;
    let n = g.n();
    let lower = match spec {
        ObjectiveSpec::MisQubo { .. } => 0.0,
        _ => -1.0,
    };
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..1 << n {
        let x: Vec<f64> = (0..n).map(|v| if mask >> v & 1 == 1 { 1.0 } else { lower }).collect();
        let (_, grad) = dense_unchecked(spec, g, &x);
        let fixed = x
            .iter()
            .zip(&grad)
            .all(|(&xi, &gi)| if xi == 1.0 { gi >= 0.0 } else { gi <= 0.0 });
        out.push(BinaryPoint { mask, fixed });
    }
    Ok(out)
}

/// Value and gradient through explicitly materialized dense `A`, `D`, `L`
/// (`n ≤ 256`).
pub fn dense_reference(spec: &ObjectiveSpec, g: &Graph, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    guard(g, DENSE_LIMIT)?;
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    Ok(dense_unchecked(spec, g, x))
}

fn dense_unchecked(spec: &ObjectiveSpec, g: &Graph, x: &[f64]) -> (f64, Vec<f64>) {
    let n = g.n();
    let mut a = vec![vec![0.0f64; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    let deg: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let lap: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { deg[i] } else { -a[i][j] }).collect())
        .collect();
    let matvec = |m: &[Vec<f64>]| -> Vec<f64> {
        m.iter()
            .map(|row| row.iter().zip(x).map(|(r, xi)| r * xi).sum())
            .collect()
    };
    let dot = |p: &[f64], q: &[f64]| -> f64 { p.iter().zip(q).map(|(a, b)| a * b).sum() };
    let ax = matvec(&a);
    let lx = matvec(&lap);
    let sum: f64 = x.iter().sum();
    let xax = dot(x, &ax);
    let xlx = dot(x, &lx);
    let xx = dot(x, x);
    match *spec {
        ObjectiveSpec::MisQubo { gamma } => (sum - gamma / 2.0 * xax, ax.iter().map(|t| 1.0 - gamma * t).collect()),
        ObjectiveSpec::Laplacian => (xlx / 4.0, lx.iter().map(|t| t / 2.0).collect()),
        ObjectiveSpec::PerturbedLaplacian { lambda } => (
            xlx + lambda * xx,
            lx.iter().zip(x).map(|(l, xi)| 2.0 * (l + lambda * xi)).collect(),
        ),
        ObjectiveSpec::Adjacency => (-xax, ax.iter().map(|t| -2.0 * t).collect()),
        ObjectiveSpec::PerturbedBias { lambda } => {
            (-lambda * sum - xax, ax.iter().map(|t| -2.0 * t - lambda).collect())
        }
    }
}

/// Every maximal independent set, as bitmasks (`n ≤ 26`).
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<u32>> {
    guard(g, MIS_LIMIT)?;
    let n = g.n();
    let adj = neighbor_masks(g);
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let independent = (0..n).all(|v| mask >> v & 1 == 0 || adj[v] & mask == 0);
        let maximal = (0..n).all(|v| mask >> v & 1 == 1 || adj[v] & mask != 0);
        if independent && maximal {
            out.push(mask);
        }
    }
    Ok(out)
}

/// Cut value of the partition encoded by `mask` (bit set ⇔ side `S`).
pub fn cut_of_mask(g: &Graph, mask: u32) -> u64 {
    g.edges().filter(|&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count() as u64
}

/// Whether moving a single vertex across the cut strictly increases it.
pub fn is_one_flip_repairable(g: &Graph, mask: u32) -> bool {
    let base = cut_of_mask(g, mask);
    (0..g.n()).any(|v| cut_of_mask(g, mask ^ (1 << v)) > base)
}
