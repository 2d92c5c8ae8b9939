//! Immutable undirected graphs in compressed sparse row form.
//!
//! A [`Graph`] is the single source of the adjacency matrix `A`, the degree
//! matrix `D` and the Laplacian `L = D - A`. None of these are materialized:
//! objectives consume them through the O(m) actions
//! [`Graph::adjacency_apply`] and [`Graph::laplacian_apply`].

mod generate;
mod io;

pub use generate::{generate, GraphGenSpec, GraphKind};
pub use io::{parse_dimacs, read_canonical, write_canonical, DimacsGraph};

use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are sorted ascending, symmetric, and free of self-loops and
/// duplicates. The vertex `v` owns `neighbors[offsets[v]..offsets[v + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    max_degree: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            max_degree: 0,
        }
    }

    /// Builds a graph from an undirected edge list.
    ///
    /// Edges may appear in either orientation and more than once; duplicates
    /// collapse. Self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_canonical_pairs(n, &pairs))
    }

    // `pairs` must be sorted, deduplicated, in range and satisfy u < v.
    fn from_canonical_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; 2 * pairs.len()];
        // Visiting pairs in (u, v) order fills every list in ascending order:
        // for a fixed w, lower neighbors arrive first (as `v == w`, sorted by
        // u), then higher ones (as `u == w`, sorted by v).
        for &(u, v) in pairs {
            neighbors[cursor[u]] = v;
            cursor[u] += 1;
            neighbors[cursor[v]] = u;
            cursor[v] += 1;
        }
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        let g = Self {
            offsets,
            neighbors,
            max_degree,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Maximum degree Δ (zero for an edgeless graph).
    #[inline]
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn mean_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n() as f64
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Verifies symmetry, loop-freedom, sortedness and the degree-sum identity.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let mut degree_sum = 0;
        let mut max_degree = 0;
        for v in 0..n {
            let nbrs = self.neighbors(v);
            degree_sum += nbrs.len();
            max_degree = max_degree.max(nbrs.len());
            for (i, &u) in nbrs.iter().enumerate() {
                if u >= n {
                    return Err(Error::InvalidGraph(format!("neighbor {u} of {v} out of range")));
                }
                if u == v {
                    return Err(Error::InvalidGraph(format!("self-loop at {v}")));
                }
                if i > 0 && nbrs[i - 1] >= u {
                    return Err(Error::InvalidGraph(format!("neighbors of {v} not strictly sorted")));
                }
                if self.neighbors(u).binary_search(&v).is_err() {
                    return Err(Error::InvalidGraph(format!("edge ({v}, {u}) is not symmetric")));
                }
            }
        }
        if degree_sum != 2 * self.m() || degree_sum % 2 != 0 {
            return Err(Error::InvalidGraph("degree sum is not 2m".into()));
        }
        if max_degree != self.max_degree {
            return Err(Error::InvalidGraph("stale maximum degree".into()));
        }
        Ok(())
    }

    /// `y = A x`, i.e. `y_v = Σ_{u ∈ N(v)} x_u`.
    pub fn adjacency_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n()];
        self.adjacency_apply_into(x, &mut y)?;
        Ok(y)
    }

    pub fn adjacency_apply_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        self.check_dims(x, y)?;
        for (v, out) in y.iter_mut().enumerate() {
            *out = self.neighbors(v).iter().map(|&u| x[u]).sum();
        }
        Ok(())
    }

    /// `y = L x = D x - A x`.
    ///
    /// Computed as `y_v = Σ_{u ∈ N(v)} (x_v - x_u)`, so every constant vector
    /// maps to exactly zero in floating point.
    pub fn laplacian_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n()];
        self.laplacian_apply_into(x, &mut y)?;
        Ok(y)
    }

    pub fn laplacian_apply_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        self.check_dims(x, y)?;
        for (v, out) in y.iter_mut().enumerate() {
            let xv = x[v];
            *out = self.neighbors(v).iter().map(|&u| xv - x[u]).sum();
        }
        Ok(())
    }

    /// Fails unless `len == n`.
    pub fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: len,
            });
        }
        Ok(())
    }

    fn check_dims(&self, x: &[f64], y: &[f64]) -> Result<()> {
        self.check_len(x.len())?;
        self.check_len(y.len())
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n() {
                return Err(Error::InvalidGraph(format!("vertex {v} out of range")));
            }
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &u in self.neighbors(v) {
                let j = index[u];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len(), edges)
    }
}

/// Result of [`strip_isolated`].
#[derive(Debug, Clone)]
pub struct StrippedGraph {
    /// Graph on the non-isolated vertices (minimum degree ≥ 1 unless empty).
    pub core: Graph,
    /// Original indices of the removed degree-0 vertices, ascending.
    pub removed: Vec<usize>,
    /// `core_to_original[i]` is the original index of core vertex `i`.
    pub core_to_original: Vec<usize>,
}

impl StrippedGraph {
    pub fn is_identity(&self) -> bool {
        self.removed.is_empty()
    }
}

/// Removes degree-0 vertices.
///
/// Isolated vertices belong to every maximum independent set and never
/// contribute to a cut, so solvers work on the core and map back.
pub fn strip_isolated(g: &Graph) -> StrippedGraph {
    let (kept, removed): (Vec<usize>, Vec<usize>) = (0..g.n()).partition(|&v| g.degree(v) > 0);
    if removed.is_empty() {
        return StrippedGraph {
            core: g.clone(),
            removed,
            core_to_original: kept,
        };
    }
    let core = g.induced_subgraph(&kept).expect("kept vertices are in range");
    StrippedGraph {
        core,
        removed,
        core_to_original: kept,
    }
}

/// Connected components, each sorted ascending, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Small named graphs used across tests, examples and `mqo verify`.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn from_edges_dedups_and_sorts() {
        let g = Graph::from_edges(4, [(2, 0), (0, 2), (3, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(1), &[0, 3]);
        assert_eq!(g.max_degree(), 2);
        g.check_invariants().unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3)]);
    }

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn adjacency_apply_on_triangle() {
        let g = complete(3);
        assert_eq!(g.adjacency_apply(&[1.0, -1.0, -1.0]).unwrap(), vec![-2.0, 0.0, 0.0]);
        assert_eq!(g.adjacency_apply(&[0.0; 3]).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn laplacian_apply_on_triangle() {
        let g = complete(3);
        assert_eq!(g.laplacian_apply(&[1.0, -1.0, -1.0]).unwrap(), vec![4.0, -2.0, -2.0]);
    }

    #[test]
    fn laplacian_kills_constants_exactly() {
        let g = petersen();
        for c in [1.0, -0.3, 0.123456789, 1e-7] {
            let y = g.laplacian_apply(&[c; 10]).unwrap();
            assert!(y.iter().all(|&v| v == 0.0), "c = {c}: {y:?}");
        }
    }

    #[test]
    fn matvec_dimension_mismatch() {
        let g = complete(3);
        assert_eq!(
            g.adjacency_apply(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
        assert!(g.laplacian_apply(&[1.0; 4]).is_err());
    }

    #[test]
    fn strip_isolated_cases() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let s = strip_isolated(&g);
        assert_eq!(s.core.n(), 2);
        assert_eq!(s.removed, vec![2]);
        assert_eq!(s.core_to_original, vec![0, 1]);

        let s = strip_isolated(&complete(4));
        assert!(s.is_identity());
        assert_eq!(s.core_to_original, vec![0, 1, 2, 3]);

        let s = strip_isolated(&star(3));
        assert!(s.is_identity());
        assert_eq!(s.core.m(), 3);
    }

    #[test]
    fn strip_isolated_relabels() {
        let g = Graph::from_edges(5, [(1, 4), (3, 4)]).unwrap();
        let s = strip_isolated(&g);
        assert_eq!(s.removed, vec![0, 2]);
        assert_eq!(s.core_to_original, vec![1, 3, 4]);
        assert_eq!(s.core.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn components() {
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let comps = connected_components(&two_triangles);
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4, 5]]);

        let comps = connected_components(&Graph::empty(5));
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn named_graphs_are_well_formed() {
        for g in [complete(5), cycle(7), path(4), star(4), petersen()] {
            g.check_invariants().unwrap();
        }
        let p = petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.degrees().all(|d| d == 3));
    }

    #[test]
    fn has_edge_both_orientations() {
        let g = cycle(5);
        assert!(g.has_edge(0, 4) && g.has_edge(4, 0));
        assert!(!g.has_edge(0, 2));
    }
}
