//! Discrete local search.
//!
//! - MIS: iterated (1,2)-swaps. Drop one selected vertex `v`, add two
//!   non-adjacent vertices whose only selected neighbor was `v`, then
//!   re-maximalize greedily.
//! - Max-cut: 1-flips (move one vertex across the cut) and 2-flips (swap the
//!   sides of an adjacent cross pair), alternated until neither improves.
//!
//! All scans are first-improvement in ascending index order.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::{is_independent_indicator, Solution};
use serde::{Deserialize, Serialize};

/// `m_v = |N(v) ∩ I|` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessTable {
    counts: Vec<u32>,
}

impl TightnessTable {
    pub fn new(g: &Graph, in_set: &[bool]) -> Self {
        let counts = (0..g.n())
            .map(|v| g.neighbors(v).iter().filter(|&&u| in_set[u]).count() as u32)
            .collect();
        Self { counts }
    }

    pub fn count(&self, v: usize) -> u32 {
        self.counts[v]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn insert(&mut self, g: &Graph, v: usize) {
        g.neighbors(v).iter().for_each(|&u| self.counts[u] += 1);
    }

    pub fn remove(&mut self, g: &Graph, v: usize) {
        g.neighbors(v).iter().for_each(|&u| self.counts[u] -= 1);
    }
}

/// 1-flip gains `Δ_v = (#same-side neighbors) − (#cross neighbors)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainTable {
    gains: Vec<i64>,
}

impl GainTable {
    pub fn new(g: &Graph, side: &[bool]) -> Self {
        let gains = (0..g.n())
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .map(|&u| if side[u] == side[v] { 1 } else { -1 })
                    .sum()
            })
            .collect();
        Self { gains }
    }

    pub fn gain(&self, v: usize) -> i64 {
        self.gains[v]
    }

    pub fn gains(&self) -> &[i64] {
        &self.gains
    }

    /// Flips `v` in `side` and updates the affected gains.
    pub fn flip(&mut self, g: &Graph, side: &mut [bool], v: usize) {
        for &u in g.neighbors(v) {
            // edge (u, v) toggles between same-side and cross
            self.gains[u] += if side[u] == side[v] { -2 } else { 2 };
        }
        self.gains[v] = -self.gains[v];
        side[v] = !side[v];
    }
}

fn check_mis_input(g: &Graph, in_set: &[bool], tight: &TightnessTable) -> Result<()> {
    g.check_len(in_set.len())?;
    if !is_independent_indicator(g, in_set) {
        return Err(Error::Precondition("vertex set is not independent".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| !in_set[v] && tight.count(v) == 0) {
        return Err(Error::Precondition(format!(
            "independent set is not maximal (vertex {v} can be added)"
        )));
    }
    Ok(())
}

/// Greedily adds free vertices in ascending (degree, index) order. Returns
/// the number of vertices added.
pub fn maximalize(g: &Graph, in_set: &mut [bool]) -> usize {
    let mut tight = TightnessTable::new(g, in_set);
    let mut order: Vec<usize> = (0..g.n()).filter(|&v| !in_set[v] && tight.count(v) == 0).collect();
    add_free(g, in_set, &mut tight, &mut order)
}

fn add_free(g: &Graph, in_set: &mut [bool], tight: &mut TightnessTable, candidates: &mut [usize]) -> usize {
    candidates.sort_unstable_by_key(|&v| (g.degree(v), v));
    let mut added = 0;
    for &v in candidates.iter() {
        if !in_set[v] && tight.count(v) == 0 {
            in_set[v] = true;
            tight.insert(g, v);
            added += 1;
        }
    }
    added
}

// Lexicographically first non-adjacent pair in `cands` (sorted ascending).
fn non_adjacent_pair(g: &Graph, cands: &[usize]) -> Option<(usize, usize)> {
    for (i, &u) in cands.iter().enumerate() {
        for &w in &cands[i + 1..] {
            if !g.has_edge(u, w) {
                return Some((u, w));
            }
        }
    }
    None
}

// Vertices outside I whose selected neighbors are a subset of {v}, ascending.
fn swap_candidates(g: &Graph, in_set: &[bool], tight: &TightnessTable, v: usize, out: &mut Vec<usize>) {
    out.clear();
    out.extend(
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !in_set[u] && tight.count(u) == 1),
    );
}

/// Applies (1,2)-swaps until none exists. Returns the number of swaps.
///
/// The input must be a maximal independent set; the output is maximal,
/// at least as large, and admits no (1,2)-swap.
pub fn one_two_swap(g: &Graph, in_set: &mut [bool]) -> Result<usize> {
    let mut tight = TightnessTable::new(g, in_set);
    check_mis_input(g, in_set, &tight)?;
    let n = g.n();
    let mut swaps = 0;
    let mut cands = Vec::new();
    let mut freed = Vec::new();
    loop {
        let mut improved = false;
        for v in 0..n {
            if !in_set[v] {
                continue;
            }
            swap_candidates(g, in_set, &tight, v, &mut cands);
            let Some((u, w)) = non_adjacent_pair(g, &cands) else {
                continue;
            };
            in_set[v] = false;
            tight.remove(g, v);
            for x in [u, w] {
                in_set[x] = true;
                tight.insert(g, x);
            }
            freed.clear();
            freed.extend(
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&x| !in_set[x] && tight.count(x) == 0),
            );
            add_free(g, in_set, &mut tight, &mut freed);
            swaps += 1;
            improved = true;
            assert!(swaps <= n, "swap count exceeds the vertex bound");
        }
        if !improved {
            break;
        }
    }
    debug_assert!(check_mis_input(g, in_set, &tight).is_ok());
    Ok(swaps)
}

/// Flips every vertex with positive gain until none is left. Returns the
/// total cut increase.
pub fn one_flip_pass(g: &Graph, side: &mut [bool]) -> u64 {
    let mut table = GainTable::new(g, side);
    one_flip_with(g, side, &mut table)
}

fn one_flip_with(g: &Graph, side: &mut [bool], table: &mut GainTable) -> u64 {
    let mut total = 0u64;
    loop {
        let mut improved = false;
        for v in 0..g.n() {
            let gain = table.gain(v);
            if gain > 0 {
                table.flip(g, side, v);
                total += gain as u64;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    debug_assert!(total <= g.m() as u64);
    total
}

/// Swaps adjacent cross pairs `(u, v)` while `Δ_u + Δ_v + 2 > 0`. Returns
/// the total cut increase.
pub fn two_flip_pass(g: &Graph, side: &mut [bool]) -> u64 {
    let mut table = GainTable::new(g, side);
    two_flip_with(g, side, &mut table)
}

fn two_flip_with(g: &Graph, side: &mut [bool], table: &mut GainTable) -> u64 {
    let mut total = 0u64;
    loop {
        let mut improved = false;
        for u in 0..g.n() {
            for i in 0..g.degree(u) {
                let v = g.neighbors(u)[i];
                if v <= u || side[u] == side[v] {
                    continue;
                }
                let gain = table.gain(u) + table.gain(v) + 2;
                if gain > 0 {
                    table.flip(g, side, u);
                    table.flip(g, side, v);
                    total += gain as u64;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    debug_assert!(total <= g.m() as u64);
    total
}

/// Alternates 1-flip and 2-flip passes until a full round gains nothing.
/// Returns the total cut increase.
pub fn one_two_flip(g: &Graph, side: &mut [bool]) -> u64 {
    let mut table = GainTable::new(g, side);
    let mut total = 0;
    loop {
        let gained = one_flip_with(g, side, &mut table) + two_flip_with(g, side, &mut table);
        if gained == 0 {
            break;
        }
        total += gained;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepairKind {
    OneTwoSwap,
    OneFlip,
    TwoFlip,
}

/// A concrete improving move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Replace selected `remove` by the non-adjacent pair `add`.
    OneTwoSwap {
        remove: usize,
        add: (usize, usize),
    },
    OneFlip {
        vertex: usize,
        gain: i64,
    },
    TwoFlip {
        u: usize,
        v: usize,
        gain: i64,
    },
}

/// Lexicographically first improving move of the given kind, if any.
///
/// For (1,2)-swaps the set must be independent; candidates are the vertices
/// outside `I` whose selected neighbors are a subset of `{v}`.
pub fn detect_repairable(g: &Graph, solution: &Solution, kind: RepairKind) -> Result<Option<Witness>> {
    match (solution, kind) {
        (Solution::IndependentSet { .. }, RepairKind::OneTwoSwap) => {
            let in_set = solution.indicator(g.n());
            if !is_independent_indicator(g, &in_set) {
                return Err(Error::Precondition("vertex set is not independent".into()));
            }
            let tight = TightnessTable::new(g, &in_set);
            let free: Vec<usize> = (0..g.n()).filter(|&u| !in_set[u] && tight.count(u) == 0).collect();
            let mut cands = Vec::new();
            for v in (0..g.n()).filter(|&v| in_set[v]) {
                swap_candidates(g, &in_set, &tight, v, &mut cands);
                cands.extend_from_slice(&free);
                cands.sort_unstable();
                if let Some(add) = non_adjacent_pair(g, &cands) {
                    return Ok(Some(Witness::OneTwoSwap { remove: v, add }));
                }
            }
            Ok(None)
        }
        (Solution::CutPartition { side, .. }, RepairKind::OneFlip) => {
            g.check_len(side.len())?;
            let table = GainTable::new(g, side);
            Ok((0..g.n()).find(|&v| table.gain(v) > 0).map(|v| Witness::OneFlip {
                vertex: v,
                gain: table.gain(v),
            }))
        }
        (Solution::CutPartition { side, .. }, RepairKind::TwoFlip) => {
            g.check_len(side.len())?;
            let table = GainTable::new(g, side);
            Ok(g.edges()
                .filter(|&(u, v)| side[u] != side[v])
                .map(|(u, v)| (u, v, table.gain(u) + table.gain(v) + 2))
                .find(|&(_, _, gain)| gain > 0)
                .map(|(u, v, gain)| Witness::TwoFlip { u, v, gain }))
        }
        _ => Err(Error::KindMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::objectives::cut_value;

    fn set(n: usize, members: &[usize]) -> Vec<bool> {
        let mut b = vec![false; n];
        members.iter().for_each(|&v| b[v] = true);
        b
    }

    #[test]
    fn swap_on_c5_optimum_is_noop() {
        let g = named::cycle(5);
        let mut s = set(5, &[0]);
        maximalize(&g, &mut s);
        assert_eq!(s.iter().filter(|&&b| b).count(), 2);
        assert_eq!(one_two_swap(&g, &mut s).unwrap(), 0);
    }

    #[test]
    fn swap_on_star_reaches_all_leaves() {
        let g = named::star(4);
        let mut s = set(5, &[0]);
        assert_eq!(one_two_swap(&g, &mut s).unwrap(), 1);
        assert_eq!(s, vec![false, true, true, true, true]);
    }

    #[test]
    fn swap_on_p5() {
        let g = named::path(5);
        let mut s = set(5, &[1, 4]);
        assert_eq!(one_two_swap(&g, &mut s).unwrap(), 1);
        assert_eq!(s, set(5, &[0, 2, 4]));
        // {1, 3} is maximal but vertex 2 has two selected neighbors, so no
        // single (1,2)-swap applies
        let mut s = set(5, &[1, 3]);
        assert_eq!(one_two_swap(&g, &mut s).unwrap(), 0);
        assert_eq!(s, set(5, &[1, 3]));
    }

    #[test]
    fn swap_rejects_bad_input() {
        let g = named::path(3);
        assert!(matches!(
            one_two_swap(&g, &mut set(3, &[0, 1])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            one_two_swap(&g, &mut set(3, &[0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn one_flip_on_k3() {
        let g = named::complete(3);
        let mut side = vec![false; 3];
        assert_eq!(one_flip_pass(&g, &mut side), 2);
        assert_eq!(cut_value(&g, &side), 2);
    }

    #[test]
    fn optimal_cuts_are_untouched() {
        let c4 = named::cycle(4);
        let mut side = vec![true, false, true, false];
        assert_eq!(one_flip_pass(&c4, &mut side), 0);
        assert_eq!(side, vec![true, false, true, false]);
        let c6 = named::cycle(6);
        let mut side = vec![true, false, true, false, true, false];
        assert_eq!(two_flip_pass(&c6, &mut side), 0);
        let p3 = named::path(3);
        let mut side = vec![false, true, false];
        assert_eq!(two_flip_pass(&p3, &mut side), 0);
        let empty = Graph::empty(4);
        let mut side = vec![true, false, false, true];
        assert_eq!(one_two_flip(&empty, &mut side), 0);
    }

    #[test]
    fn gain_table_tracks_flips() {
        let g = named::petersen();
        let mut side = vec![false; 10];
        let mut table = GainTable::new(&g, &side);
        for v in [3, 7, 3, 0, 9, 4] {
            let before = cut_value(&g, &side) as i64;
            let gain = table.gain(v);
            table.flip(&g, &mut side, v);
            assert_eq!(cut_value(&g, &side) as i64 - before, gain);
            assert_eq!(table, GainTable::new(&g, &side));
        }
    }

    #[test]
    fn detector_examples() {
        let star = named::star(4);
        let w = detect_repairable(&star, &Solution::from_members(vec![0]), RepairKind::OneTwoSwap).unwrap();
        assert_eq!(w, Some(Witness::OneTwoSwap { remove: 0, add: (1, 2) }));
        let k3 = named::complete(3);
        let same = Solution::from_side(&k3, vec![false; 3]);
        let w = detect_repairable(&k3, &same, RepairKind::OneFlip).unwrap();
        assert_eq!(w, Some(Witness::OneFlip { vertex: 0, gain: 2 }));
        let pet = named::petersen();
        let best = Solution::from_members(vec![0, 2, 8, 9]);
        best.verify(&pet).unwrap();
        assert_eq!(detect_repairable(&pet, &best, RepairKind::OneTwoSwap).unwrap(), None);
        assert!(matches!(
            detect_repairable(&k3, &same, RepairKind::OneTwoSwap),
            Err(Error::KindMismatch)
        ));
    }
}
