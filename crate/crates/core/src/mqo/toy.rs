//! Coordinate reset vs. full random restart on a separable double well.
//!
//! Minimize `F(x) = Σ φ(x_i)` over `[−1,1]^n` with `φ(t) = −t² − 0.1·t³`.
//! `φ` has boundary minima at `±1`, `φ(1) = −1.1 < φ(−1) = −0.9`, and an
//! unstable stationary point at 0 separating the basins: projected gradient
//! descent from `t > 0` ends at 1 and from `t < 0` at −1.

use rand::Rng;
use serde::{Deserialize, Serialize};

const STEP: f64 = 0.1;
const MAX_DESCENT: usize = 10_000;

pub fn phi(t: f64) -> f64 {
    -t * t - 0.1 * t * t * t
}

fn dphi(t: f64) -> f64 {
    -2.0 * t - 0.3 * t * t
}

/// Projected gradient descent on one coordinate until it stops moving.
pub fn descend(mut t: f64) -> f64 {
    for _ in 0..MAX_DESCENT {
        let next = (t - STEP * dphi(t)).clamp(-1.0, 1.0);
        if next == t {
            break;
        }
        t = next;
    }
    t
}

fn objective(x: &[f64]) -> f64 {
    x.iter().map(|&t| phi(t)).sum()
}

fn at_optimum(x: &[f64]) -> bool {
    x.iter().all(|&t| t == 1.0)
}

/// Attempts used by each strategy to reach `(1, …, 1)`; `None` if the
/// budget ran out first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToyRecord {
    pub n: usize,
    /// `⌈2n·ln(n/δ)⌉`.
    pub budget: usize,
    pub reset_attempts: Option<usize>,
    pub restart_attempts: Option<usize>,
}

pub fn attempt_budget(n: usize, delta: f64) -> usize {
    (2.0 * n as f64 * (n as f64 / delta).ln()).ceil().max(1.0) as usize
}

/// One trial of both strategies under the same attempt budget.
///
/// Both start from one uniform draw followed by descent. The reset strategy
/// then repeatedly redraws one uniformly chosen coordinate, descends, and
/// keeps the point only on strict improvement; full restart redraws every
/// coordinate each attempt.
pub fn toy_reset_experiment<R: Rng + ?Sized>(n: usize, delta: f64, rng: &mut R) -> ToyRecord {
    assert!((1..=30).contains(&n), "toy experiment supports 1 <= n <= 30");
    assert!(delta > 0.0 && delta < 1.0);
    let budget = attempt_budget(n, delta);
    let draw = |rng: &mut R| descend(rng.random_range(-1.0..=1.0));

    let mut best: Vec<f64> = (0..n).map(|_| draw(rng)).collect();
    let mut best_val = objective(&best);
    let mut reset_attempts = at_optimum(&best).then_some(0);
    for attempt in 1..=budget {
        if reset_attempts.is_some() {
            break;
        }
        let i = rng.random_range(0..n);
        let mut cand = best.clone();
        cand[i] = draw(rng);
        let val = objective(&cand);
        if val < best_val {
            best = cand;
            best_val = val;
        }
        if at_optimum(&best) {
            reset_attempts = Some(attempt);
        }
    }

    let mut restart_attempts = None;
    for attempt in 0..=budget {
        let x: Vec<f64> = (0..n).map(|_| draw(rng)).collect();
        if at_optimum(&x) {
            restart_attempts = Some(attempt);
            break;
        }
    }

    ToyRecord {
        n,
        budget,
        reset_attempts,
        restart_attempts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basins() {
        assert_eq!(descend(0.01), 1.0);
        assert_eq!(descend(-0.01), -1.0);
        assert_eq!(descend(0.0), 0.0);
        assert!(phi(1.0) < phi(-1.0));
    }

    #[test]
    fn budget_formula() {
        assert_eq!(attempt_budget(16, 0.05), 185);
    }

    #[test]
    fn single_coordinate_is_quick() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let records: Vec<_> = (0..50).map(|_| toy_reset_experiment(1, 0.05, &mut rng)).collect();
        // each attempt succeeds with probability 1/2; the budget is 6
        assert!(records.iter().filter(|r| r.reset_attempts.is_some()).count() >= 45);
        assert!(records.iter().filter(|r| r.restart_attempts.is_some()).count() >= 45);
    }
}
