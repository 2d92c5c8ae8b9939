//! Projected gradient ascent with optional heavy-ball momentum.
//!
//! One step is
//!
//! ```text
//! v ← β·v + ∇f(x)
//! x ← Π(x + α·v)
//! ```
//!
//! where `Π` clamps into the objective's box. With `β = 0` this is plain
//! projected gradient ascent.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::{BoxDomain, ObjectiveSpec, Problem, RelaxedState};
use serde::{Deserialize, Serialize};
use std::time::Instant;

const DEADLINE_POLL: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Step size α > 0.
    pub alpha: f64,
    /// Momentum β ∈ [0, 1).
    pub momentum: f64,
    pub max_iters: usize,
    /// Convergence threshold on `‖x_{t+1} − x_t‖_∞`.
    pub conv_tol: f64,
    /// Iterations between MIS checker calls.
    pub check_every: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            momentum: 0.0,
            max_iters: 5000,
            conv_tol: 1e-6,
            check_every: 1,
        }
    }
}

impl OptimizerConfig {
    pub fn new(alpha: f64, momentum: f64) -> Self {
        Self {
            alpha,
            momentum,
            ..Self::default()
        }
    }

    /// Problem-level defaults used when no preset applies.
    pub fn for_problem(problem: Problem) -> Self {
        match problem {
            Problem::Mis => Self::new(0.8, 0.3),
            Problem::MaxCut => Self::new(0.0025, 0.8),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "step size alpha = {} must be > 0",
                self.alpha
            )));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::InvalidParameter(format!(
                "momentum = {} must lie in [0, 1)",
                self.momentum
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
        }
        if self.conv_tol.is_nan() || self.conv_tol < 0.0 {
            return Err(Error::InvalidParameter("conv_tol must be >= 0".into()));
        }
        if self.check_every == 0 {
            return Err(Error::InvalidParameter("check_every must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// `‖Δx‖_∞ ≤ ε` at a binary state.
    Converged,
    /// The binarized state is a maximal independent set.
    CheckerAccepted,
    /// Ran `max_iters` steps, or revisited an earlier `(x, v)` exactly. The
    /// step map is deterministic, so a revisit means the cap would be reached
    /// without stopping and is reported early.
    IterCap,
    /// The wall-clock deadline passed mid-trajectory.
    Deadline,
}

/// When a trajectory stops (besides the iteration cap and deadline).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// Stop once the `> 0.5` binarization is a PGA fixed point of the MIS
    /// objective, tested every `check_every` iterations.
    MisChecker,
    /// Stop once `‖x_{t+1} − x_t‖_∞ ≤ ε` and the state is binary.
    Convergence,
}

impl StopRule {
    pub fn for_problem(problem: Problem) -> Self {
        match problem {
            Problem::Mis => StopRule::MisChecker,
            Problem::MaxCut => StopRule::Convergence,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryOutcome {
    pub state: RelaxedState,
    pub iterations: usize,
    pub stop: StopReason,
}

pub fn project(state: &RelaxedState) -> RelaxedState {
    RelaxedState::projected(state.x.clone(), state.domain)
}

pub fn project_in_place(domain: BoxDomain, x: &mut [f64]) {
    x.iter_mut().for_each(|t| *t = domain.clamp(*t));
}

/// One ascent step, returning the new state and velocity.
pub fn step(
    spec: &ObjectiveSpec,
    g: &Graph,
    state: &RelaxedState,
    velocity: &[f64],
    cfg: &OptimizerConfig,
) -> Result<(RelaxedState, Vec<f64>)> {
    check_inputs(spec, g, state)?;
    g.check_len(velocity.len())?;
    let mut x = state.x.clone();
    let mut v = velocity.to_vec();
    let mut grad = vec![0.0; x.len()];
    step_in_place(spec, g, state.domain, &mut x, &mut v, &mut grad, cfg);
    Ok((
        RelaxedState {
            x,
            domain: state.domain,
        },
        v,
    ))
}

// Returns ‖Δx‖_∞.
fn step_in_place(
    spec: &ObjectiveSpec,
    g: &Graph,
    domain: BoxDomain,
    x: &mut [f64],
    v: &mut [f64],
    grad: &mut [f64],
    cfg: &OptimizerConfig,
) -> f64 {
    spec.gradient_into(g, x, grad);
    let (alpha, beta) = (cfg.alpha, cfg.momentum);
    let mut delta = 0.0f64;
    for ((xi, vi), &gi) in x.iter_mut().zip(v.iter_mut()).zip(grad.iter()) {
        *vi = beta * *vi + gi;
        let next = domain.clamp(*xi + alpha * *vi);
        delta = delta.max((next - *xi).abs());
        *xi = next;
    }
    debug_assert!(domain.contains(x));
    delta
}

fn check_inputs(spec: &ObjectiveSpec, g: &Graph, state: &RelaxedState) -> Result<()> {
    if state.domain != spec.domain() {
        return Err(Error::DomainMismatch {
            objective: spec.name(),
            expected: spec.domain().name(),
        });
    }
    g.check_len(state.len())
}

/// Iterates [`step`] from `init` (zero velocity) until `rule` fires, the
/// iteration cap is hit, or `deadline` passes (polled every 256 steps).
pub fn run_trajectory(
    spec: &ObjectiveSpec,
    g: &Graph,
    init: &RelaxedState,
    cfg: &OptimizerConfig,
    rule: StopRule,
    deadline: Option<Instant>,
) -> Result<TrajectoryOutcome> {
    check_inputs(spec, g, init)?;
    cfg.validate()?;
    if !init.domain.contains(&init.x) {
        return Err(Error::InvalidParameter("initial state lies outside its box".into()));
    }
    let gamma = match (rule, spec) {
        (StopRule::MisChecker, ObjectiveSpec::MisQubo { gamma }) => *gamma,
        (StopRule::MisChecker, _) => {
            return Err(Error::InvalidParameter(
                "the MIS checker requires the MIS objective".into(),
            ))
        }
        _ => 0.0,
    };

    let n = g.n();
    let domain = init.domain;
    let mut x = init.x.clone();
    let mut v = vec![0.0; n];
    let mut grad = vec![0.0; n];
    let mut checker = MisChecker::new(n);
    // a cycle only proves rejection when every state on it gets checked
    let mut cycles = (rule == StopRule::Convergence || cfg.check_every == 1).then(|| Brent::new(&x, &v));

    for it in 1..=cfg.max_iters {
        let delta = step_in_place(spec, g, domain, &mut x, &mut v, &mut grad, cfg);
        let stop = match rule {
            StopRule::MisChecker => it % cfg.check_every == 0 && checker.accepts(g, &x, gamma, cfg.alpha),
            StopRule::Convergence => delta <= cfg.conv_tol && x.iter().all(|&t| t == -1.0 || t == 1.0),
        };
        if stop {
            let reason = match rule {
                StopRule::MisChecker => StopReason::CheckerAccepted,
                StopRule::Convergence => StopReason::Converged,
            };
            return Ok(finish(x, domain, it, reason));
        }
        if it % DEADLINE_POLL == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
            return Ok(finish(x, domain, it, StopReason::Deadline));
        }
        if cycles.as_mut().is_some_and(|c| c.revisits(&x, &v)) {
            return Ok(finish(x, domain, it, StopReason::IterCap));
        }
    }
    Ok(finish(x, domain, cfg.max_iters, StopReason::IterCap))
}

fn finish(x: Vec<f64>, domain: BoxDomain, iterations: usize, stop: StopReason) -> TrajectoryOutcome {
    TrajectoryOutcome {
        state: RelaxedState { x, domain },
        iterations,
        stop,
    }
}

// Brent's cycle detection over exact `(x, v)` states: compare against a
// snapshot that moves forward at power-of-two intervals.
struct Brent {
    x: Vec<f64>,
    v: Vec<f64>,
    power: usize,
    lam: usize,
}

impl Brent {
    fn new(x: &[f64], v: &[f64]) -> Self {
        Self {
            x: x.to_vec(),
            v: v.to_vec(),
            power: 1,
            lam: 0,
        }
    }

    fn revisits(&mut self, x: &[f64], v: &[f64]) -> bool {
        if self.x == x && self.v == v {
            return true;
        }
        self.lam += 1;
        if self.lam == self.power {
            self.x.copy_from_slice(x);
            self.v.copy_from_slice(v);
            self.power *= 2;
            self.lam = 0;
        }
        false
    }
}

// Binarizes with `> 0.5` and runs the fixed-point test, skipping the matvec
// when the binarization has not changed since the last rejected check.
struct MisChecker {
    bits: Vec<f64>,
    ax: Vec<f64>,
    last_rejected: bool,
}

impl MisChecker {
    fn new(n: usize) -> Self {
        Self {
            bits: vec![f64::NAN; n],
            ax: vec![0.0; n],
            last_rejected: false,
        }
    }

    fn accepts(&mut self, g: &Graph, x: &[f64], gamma: f64, alpha: f64) -> bool {
        let mut changed = false;
        for (b, &t) in self.bits.iter_mut().zip(x) {
            let nb = if t > 0.5 { 1.0 } else { 0.0 };
            if *b != nb {
                *b = nb;
                changed = true;
            }
        }
        if !changed && self.last_rejected {
            return false;
        }
        let ok = fixed_point_unit(g, &self.bits, &mut self.ax, gamma, alpha);
        self.last_rejected = !ok;
        ok
    }
}

fn fixed_point_unit(g: &Graph, x: &[f64], ax: &mut [f64], gamma: f64, alpha: f64) -> bool {
    g.adjacency_apply_into(x, ax).expect("sized by caller");
    x.iter()
        .zip(ax.iter())
        .all(|(&xi, &ai)| (xi + alpha * (1.0 - gamma * ai)).clamp(0.0, 1.0) == xi)
}

fn require_binary(x: &[f64], lo: f64, hi: f64) -> Result<()> {
    match x.iter().position(|&t| t != lo && t != hi) {
        Some(index) => Err(Error::NonBinary { index, value: x[index] }),
        None => Ok(()),
    }
}

/// `𝟙{x = Π(x + α∇h(x))}` for a binary `x ∈ {0,1}^n`.
///
/// For `γ > 1` this holds exactly when `{v : x_v = 1}` is a maximal
/// independent set.
pub fn mis_fixed_point_check(g: &Graph, x: &[f64], gamma: f64, alpha: f64) -> Result<bool> {
    g.check_len(x.len())?;
    require_binary(x, 0.0, 1.0)?;
    let mut ax = vec![0.0; x.len()];
    Ok(fixed_point_unit(g, x, &mut ax, gamma, alpha))
}

/// `x_i · ∇_i f(x) ≥ 0` for every `i`, at a binary `x ∈ {−1,1}^n`.
pub fn maxcut_binary_fixed_point_check(spec: &ObjectiveSpec, g: &Graph, state: &RelaxedState) -> Result<bool> {
    if spec.problem() != Problem::MaxCut {
        return Err(Error::InvalidParameter(format!(
            "{} is not a max-cut objective",
            spec.name()
        )));
    }
    check_inputs(spec, g, state)?;
    require_binary(&state.x, -1.0, 1.0)?;
    let mut grad = vec![0.0; g.n()];
    spec.gradient_into(g, &state.x, &mut grad);
    Ok(state.x.iter().zip(&grad).all(|(&xi, &gi)| xi * gi >= 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::objectives::{cut_value, extract_solution};

    fn unit(x: &[f64]) -> RelaxedState {
        RelaxedState::new(x.to_vec(), BoxDomain::UnitBox).unwrap()
    }

    fn sym(x: &[f64]) -> RelaxedState {
        RelaxedState::new(x.to_vec(), BoxDomain::SymmetricBox).unwrap()
    }

    #[test]
    fn projection() {
        let s = RelaxedState {
            x: vec![1.3, -0.2, 0.5],
            domain: BoxDomain::UnitBox,
        };
        assert_eq!(project(&s).x, vec![1.0, 0.0, 0.5]);
        let s = RelaxedState {
            x: vec![2.0, -2.0, 0.0],
            domain: BoxDomain::SymmetricBox,
        };
        let p = project(&s);
        assert_eq!(p.x, vec![1.0, -1.0, 0.0]);
        assert_eq!(project(&p), p);
    }

    #[test]
    fn boundary_step_is_stationary() {
        let g = named::complete(3);
        let s = unit(&[1.0, 0.0, 0.0]);
        let (next, _) = step(
            &ObjectiveSpec::mis(),
            &g,
            &s,
            &[0.0; 3],
            &OptimizerConfig::new(0.1, 0.0),
        )
        .unwrap();
        assert_eq!(next, s);
    }

    #[test]
    fn zero_step_size_changes_nothing() {
        let g = named::petersen();
        let s = sym(&[0.3, -0.2, 0.1, 0.0, 0.9, -0.9, 0.5, 0.5, -0.1, 0.2]);
        let cfg = OptimizerConfig {
            alpha: 0.0,
            ..OptimizerConfig::default()
        };
        for spec in [
            ObjectiveSpec::Laplacian,
            ObjectiveSpec::Adjacency,
            ObjectiveSpec::default(),
        ] {
            let (next, _) = step(&spec, &g, &s, &[0.0; 10], &cfg).unwrap();
            assert_eq!(next, s);
        }
    }

    #[test]
    fn k3_mis_trajectory() {
        let g = named::complete(3);
        let out = run_trajectory(
            &ObjectiveSpec::mis(),
            &g,
            &unit(&[0.9, 0.1, 0.1]),
            &OptimizerConfig::new(0.1, 0.0),
            StopRule::MisChecker,
            None,
        )
        .unwrap();
        assert_eq!(out.stop, StopReason::CheckerAccepted);
        let sol = extract_solution(Problem::Mis, &g, &out.state);
        assert_eq!(sol.indicator(3), vec![true, false, false]);
    }

    #[test]
    fn k3_perturbed_bias_trajectory() {
        let g = named::complete(3);
        let out = run_trajectory(
            &ObjectiveSpec::PerturbedBias { lambda: 0.001 },
            &g,
            &sym(&[0.6, -0.5, -0.4]),
            &OptimizerConfig::new(0.1, 0.0),
            StopRule::Convergence,
            None,
        )
        .unwrap();
        assert_eq!(out.stop, StopReason::Converged);
        assert!(out.state.is_binary());
        let side: Vec<bool> = out.state.x.iter().map(|&t| t > 0.0).collect();
        assert_eq!(cut_value(&g, &side), 2);
    }

    #[test]
    fn laplacian_constant_start_never_moves() {
        let g = named::petersen();
        let init = sym(&[0.3; 10]);
        let out = run_trajectory(
            &ObjectiveSpec::Laplacian,
            &g,
            &init,
            &OptimizerConfig::new(0.1, 0.0),
            StopRule::Convergence,
            None,
        )
        .unwrap();
        assert_eq!(out.stop, StopReason::IterCap);
        assert_eq!(out.state, init);
        assert_eq!(extract_solution(Problem::MaxCut, &g, &out.state).score(), 0);
    }

    #[test]
    fn checker_examples() {
        let k3 = named::complete(3);
        assert!(mis_fixed_point_check(&k3, &[1.0, 0.0, 0.0], 2.0, 0.1).unwrap());
        let p3 = named::path(3);
        assert!(!mis_fixed_point_check(&p3, &[1.0, 0.0, 0.0], 2.0, 0.1).unwrap());
        let c5 = named::cycle(5);
        assert!(mis_fixed_point_check(&c5, &[1.0, 0.0, 1.0, 0.0, 0.0], 2.0, 0.1).unwrap());
        assert!(matches!(
            mis_fixed_point_check(&k3, &[0.5, 0.0, 0.0], 2.0, 0.1),
            Err(Error::NonBinary { index: 0, .. })
        ));
    }

    #[test]
    fn maxcut_checker_examples() {
        let k3 = named::complete(3);
        let opt = sym(&[1.0, -1.0, -1.0]);
        assert!(maxcut_binary_fixed_point_check(&ObjectiveSpec::Adjacency, &k3, &opt).unwrap());
        let same = sym(&[1.0, 1.0, 1.0]);
        assert!(!maxcut_binary_fixed_point_check(&ObjectiveSpec::default(), &k3, &same).unwrap());
        assert!(
            maxcut_binary_fixed_point_check(&ObjectiveSpec::PerturbedLaplacian { lambda: 0.001 }, &k3, &same).unwrap()
        );
        assert!(maxcut_binary_fixed_point_check(&ObjectiveSpec::mis(), &k3, &opt).is_err());
        assert!(maxcut_binary_fixed_point_check(&ObjectiveSpec::Adjacency, &k3, &sym(&[0.0, 1.0, 1.0])).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig::new(0.0, 0.0).validate().is_err());
        assert!(OptimizerConfig::new(0.1, 1.0).validate().is_err());
        assert!(OptimizerConfig::new(0.1, 0.99).validate().is_ok());
        let cfg = OptimizerConfig {
            max_iters: 0,
            ..OptimizerConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
