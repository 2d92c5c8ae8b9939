//! Mutation-based quadratic optimization (mQO) for maximum independent set
//! and max-cut.
//!
//! Both problems are relaxed to box-constrained quadratic objectives and
//! driven by projected gradient ascent. When the ascent stalls on a binary
//! local maximum, a random subset of coordinates of the best solution is
//! zeroed and the ascent is restarted from there (the "global reset"); a
//! cheap discrete local search polishes the result at the end of every
//! outer loop.
//!
//! Module map:
//!
//! - [`graph`]: CSR graph, generators, DIMACS / canonical I/O, `A·x` and `L·x`.
//! - [`objectives`]: the five relaxed objectives, their gradients, and the
//!   discrete scorers.
//! - [`pga`]: projection, (momentum) ascent steps, trajectories and the
//!   binary fixed-point checkers.
//! - [`localsearch`]: (1,2)-swap for MIS, 1-flip / 2-flip for max-cut.
//! - [`mqo`]: the solvers, the pooled multi-trajectory variant and the
//!   hyperparameter presets.
//! - [`oracle`]: brute-force references used by tests and `mqo verify`.

pub mod error;
pub mod graph;
pub mod localsearch;
pub mod mqo;
pub mod objectives;
pub mod oracle;
pub mod pga;

pub use error::{Error, Result};
pub use graph::{Graph, GraphGenSpec, GraphKind};
pub use mqo::{RunReport, SolverConfig};
pub use objectives::{BoxDomain, ObjectiveSpec, Problem, RelaxedState, Solution};
pub use pga::{OptimizerConfig, StopReason, TrajectoryOutcome};
