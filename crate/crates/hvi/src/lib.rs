//! Solvers and benchmarks for two-level hierarchical variational inequalities
//! with finite-sum operators.
//!
//! The problem class: find a point in the solution set of a lower-level
//! monotone VI (operator `F2`, nonsmooth part `g2`) that additionally solves
//! an upper-level VI (`F1`, `g1`) restricted to that set. The solvers couple
//! the two levels through a decaying Tikhonov weight `β_k`, working with the
//! combined operator `V_k = β_k F1 + F2`, and exploit the finite-sum
//! structure of `F1`, `F2` through cheap unbiased stochastic component
//! oracles with variance reduction.
//!
//! Three methods are provided:
//! - [`solver::EuclidVrSolver`]: loopless variance-reduced extragradient in
//!   Euclidean geometry (snapshot refreshed with probability `θ`),
//! - [`solver::BregmanVrSolver`]: epoch-based variance-reduced mirror prox,
//!   in Euclidean or entropic (block-simplex) geometry,
//! - [`solver::DetEgSolver`]: the deterministic extragradient baseline.
//!
//! The [`problems`] module ships the two built-in matrix-game benchmark
//! instances (equilibrium selection and linearly constrained equilibrium) on
//! Kronecker matching-pennies matrices, and the [`bench`] module the
//! epoch-accounted benchmark harness behind the `hvi-bench` binary.
//!
//! Most capabilities have a runnable demo under `examples/`; start with
//! `cargo run --example equilibrium_selection`.

pub mod bench;
pub mod block;
pub mod error;
pub mod geometry;
pub mod operator;
pub mod oracle;
pub mod problem;
pub mod problems;
pub mod schedule;
pub mod solver;

pub use block::{block_norms, BlockVector, NormKind};
pub use error::{Error, Result};
pub use geometry::GeometryKind;
pub use operator::{eval_combined, eval_full, CombinedOperator, FiniteSumOperator};
pub use problem::{ExtReal, HierarchicalProblem};
pub use schedule::ScheduleParams;
