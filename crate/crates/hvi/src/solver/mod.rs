//! The three iterative methods: the loopless variance-reduced extragradient
//! (Euclidean), the epoch-based variance-reduced mirror prox (Euclidean or
//! entropic), and the deterministic extragradient baseline, plus ergodic
//! averaging and pathwise energy-inequality instrumentation.
//!
//! A solver owns its state and RNG stream exclusively; problem definitions
//! are shared immutably, so independent runs may execute concurrently.
//! Identical `(configuration, seed)` pairs produce bit-identical
//! trajectories.

mod bregman;
mod det_eg;
mod energy;
mod euclid;

pub use bregman::{BregmanTrace, BregmanVrSolver};
pub use det_eg::DetEgSolver;
pub use energy::{check_energy_bregman, check_energy_euclid, EnergyReport, ProbeStatus};
pub use euclid::{EuclidTrace, EuclidVrSolver};

use crate::block::BlockVector;
use crate::error::{Error, Result};
use crate::oracle::SamplingScheme;
use crate::problem::HierarchicalProblem;
use crate::schedule::ScheduleParams;

/// How the stochastic solvers obtain operator feedback: a sampling scheme
/// over the component pairs, or the exact full operator (the degenerate
/// oracle used by the reduction tests).
#[derive(Debug, Clone)]
pub enum OracleMode {
    Sampled(SamplingScheme),
    FullBatch,
}

/// Step-size rule. `Experiment` is the cited rule of each method
/// (`√θ γ / L(β_k)` for the extragradient solver, `√(1-α) / (2 L(β_s))`
/// for the mirror-prox epochs); `DeterministicRatio` is the baseline rule
/// `γ / (β L_F1 + L_F2)`; `Fixed` pins an explicit value.
#[derive(Debug, Clone, Copy)]
pub enum TauRule {
    Experiment,
    DeterministicRatio,
    Fixed(f64),
}

impl TauRule {
    pub(crate) fn euclid_tau(
        &self,
        params: &ScheduleParams,
        lip_at_beta: f64,
        beta: f64,
        problem: &dyn HierarchicalProblem,
    ) -> f64 {
        match *self {
            TauRule::Experiment => params.tau_euclid(lip_at_beta),
            TauRule::DeterministicRatio => {
                params.gamma / (beta * problem.lip_f1() + problem.lip_f2())
            }
            TauRule::Fixed(t) => t,
        }
    }

    pub(crate) fn bregman_tau(
        &self,
        params: &ScheduleParams,
        lip_at_beta: f64,
        beta: f64,
        problem: &dyn HierarchicalProblem,
    ) -> Result<f64> {
        match *self {
            TauRule::Experiment => params.tau_bregman(lip_at_beta),
            TauRule::DeterministicRatio => {
                Ok(params.gamma / (beta * problem.lip_f1() + problem.lip_f2()))
            }
            TauRule::Fixed(t) => Ok(t),
        }
    }
}

/// Running `Σ w_j y_j` with total weight, backing the ergodic point
/// `ȳ = Σ w_j y_j / Σ w_j`.
#[derive(Debug, Clone)]
pub struct ErgodicAccumulator {
    sum: BlockVector,
    weight: f64,
    count: u64,
}

impl ErgodicAccumulator {
    pub fn new(n: usize, m: usize) -> Self {
        ErgodicAccumulator { sum: BlockVector::zeros(n, m), weight: 0.0, count: 0 }
    }

    pub fn add(&mut self, weight: f64, point: &BlockVector) {
        self.sum.add_scaled(weight, point);
        self.weight += weight;
        self.count += 1;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn total_weight(&self) -> f64 {
        self.weight
    }

    /// The weighted average. Calling it before any step is a precondition
    /// error.
    pub fn point(&self) -> Result<BlockVector> {
        if self.count == 0 {
            return Err(Error::precondition("ergodic average of zero iterates"));
        }
        Ok(self.sum.scale(1.0 / self.weight))
    }
}
