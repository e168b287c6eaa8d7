//! The two built-in benchmark instances on Kronecker matching-pennies
//! matrices, their gap metrics, and solution-set utilities.

pub mod eq_selection;
pub mod lin_constrained;
pub mod metrics;
pub mod pennies;

pub use eq_selection::EquilibriumSelection;
pub use lin_constrained::LinearlyConstrained;
pub use metrics::{
    dist_to_opt_selection, dist_to_s2_selection, equilibrium_from_weights, feas_gap_game,
    gaps_linear, h_bifunction, weak_sharpness_probe,
};
pub use pennies::{GameOperator, MatchingPenniesGame};

use crate::block::BlockVector;
use crate::problem::{ExtReal, HierarchicalProblem};

/// Indicator of `Δn × Δm` up to a small constraint tolerance: `0` on the
/// set, `+∞` outside.
pub fn simplex_pair_indicator(z: &BlockVector) -> ExtReal {
    if z.simplex_pair_violation() <= 1e-9 {
        ExtReal::Finite(0.0)
    } else {
        ExtReal::PosInf
    }
}

/// A built-in benchmark instance.
pub enum Instance {
    EqSelection(EquilibriumSelection),
    LinConstrained(LinearlyConstrained),
}

/// Instance names accepted by the benchmark harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    EqSelection,
    LinConstrained,
}

impl Instance {
    pub fn build(kind: InstanceKind, nu: usize) -> crate::Result<Self> {
        Ok(match kind {
            InstanceKind::EqSelection => Instance::EqSelection(EquilibriumSelection::new(nu)?),
            InstanceKind::LinConstrained => Instance::LinConstrained(LinearlyConstrained::new(nu)?),
        })
    }

    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::EqSelection(_) => InstanceKind::EqSelection,
            Instance::LinConstrained(_) => InstanceKind::LinConstrained,
        }
    }

    pub fn problem(&self) -> &dyn HierarchicalProblem {
        match self {
            Instance::EqSelection(p) => p,
            Instance::LinConstrained(p) => p,
        }
    }

    pub fn game(&self) -> &MatchingPenniesGame {
        match self {
            Instance::EqSelection(p) => p.game(),
            Instance::LinConstrained(p) => p.game(),
        }
    }

    /// Ratio between the cost of one stochastic and one full combined
    /// operator evaluation, per the instance cost model:
    /// equilibrium selection `(n+m)/(2nm)`, constrained
    /// `2(n+m)/(2mn + 2ν(n+m))`.
    pub fn stochastic_cost_ratio(&self) -> f64 {
        let (n, m) = self.problem().dims();
        let (nf, mf) = (n as f64, m as f64);
        match self {
            Instance::EqSelection(_) => (nf + mf) / (2.0 * nf * mf),
            Instance::LinConstrained(p) => {
                let nu = p.game().nu() as f64;
                2.0 * (nf + mf) / (2.0 * mf * nf + 2.0 * nu * (nf + mf))
            }
        }
    }

    /// Benchmark metrics of a point: `(feas, opt, dist)` in the CSV column
    /// convention. Undefined metrics are `None`.
    pub fn metrics(&self, z: &BlockVector) -> (Option<f64>, Option<f64>, Option<f64>) {
        match self {
            Instance::EqSelection(p) => {
                let feas = feas_gap_game(p.game(), z).value;
                let dist = dist_to_opt_selection(z);
                (Some(feas), None, Some(dist))
            }
            Instance::LinConstrained(p) => {
                let (opt, feas) = gaps_linear(p, z);
                (Some(feas), Some(opt), None)
            }
        }
    }
}
