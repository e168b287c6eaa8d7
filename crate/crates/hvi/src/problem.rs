//! The hierarchical problem abstraction: two finite-sum operators, two
//! nonsmooth parts, their combined prox, and the scaled component oracle
//! layout used by the stochastic solvers.

use crate::block::BlockVector;
use crate::error::{Error, Result};
use crate::geometry::{self, GeometryKind};
use crate::operator::FiniteSumOperator;

/// Extended-real function value: finite, or `+∞` outside the domain.
/// Indicator functions return `Finite(0.0)` on their feasible set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(*v),
            ExtReal::PosInf => None,
        }
    }
}

/// A two-level hierarchical VI: find `x* ∈ S2 = zer(F2 + ∂g2)` such that
/// `<F1(x*), x - x*> + g1(x) - g1(x*) >= 0` for all `x ∈ S2`.
///
/// Implementations also expose the pair-indexed stochastic oracle layout of
/// the benchmark instances: the sample index is `ξ = (i, j)` drawn with
/// probability `c_i r_j`, and the sampled components are rescaled by
/// `1/c_i`, `1/r_j` so that the oracle is unbiased.
pub trait HierarchicalProblem {
    /// Block split `(n, m)`.
    fn dims(&self) -> (usize, usize);

    /// Upper-level operator.
    fn f1(&self) -> &dyn FiniteSumOperator;

    /// Lower-level operator.
    fn f2(&self) -> &dyn FiniteSumOperator;

    /// Lipschitz constant of `F1` (full operator).
    fn lip_f1(&self) -> f64;

    /// Lipschitz constant of `F2` (full operator).
    fn lip_f2(&self) -> f64;

    fn g1_value(&self, z: &BlockVector) -> ExtReal;

    fn g2_value(&self, z: &BlockVector) -> ExtReal;

    /// `prox_{τ(β g1 + g2)}(point)` in Euclidean geometry.
    fn combined_prox_euclid(&self, beta: f64, tau: f64, point: &BlockVector) -> BlockVector;

    /// Ranges of the oracle sample index `ξ = (i, j)`.
    fn pair_dims(&self) -> (usize, usize) {
        self.dims()
    }

    /// Scaled component `F1^ξ(z)` for `ξ = (i, j)` with weights `1/c_i`, `1/r_j`.
    fn sampled_f1(&self, idx: (usize, usize), inv_ci: f64, inv_rj: f64, z: &BlockVector)
        -> BlockVector;

    /// Scaled component `F2^ξ(z)`.
    fn sampled_f2(&self, idx: (usize, usize), inv_ci: f64, inv_rj: f64, z: &BlockVector)
        -> BlockVector;

    /// Static importance probabilities `(c, r)` built from the instance's
    /// precomputed row/column norms.
    fn static_importance(&self) -> (Vec<f64>, Vec<f64>);

    /// Known unique solution of the hierarchical problem, when available.
    fn known_solution(&self) -> Option<BlockVector> {
        None
    }

    /// Solves the three-point subproblem
    /// `argmin_z { <u, z> + τ(β g1 + g2)(z) + α D(z, v) + (1-α) D(z, w) }`
    /// in the given geometry. The entropic route requires `g1 ≡ 0` and
    /// `g2 = indicator of Δn × Δm`, which holds for all built-in instances.
    fn bregman_prox(
        &self,
        geom: GeometryKind,
        beta: f64,
        tau: f64,
        u: &BlockVector,
        v: &BlockVector,
        w: &BlockVector,
        alpha: f64,
    ) -> Result<BlockVector> {
        match geom {
            GeometryKind::Euclidean => Ok(geometry::euclid_three_point(u, v, w, alpha, |p| {
                self.combined_prox_euclid(beta, tau, p)
            })),
            GeometryKind::EntropicBlockSimplex => geometry::entropic_three_point(u, v, w, alpha),
        }
    }
}

/// `V(z) = β F1(z) + F2(z)` with a shape check.
pub fn combined_full(p: &dyn HierarchicalProblem, beta: f64, z: &BlockVector) -> Result<BlockVector> {
    crate::operator::eval_combined(beta, p.f1(), p.f2(), z)
}

/// Sampled combined operator `V^ξ(z) = β F1^ξ(z) + F2^ξ(z)`.
pub fn sampled_combined(
    p: &dyn HierarchicalProblem,
    beta: f64,
    idx: (usize, usize),
    inv_ci: f64,
    inv_rj: f64,
    z: &BlockVector,
) -> BlockVector {
    let mut v = p.sampled_f1(idx, inv_ci, inv_rj, z);
    let v2 = p.sampled_f2(idx, inv_ci, inv_rj, z);
    for (a, b) in v.as_mut_slice().iter_mut().zip(v2.as_slice()) {
        *a = beta * *a + b;
    }
    v
}

/// `G_k(z) = β g1(z) + g2(z)` as an extended real.
pub fn combined_g(p: &dyn HierarchicalProblem, beta: f64, z: &BlockVector) -> ExtReal {
    match (p.g1_value(z), p.g2_value(z)) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(beta * a + b),
        _ => ExtReal::PosInf,
    }
}

/// Validates that a prox output landed in `dom(g1) ∩ dom(g2)`.
pub fn check_prox_feasible(p: &dyn HierarchicalProblem, z: &BlockVector) -> Result<()> {
    if p.g1_value(z).is_finite() && p.g2_value(z).is_finite() {
        Ok(())
    } else {
        Err(Error::internal("prox output left the domain of g1 + g2"))
    }
}
