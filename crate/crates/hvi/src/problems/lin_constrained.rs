//! Linearly constrained equilibrium: find a Nash equilibrium of the
//! matching-pennies game that also satisfies `Bx + Cy = d`.
//!
//! Upper level: `F1 = (My, -Mᵀx)` (the game), `g1 ≡ 0`. Lower level:
//! `F2(z) = P(Bx + Cy - d)` with `P = [Bᵀ; Cᵀ]`, the gradient of
//! `||Bx + Cy - d||² / 2`, and `g2 =` indicator of `Δn × Δm`. The data are
//! `B = C = I_ν ⊗ (1, 0)` (selectors of the first coordinate of each pair)
//! and `d = 1/ν`, so the constraint couples the paired coordinates as
//! `x_i + y_i = 1/ν` on selected indices.

use crate::block::BlockVector;
use crate::geometry::prox_simplex_pair;
use crate::operator::FiniteSumOperator;
use crate::problem::{ExtReal, HierarchicalProblem};

use super::pennies::{GameOperator, MatchingPenniesGame};
use super::simplex_pair_indicator;

/// `F2(z) = P(Bx + Cy - d)` with the column decomposition
/// `Σ_i PB^i x_i + Σ_j PC^j y_j - Pd`: `n` B-columns, then `m` C-columns,
/// then the constant `-Pd` as its own component. `PB` and `PC` are
/// precomputed implicitly: for the selector structure, `PB^i = (e_i; e_i)`
/// on selected (even) indices and zero otherwise.
#[derive(Debug, Clone)]
pub struct ConstraintOperator {
    nu: usize,
}

impl ConstraintOperator {
    fn n(&self) -> usize {
        2 * self.nu
    }

    /// Is column `i` selected by `B = I_ν ⊗ (1, 0)`?
    fn selected(i: usize) -> bool {
        i % 2 == 0
    }

    /// Adds `weight · PB^i x_i` into `out` (identical layout for `PC^j y_j`
    /// via `accumulate_c`).
    pub fn accumulate_b(&self, i: usize, weight: f64, z: &BlockVector, out: &mut BlockVector) {
        if Self::selected(i) {
            let v = weight * z.x()[i];
            out.x_mut()[i] += v;
            out.y_mut()[i] += v;
        }
    }

    pub fn accumulate_c(&self, j: usize, weight: f64, z: &BlockVector, out: &mut BlockVector) {
        if Self::selected(j) {
            let v = weight * z.y()[j];
            out.x_mut()[j] += v;
            out.y_mut()[j] += v;
        }
    }

    /// Adds `-Pd` into `out`.
    pub fn accumulate_const(&self, out: &mut BlockVector) {
        let dv = 1.0 / self.nu as f64;
        for s in 0..self.nu {
            out.x_mut()[2 * s] -= dv;
            out.y_mut()[2 * s] -= dv;
        }
    }

    /// The constraint residual `Bx + Cy - d ∈ R^ν`.
    pub fn residual(&self, z: &BlockVector) -> Vec<f64> {
        let dv = 1.0 / self.nu as f64;
        (0..self.nu).map(|s| z.x()[2 * s] + z.y()[2 * s] - dv).collect()
    }

    pub fn pb_max_abs(&self) -> f64 {
        1.0
    }

    pub fn pb_frobenius_sq(&self) -> f64 {
        2.0 * self.nu as f64
    }
}

impl FiniteSumOperator for ConstraintOperator {
    fn dims(&self) -> (usize, usize) {
        (self.n(), self.n())
    }

    fn component_count(&self) -> usize {
        2 * self.n() + 1
    }

    fn accumulate_component(&self, a: usize, z: &BlockVector, out: &mut BlockVector) {
        let n = self.n();
        if a < n {
            self.accumulate_b(a, 1.0, z, out);
        } else if a < 2 * n {
            self.accumulate_c(a - n, 1.0, z, out);
        } else {
            self.accumulate_const(out);
        }
    }
}

pub struct LinearlyConstrained {
    game: MatchingPenniesGame,
    f1: GameOperator,
    f2: ConstraintOperator,
}

impl LinearlyConstrained {
    pub fn new(nu: usize) -> crate::Result<Self> {
        let game = MatchingPenniesGame::new(nu)?;
        Ok(LinearlyConstrained {
            f1: GameOperator::new(game.clone()),
            f2: ConstraintOperator { nu },
            game,
        })
    }

    pub fn game(&self) -> &MatchingPenniesGame {
        &self.game
    }

    pub fn constraint(&self) -> &ConstraintOperator {
        &self.f2
    }

    /// `||Bx + Cy - d||²`.
    pub fn constraint_gap(&self, z: &BlockVector) -> f64 {
        self.f2.residual(z).iter().map(|r| r * r).sum()
    }
}

impl HierarchicalProblem for LinearlyConstrained {
    fn dims(&self) -> (usize, usize) {
        self.game.dims()
    }

    fn f1(&self) -> &dyn FiniteSumOperator {
        &self.f1
    }

    fn f2(&self) -> &dyn FiniteSumOperator {
        &self.f2
    }

    fn lip_f1(&self) -> f64 {
        self.game.spectral_norm()
    }

    /// Spectral norm of `P [B C] = [[BᵀB, BᵀC], [CᵀB, CᵀC]]`; for the
    /// selector structure with `B = C` this is `2 ||BᵀB||_2 = 2`.
    fn lip_f2(&self) -> f64 {
        2.0
    }

    fn g1_value(&self, _z: &BlockVector) -> ExtReal {
        ExtReal::Finite(0.0)
    }

    fn g2_value(&self, z: &BlockVector) -> ExtReal {
        simplex_pair_indicator(z)
    }

    fn combined_prox_euclid(&self, _beta: f64, _tau: f64, point: &BlockVector) -> BlockVector {
        prox_simplex_pair(point)
    }

    fn sampled_f1(
        &self,
        (i, j): (usize, usize),
        inv_ci: f64,
        inv_rj: f64,
        z: &BlockVector,
    ) -> BlockVector {
        let (n, m) = self.dims();
        let mut out = BlockVector::zeros(n, m);
        self.f1.accumulate_column(j, inv_rj, z, &mut out);
        self.f1.accumulate_row(i, inv_ci, z, &mut out);
        out
    }

    /// `F2^ξ(z) = P((1/c_i) B^i x_i + (1/r_j) C^j y_j - d)`: the constant
    /// `-Pd` rides along with every sample.
    fn sampled_f2(
        &self,
        (i, j): (usize, usize),
        inv_ci: f64,
        inv_rj: f64,
        z: &BlockVector,
    ) -> BlockVector {
        let (n, m) = self.dims();
        let mut out = BlockVector::zeros(n, m);
        self.f2.accumulate_b(i, inv_ci, z, &mut out);
        self.f2.accumulate_c(j, inv_rj, z, &mut out);
        self.f2.accumulate_const(&mut out);
        out
    }

    /// Built from the game matrix norms, as in the equilibrium-selection
    /// instance. (`B` has zero columns, so importance weights derived from
    /// `B` itself would not form a sampling distribution.)
    fn static_importance(&self) -> (Vec<f64>, Vec<f64>) {
        let (n, m) = self.dims();
        let f = self.game.frobenius_sq();
        let c = (0..n).map(|i| self.game.row_norm_sq(i) / f).collect();
        let r = (0..m).map(|j| self.game.col_norm_sq(j) / f).collect();
        (c, r)
    }
}
