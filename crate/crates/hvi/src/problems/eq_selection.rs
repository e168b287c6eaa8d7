//! Equilibrium selection on the matching-pennies game: among all Nash
//! equilibria, find the one of minimal Euclidean norm.
//!
//! Upper level: `F1(z) = z` (gradient of `||z||²/2`), `g1 ≡ 0`. Lower
//! level: `F2 = (My, -Mᵀx)`, `g2 =` indicator of `Δn × Δm`. The unique
//! solution is the uniform pair `z* = (1/n, …, 1/m, …)`.

use crate::block::BlockVector;
use crate::geometry::prox_simplex_pair;
use crate::operator::FiniteSumOperator;
use crate::problem::{ExtReal, HierarchicalProblem};

use super::pennies::{GameOperator, MatchingPenniesGame};
use super::simplex_pair_indicator;

/// `F1(z) = z` split into one coordinate component per entry.
#[derive(Debug, Clone)]
pub struct IdentityOperator {
    n: usize,
    m: usize,
}

impl FiniteSumOperator for IdentityOperator {
    fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    fn component_count(&self) -> usize {
        self.n + self.m
    }

    fn accumulate_component(&self, a: usize, z: &BlockVector, out: &mut BlockVector) {
        out.as_mut_slice()[a] += z.as_slice()[a];
    }
}

pub struct EquilibriumSelection {
    game: MatchingPenniesGame,
    f1: IdentityOperator,
    f2: GameOperator,
}

impl EquilibriumSelection {
    pub fn new(nu: usize) -> crate::Result<Self> {
        let game = MatchingPenniesGame::new(nu)?;
        let (n, m) = game.dims();
        Ok(EquilibriumSelection {
            f1: IdentityOperator { n, m },
            f2: GameOperator::new(game.clone()),
            game,
        })
    }

    pub fn game(&self) -> &MatchingPenniesGame {
        &self.game
    }
}

impl HierarchicalProblem for EquilibriumSelection {
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
        1.0
    }

    fn lip_f2(&self) -> f64 {
        self.game.spectral_norm()
    }

    fn g1_value(&self, _z: &BlockVector) -> ExtReal {
        ExtReal::Finite(0.0)
    }

    fn g2_value(&self, z: &BlockVector) -> ExtReal {
        simplex_pair_indicator(z)
    }

    /// `g1 ≡ 0`, so the combined prox is the blockwise simplex projection
    /// for every `β`, `τ`.
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
        out.x_mut()[i] = inv_ci * z.x()[i];
        out.y_mut()[j] = inv_rj * z.y()[j];
        out
    }

    fn sampled_f2(
        &self,
        (i, j): (usize, usize),
        inv_ci: f64,
        inv_rj: f64,
        z: &BlockVector,
    ) -> BlockVector {
        let (n, m) = self.dims();
        let mut out = BlockVector::zeros(n, m);
        self.f2.accumulate_column(j, inv_rj, z, &mut out);
        self.f2.accumulate_row(i, inv_ci, z, &mut out);
        out
    }

    /// `c_i = ||M_i||² / ||M||_F²`, `r_j = ||M^j||² / ||M||_F²`. For the
    /// matching-pennies matrix all rows and columns share the same norm,
    /// so this is the uniform distribution on each block.
    fn static_importance(&self) -> (Vec<f64>, Vec<f64>) {
        let (n, m) = self.dims();
        let f = self.game.frobenius_sq();
        let c = (0..n).map(|i| self.game.row_norm_sq(i) / f).collect();
        let r = (0..m).map(|j| self.game.col_norm_sq(j) / f).collect();
        (c, r)
    }

    fn known_solution(&self) -> Option<BlockVector> {
        let (n, m) = self.dims();
        Some(BlockVector::uniform_simplex_pair(n, m))
    }
}
