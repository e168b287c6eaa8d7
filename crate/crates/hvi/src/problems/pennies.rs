//! The Kronecker matching-pennies matrix `M = I_ν ⊗ U` with
//! `U = [[1, -1], [-1, 1]]`, accessed by index arithmetic — the matrix is
//! never materialized densely. `M` is symmetric, every row and column holds
//! exactly two nonzeros `±1`, `||M||_max = 1`, `||M||_F² = 4ν` and
//! `||M||_2 = 2`.

use crate::block::BlockVector;
use crate::error::{Error, Result};
use crate::operator::FiniteSumOperator;

/// The `2ν × 2ν` matching-pennies block matrix.
#[derive(Debug, Clone)]
pub struct MatchingPenniesGame {
    nu: usize,
}

impl MatchingPenniesGame {
    pub fn new(nu: usize) -> Result<Self> {
        if nu == 0 {
            return Err(Error::config("matching pennies needs at least one block"));
        }
        Ok(MatchingPenniesGame { nu })
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    /// `(n, m)` with `n = m = 2ν`.
    pub fn dims(&self) -> (usize, usize) {
        (2 * self.nu, 2 * self.nu)
    }

    /// The two nonzeros of column `j` as `(row, value)` pairs. `M` is
    /// symmetric, so these double as row accessors.
    pub fn column(&self, j: usize) -> Result<[(usize, f64); 2]> {
        let n = 2 * self.nu;
        if j >= n {
            return Err(Error::config(format!("column index {j} out of range for 2ν = {n}")));
        }
        let base = 2 * (j / 2);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        Ok([(base, sign), (base + 1, -sign)])
    }

    /// `M v`, in `O(n)`.
    pub fn mat_vec(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; 2 * self.nu];
        for b in 0..self.nu {
            let d = v[2 * b] - v[2 * b + 1];
            out[2 * b] = d;
            out[2 * b + 1] = -d;
        }
        out
    }

    /// `Mᵀ v`; equals `M v` by symmetry, kept for call-site clarity.
    pub fn mat_t_vec(&self, v: &[f64]) -> Vec<f64> {
        self.mat_vec(v)
    }

    pub fn max_abs(&self) -> f64 {
        1.0
    }

    pub fn frobenius_sq(&self) -> f64 {
        4.0 * self.nu as f64
    }

    pub fn spectral_norm(&self) -> f64 {
        2.0
    }

    pub fn row_norm_sq(&self, _i: usize) -> f64 {
        2.0
    }

    pub fn col_norm_sq(&self, _j: usize) -> f64 {
        2.0
    }
}

/// The saddle operator `z = (x, y) ↦ (M y, -Mᵀ x)`, decomposed as in the
/// finite-sum layout: `m` column components `(M^j y_j, 0)` followed by `n`
/// row components `(0, -M_i x_i)`.
#[derive(Debug, Clone)]
pub struct GameOperator {
    game: MatchingPenniesGame,
}

impl GameOperator {
    pub fn new(game: MatchingPenniesGame) -> Self {
        GameOperator { game }
    }

    pub fn game(&self) -> &MatchingPenniesGame {
        &self.game
    }

    /// Adds `(M^j y_j, 0)` scaled by `weight` into `out`.
    pub fn accumulate_column(&self, j: usize, weight: f64, z: &BlockVector, out: &mut BlockVector) {
        let yj = z.y()[j];
        for (row, val) in self.game.column(j).expect("index checked by caller") {
            out.x_mut()[row] += weight * val * yj;
        }
    }

    /// Adds `(0, -M_i x_i)` scaled by `weight` into `out`.
    pub fn accumulate_row(&self, i: usize, weight: f64, z: &BlockVector, out: &mut BlockVector) {
        let xi = z.x()[i];
        for (col, val) in self.game.column(i).expect("index checked by caller") {
            out.y_mut()[col] -= weight * val * xi;
        }
    }
}

impl FiniteSumOperator for GameOperator {
    fn dims(&self) -> (usize, usize) {
        self.game.dims()
    }

    fn component_count(&self) -> usize {
        let (n, m) = self.game.dims();
        n + m
    }

    fn accumulate_component(&self, a: usize, z: &BlockVector, out: &mut BlockVector) {
        let (_, m) = self.game.dims();
        if a < m {
            self.accumulate_column(a, 1.0, z, out);
        } else {
            self.accumulate_row(a - m, 1.0, z, out);
        }
    }
}
