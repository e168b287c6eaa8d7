//! Two-block vectors `z = (x, y)` and the block norms used by both
//! geometries.
//!
//! Iterates live on a product domain (typically `Δn × Δm`). A [`BlockVector`]
//! stores both blocks contiguously with a recorded split point, so block
//! access is slicing and whole-vector arithmetic needs no copies.

use crate::error::{Error, Result};

/// A vector split into an `x`-block of length `n` and a `y`-block of length `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVector {
    data: Vec<f64>,
    split: usize,
}

/// Norms on block vectors.
///
/// `L1Block` is `sqrt(||x||_1^2 + ||y||_1^2)`; its dual is `LInfBlock`,
/// `sqrt(||x||_inf^2 + ||y||_inf^2)`. `L2` is the plain Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    L2,
    L1Block,
    LInfBlock,
}

impl BlockVector {
    /// Builds a block vector from its two blocks. Panics on empty blocks or
    /// non-finite entries: those are programming errors, not runtime inputs.
    pub fn from_parts(x: &[f64], y: &[f64]) -> Self {
        assert!(!x.is_empty() && !y.is_empty(), "blocks must be nonempty");
        let mut data = Vec::with_capacity(x.len() + y.len());
        data.extend_from_slice(x);
        data.extend_from_slice(y);
        let v = BlockVector { data, split: x.len() };
        v.debug_check_finite();
        v
    }

    pub fn from_vec(data: Vec<f64>, split: usize) -> Self {
        assert!(split >= 1 && split < data.len(), "split must leave both blocks nonempty");
        let v = BlockVector { data, split };
        v.debug_check_finite();
        v
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        assert!(n >= 1 && m >= 1);
        BlockVector { data: vec![0.0; n + m], split: n }
    }

    /// Uniform point of `Δn × Δm`.
    pub fn uniform_simplex_pair(n: usize, m: usize) -> Self {
        let mut v = BlockVector::zeros(n, m);
        v.x_mut().fill(1.0 / n as f64);
        v.y_mut().fill(1.0 / m as f64);
        v
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.split, self.data.len() - self.split)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn x(&self) -> &[f64] {
        &self.data[..self.split]
    }

    pub fn y(&self) -> &[f64] {
        &self.data[self.split..]
    }

    pub fn x_mut(&mut self) -> &mut [f64] {
        &mut self.data[..self.split]
    }

    pub fn y_mut(&mut self) -> &mut [f64] {
        &mut self.data[self.split..]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn same_shape(&self, other: &BlockVector) -> bool {
        self.split == other.split && self.data.len() == other.data.len()
    }

    pub fn check_shape(&self, other: &BlockVector) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::config(format!(
                "shape mismatch: {:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, scale: f64, other: &BlockVector) {
        assert!(self.same_shape(other));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += scale * b;
        }
    }

    /// `alpha * a + beta * b`.
    pub fn lin_comb(alpha: f64, a: &BlockVector, beta: f64, b: &BlockVector) -> BlockVector {
        assert!(a.same_shape(b));
        let data = a
            .data
            .iter()
            .zip(b.data.iter())
            .map(|(u, v)| alpha * u + beta * v)
            .collect();
        BlockVector { data, split: a.split }
    }

    pub fn sub(&self, other: &BlockVector) -> BlockVector {
        BlockVector::lin_comb(1.0, self, -1.0, other)
    }

    pub fn scale(&self, s: f64) -> BlockVector {
        BlockVector {
            data: self.data.iter().map(|v| s * v).collect(),
            split: self.split,
        }
    }

    pub fn dot(&self, other: &BlockVector) -> f64 {
        assert!(self.same_shape(other));
        self.data.iter().zip(other.data.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs_diff(&self, other: &BlockVector) -> f64 {
        assert!(self.same_shape(other));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    fn debug_check_finite(&self) {
        debug_assert!(self.all_finite(), "non-finite entry in block vector");
    }

    /// Max per-block violation of the `Δn × Δm` constraints
    /// (negative mass or deviation of the block sum from one).
    pub fn simplex_pair_violation(&self) -> f64 {
        let block = |s: &[f64]| {
            let neg = s.iter().fold(0.0f64, |acc, &v| acc.max(-v));
            let sum: f64 = s.iter().sum();
            neg.max((sum - 1.0).abs())
        };
        block(self.x()).max(block(self.y()))
    }
}

fn l1(s: &[f64]) -> f64 {
    s.iter().map(|v| v.abs()).sum()
}

fn linf(s: &[f64]) -> f64 {
    s.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Block norms: `L2`, `L1Block = sqrt(||x||_1^2+||y||_1^2)` and its dual
/// `LInfBlock = sqrt(||x||_inf^2+||y||_inf^2)`.
pub fn block_norms(z: &BlockVector, kind: NormKind) -> f64 {
    match kind {
        NormKind::L2 => z.norm(),
        NormKind::L1Block => (l1(z.x()).powi(2) + l1(z.y()).powi(2)).sqrt(),
        NormKind::LInfBlock => (linf(z.x()).powi(2) + linf(z.y()).powi(2)).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_norm_examples() {
        let z = BlockVector::from_parts(&[1.0, 0.0], &[0.0, 1.0]);
        assert_eq!(block_norms(&z, NormKind::L1Block), 2.0f64.sqrt());
        assert_eq!(block_norms(&z, NormKind::LInfBlock), 2.0f64.sqrt());
        let z = BlockVector::from_parts(&[3.0, 4.0], &[0.0, 0.0]);
        assert_eq!(block_norms(&z, NormKind::L2), 5.0);
    }

    #[test]
    fn split_bookkeeping() {
        let z = BlockVector::from_parts(&[1.0, 2.0, 3.0], &[4.0, 5.0]);
        assert_eq!(z.dims(), (3, 2));
        assert_eq!(z.x(), &[1.0, 2.0, 3.0]);
        assert_eq!(z.y(), &[4.0, 5.0]);
    }

    #[test]
    fn uniform_is_feasible() {
        let z = BlockVector::uniform_simplex_pair(4, 6);
        assert!(z.simplex_pair_violation() < 1e-15);
    }

    #[test]
    fn shape_mismatch_reported() {
        let a = BlockVector::zeros(2, 2);
        let b = BlockVector::zeros(3, 1);
        assert!(a.check_shape(&b).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vec_strategy(len: usize) -> impl Strategy<Value = Vec<f64>> {
            proptest::collection::vec(-10.0f64..10.0, len)
        }

        proptest! {
            // |<u,z>| <= ||u||_{inf,block} * ||z||_{1,block}
            #[test]
            fn norm_duality(u in vec_strategy(6), z in vec_strategy(6)) {
                let u = BlockVector::from_vec(u, 2);
                let z = BlockVector::from_vec(z, 2);
                let lhs = u.dot(&z).abs();
                let rhs = block_norms(&u, NormKind::LInfBlock) * block_norms(&z, NormKind::L1Block);
                prop_assert!(lhs <= rhs + 1e-9 * (1.0 + rhs));
            }
        }
    }
}
