//! Finite-sum operators and the combined operator `V_k = β F1 + F2`.
//!
//! An operator `F` in this crate is an exact sum of finitely many component
//! maps indexed by a label set; the full value is always the left-to-right
//! sum of the components, so runs are bitwise reproducible and the
//! decomposition identity is testable by direct summation. Components
//! accumulate sparsely into a shared buffer; no dense component matrices are
//! materialized.

use crate::block::BlockVector;
use crate::error::{Error, Result};

/// An operator with an exact finite-sum representation `F = Σ_a F^a`.
pub trait FiniteSumOperator {
    /// Block split `(n, m)` of both input and output vectors.
    fn dims(&self) -> (usize, usize);

    /// Number of components in the index set.
    fn component_count(&self) -> usize;

    /// Adds component `a` evaluated at `z` into `out`.
    fn accumulate_component(&self, a: usize, z: &BlockVector, out: &mut BlockVector);

    /// Component `a` at `z` as a dense vector.
    fn component(&self, a: usize, z: &BlockVector) -> BlockVector {
        let (n, m) = self.dims();
        let mut out = BlockVector::zeros(n, m);
        self.accumulate_component(a, z, &mut out);
        out
    }

    /// Full operator value, summed over components left to right.
    fn full(&self, z: &BlockVector) -> BlockVector {
        let (n, m) = self.dims();
        let mut out = BlockVector::zeros(n, m);
        for a in 0..self.component_count() {
            self.accumulate_component(a, z, &mut out);
        }
        out
    }
}

/// Full evaluation with a shape check on the input.
pub fn eval_full(op: &dyn FiniteSumOperator, z: &BlockVector) -> Result<BlockVector> {
    if z.dims() != op.dims() {
        return Err(Error::config(format!(
            "operator expects dims {:?}, got {:?}",
            op.dims(),
            z.dims()
        )));
    }
    Ok(op.full(z))
}

/// `β F1(z) + F2(z)` for `β >= 0`.
pub fn eval_combined(
    beta: f64,
    f1: &dyn FiniteSumOperator,
    f2: &dyn FiniteSumOperator,
    z: &BlockVector,
) -> Result<BlockVector> {
    if beta < 0.0 || !beta.is_finite() {
        return Err(Error::config(format!("regularization weight must be >= 0, got {beta}")));
    }
    let mut v = eval_full(f1, z)?;
    let v2 = eval_full(f2, z)?;
    for (a, b) in v.as_mut_slice().iter_mut().zip(v2.as_slice()) {
        *a = beta * *a + b;
    }
    Ok(v)
}

/// The combined operator `V = β F1 + F2` with its inherited finite-sum
/// structure `V^a = β F1^a + F2^a` (missing components count as zero when
/// the two index sets differ in length).
pub struct CombinedOperator<'a> {
    pub beta: f64,
    pub f1: &'a dyn FiniteSumOperator,
    pub f2: &'a dyn FiniteSumOperator,
}

impl<'a> CombinedOperator<'a> {
    pub fn new(beta: f64, f1: &'a dyn FiniteSumOperator, f2: &'a dyn FiniteSumOperator) -> Result<Self> {
        if beta < 0.0 || !beta.is_finite() {
            return Err(Error::config(format!("regularization weight must be >= 0, got {beta}")));
        }
        if f1.dims() != f2.dims() {
            return Err(Error::config("F1 and F2 must act on the same block space"));
        }
        Ok(CombinedOperator { beta, f1, f2 })
    }

    pub fn eval(&self, z: &BlockVector) -> Result<BlockVector> {
        eval_combined(self.beta, self.f1, self.f2, z)
    }
}

impl FiniteSumOperator for CombinedOperator<'_> {
    fn dims(&self) -> (usize, usize) {
        self.f1.dims()
    }

    fn component_count(&self) -> usize {
        self.f1.component_count().max(self.f2.component_count())
    }

    fn accumulate_component(&self, a: usize, z: &BlockVector, out: &mut BlockVector) {
        if a < self.f1.component_count() {
            let mut part = BlockVector::zeros(out.dims().0, out.dims().1);
            self.f1.accumulate_component(a, z, &mut part);
            out.add_scaled(self.beta, &part);
        }
        if a < self.f2.component_count() {
            self.f2.accumulate_component(a, z, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Toy operator: F(z) = z split into one component per coordinate.
    pub struct Identity {
        pub n: usize,
        pub m: usize,
    }

    impl FiniteSumOperator for Identity {
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

    #[test]
    fn full_equals_component_sum() {
        let op = Identity { n: 3, m: 2 };
        let z = BlockVector::from_parts(&[0.5, -1.0, 2.0], &[4.0, 0.25]);
        let full = op.full(&z);
        let mut acc = BlockVector::zeros(3, 2);
        for a in 0..op.component_count() {
            acc.add_scaled(1.0, &op.component(a, &z));
        }
        assert_eq!(full, acc);
        assert_eq!(full, z);
    }

    #[test]
    fn dim_mismatch_is_config_error() {
        let op = Identity { n: 3, m: 2 };
        let z = BlockVector::zeros(2, 2);
        assert!(matches!(eval_full(&op, &z), Err(Error::Config(_))));
    }

    #[test]
    fn combined_zero_beta_is_f2() {
        let f1 = Identity { n: 2, m: 2 };
        let f2 = Identity { n: 2, m: 2 };
        let z = BlockVector::from_parts(&[1.0, 2.0], &[3.0, 4.0]);
        let v = eval_combined(0.0, &f1, &f2, &z).unwrap();
        assert_eq!(v, z);
    }

    #[test]
    fn combined_linearity_when_f1_equals_f2() {
        let f1 = Identity { n: 2, m: 2 };
        let f2 = Identity { n: 2, m: 2 };
        let z = BlockVector::from_parts(&[1.0, 2.0], &[3.0, 4.0]);
        let v = eval_combined(1.0, &f1, &f2, &z).unwrap();
        assert_eq!(v, z.scale(2.0));
    }

    #[test]
    fn negative_beta_rejected() {
        let f1 = Identity { n: 2, m: 2 };
        let f2 = Identity { n: 2, m: 2 };
        let z = BlockVector::zeros(2, 2);
        assert!(eval_combined(-0.1, &f1, &f2, &z).is_err());
    }

    #[test]
    fn combined_matches_per_component_sum() {
        let f1 = Identity { n: 2, m: 2 };
        let f2 = Identity { n: 2, m: 2 };
        let comb = CombinedOperator::new(0.7, &f1, &f2).unwrap();
        let z = BlockVector::from_parts(&[1.0, -2.0], &[0.5, 4.0]);
        let direct = comb.eval(&z).unwrap();
        let summed = comb.full(&z);
        assert!(direct.max_abs_diff(&summed) < 1e-15);
    }
}
