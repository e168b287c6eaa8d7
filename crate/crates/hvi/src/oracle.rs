//! Stochastic oracles for the combined operator: sampling distributions
//! over the component pair index `ξ = (i, j)`, scaled component evaluation,
//! the closed-form Lipschitz bounds of the benchmark instances, and
//! exhaustive-expectation utilities for certification.
//!
//! A draw consumes exactly two uniform variates — one inverse-CDF lookup
//! per block — so trajectories are reproducible from the seed alone.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::block::{block_norms, BlockVector, NormKind};
use crate::error::{Error, Result};
use crate::problem::{sampled_combined, HierarchicalProblem};
use crate::problems::Instance;

/// Sampling distribution over the pair index set `[n] × [m]`, with
/// `Q((i,j)) = c_i r_j`.
///
/// `Uniform` and `StaticImportance` are iteration independent; the adaptive
/// schemes recompute `(c, r)` from a context pair `(u, v)` at every draw.
/// When a block of `u - v` vanishes the adaptive weights are undefined and
/// the scheme falls back to the uniform distribution on that block, which
/// preserves unbiasedness.
#[derive(Debug, Clone)]
pub enum SamplingScheme {
    Uniform,
    StaticImportance { c: Vec<f64>, r: Vec<f64> },
    /// `c_i = |u_i - v_i| / ||u - v||_1` per block.
    AdaptiveL1,
    /// `c_i = (u_i - v_i)² / ||u - v||_2²` per block.
    AdaptiveL2,
}

impl SamplingScheme {
    pub fn is_adaptive(&self) -> bool {
        matches!(self, SamplingScheme::AdaptiveL1 | SamplingScheme::AdaptiveL2)
    }

    /// The block distributions `(c, r)` for the given context. Static
    /// schemes ignore the context; adaptive schemes require it.
    pub fn probabilities(
        &self,
        dims: (usize, usize),
        context: Option<(&BlockVector, &BlockVector)>,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let (n, m) = dims;
        match self {
            SamplingScheme::Uniform => {
                Ok((vec![1.0 / n as f64; n], vec![1.0 / m as f64; m]))
            }
            SamplingScheme::StaticImportance { c, r } => {
                if c.len() != n || r.len() != m {
                    return Err(Error::config("static importance weights have wrong length"));
                }
                Ok((c.clone(), r.clone()))
            }
            SamplingScheme::AdaptiveL1 | SamplingScheme::AdaptiveL2 => {
                let (u, v) = context.ok_or_else(|| {
                    Error::config("adaptive sampling schemes need a context pair (u, v)")
                })?;
                let weight = |d: f64| match self {
                    SamplingScheme::AdaptiveL1 => d.abs(),
                    _ => d * d,
                };
                let block = |a: &[f64], b: &[f64]| -> Vec<f64> {
                    let w: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| weight(x - y)).collect();
                    let s: f64 = w.iter().sum();
                    if s > 0.0 {
                        w.into_iter().map(|t| t / s).collect()
                    } else {
                        vec![1.0 / a.len() as f64; a.len()]
                    }
                };
                Ok((block(u.x(), v.x()), block(u.y(), v.y())))
            }
        }
    }
}

/// One drawn sample: the pair index, its probability mass, and the inverse
/// block weights that scale the component evaluators.
#[derive(Debug, Clone, Copy)]
pub struct OracleSample {
    pub index: (usize, usize),
    pub prob: f64,
    pub inv_ci: f64,
    pub inv_rj: f64,
}

fn draw_from(pmf: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (idx, &p) in pmf.iter().enumerate() {
        acc += p;
        if u < acc {
            return idx;
        }
    }
    // Guard against cumulative rounding: land on the last positive weight.
    pmf.iter().rposition(|&p| p > 0.0).unwrap_or(pmf.len() - 1)
}

/// Draws `ξ = (i, j)` with `Q((i,j)) = c_i r_j`, one uniform variate per
/// block.
pub fn sample_index(
    scheme: &SamplingScheme,
    problem: &dyn HierarchicalProblem,
    rng: &mut ChaCha8Rng,
    context: Option<(&BlockVector, &BlockVector)>,
) -> Result<OracleSample> {
    let (c, r) = scheme.probabilities(problem.pair_dims(), context)?;
    let i = draw_from(&c, rng);
    let j = draw_from(&r, rng);
    Ok(OracleSample {
        index: (i, j),
        prob: c[i] * r[j],
        inv_ci: 1.0 / c[i],
        inv_rj: 1.0 / r[j],
    })
}

/// Exact expectation `Σ_ξ Q(ξ) V^ξ(z)` by enumeration; must equal the full
/// combined operator. Enumeration is capped at `10^6` pairs.
pub fn exhaustive_expectation(
    scheme: &SamplingScheme,
    problem: &dyn HierarchicalProblem,
    beta: f64,
    z: &BlockVector,
    context: Option<(&BlockVector, &BlockVector)>,
) -> Result<BlockVector> {
    let (pn, pm) = problem.pair_dims();
    if pn * pm > 1_000_000 {
        return Err(Error::config(format!(
            "index set too large to enumerate: {} pairs",
            pn * pm
        )));
    }
    let (c, r) = scheme.probabilities((pn, pm), context)?;
    let (n, m) = problem.dims();
    let mut acc = BlockVector::zeros(n, m);
    for i in 0..pn {
        if c[i] == 0.0 {
            continue;
        }
        for j in 0..pm {
            if r[j] == 0.0 {
                continue;
            }
            let v = sampled_combined(problem, beta, (i, j), 1.0 / c[i], 1.0 / r[j], z);
            acc.add_scaled(c[i] * r[j], &v);
        }
    }
    Ok(acc)
}

/// The five closed-form Lipschitz bounds of the benchmark instances plus
/// the generic uniform finite-sum bound. Each variant stores the matrix
/// data it needs, so evaluation is a function of `β` alone.
#[derive(Debug, Clone, Copy)]
pub enum LipschitzRule {
    /// Equilibrium selection, Euclidean solver with pair importance
    /// sampling: `L(β) = sqrt(2(β² q² + ||M||_F²))` with
    /// `q = max{1/c_i, 1/r_j}`.
    EuclidEqSelection { max_inv_prob: f64, m_frob_sq: f64 },
    /// Equilibrium selection, block-ℓ1 geometry:
    /// `L(β) = sqrt(2(β² + ||M||_max²))`.
    BlockL1EqSelection { m_max_sq: f64 },
    /// Equilibrium selection, ℓ2 geometry:
    /// `L(β) = sqrt(2(β² + ||M||_F²))`.
    BlockL2EqSelection { m_frob_sq: f64 },
    /// Constrained instance, block-ℓ1 geometry:
    /// `L(β) = sqrt(3(max{||PB||_max², ||PC||_max²} + β² ||M||_max²))`.
    BlockL1Constrained { pbc_max_sq: f64, m_max_sq: f64 },
    /// Constrained instance, ℓ2 geometry:
    /// `L(β) = sqrt(3(max{||PB||_F², ||PC||_F²} + β² ||M||_F²))`.
    BlockL2Constrained { pbc_frob_sq: f64, m_frob_sq: f64 },
    /// Uniform sampling of a generic finite sum with per-component bounds:
    /// `L = sqrt(|A| Σ_a L_a²)`.
    UniformFiniteSum { count: usize, comp_sq_sum: f64 },
    /// Fixed constant (tests and overrides).
    Constant { value: f64 },
    /// Full-operator constant for the deterministic baseline:
    /// `L(β) = β L_F1 + L_F2`.
    Deterministic { l_f1: f64, l_f2: f64 },
}

impl LipschitzRule {
    pub fn value(&self, beta: f64) -> f64 {
        match *self {
            LipschitzRule::EuclidEqSelection { max_inv_prob, m_frob_sq } => {
                (2.0 * (beta * beta * max_inv_prob * max_inv_prob + m_frob_sq)).sqrt()
            }
            LipschitzRule::BlockL1EqSelection { m_max_sq } => {
                (2.0 * (beta * beta + m_max_sq)).sqrt()
            }
            LipschitzRule::BlockL2EqSelection { m_frob_sq } => {
                (2.0 * (beta * beta + m_frob_sq)).sqrt()
            }
            LipschitzRule::BlockL1Constrained { pbc_max_sq, m_max_sq } => {
                (3.0 * (pbc_max_sq + beta * beta * m_max_sq)).sqrt()
            }
            LipschitzRule::BlockL2Constrained { pbc_frob_sq, m_frob_sq } => {
                (3.0 * (pbc_frob_sq + beta * beta * m_frob_sq)).sqrt()
            }
            LipschitzRule::UniformFiniteSum { count, comp_sq_sum } => {
                (count as f64 * comp_sq_sum).sqrt()
            }
            LipschitzRule::Constant { value } => value,
            LipschitzRule::Deterministic { l_f1, l_f2 } => beta * l_f1 + l_f2,
        }
    }

    pub fn provenance(&self) -> &'static str {
        match self {
            LipschitzRule::EuclidEqSelection { .. } => "euclid-eq-selection",
            LipschitzRule::BlockL1EqSelection { .. } => "l1-eq-selection",
            LipschitzRule::BlockL2EqSelection { .. } => "l2-eq-selection",
            LipschitzRule::BlockL1Constrained { .. } => "l1-constrained",
            LipschitzRule::BlockL2Constrained { .. } => "l2-constrained",
            LipschitzRule::UniformFiniteSum { .. } => "uniform-finite-sum",
            LipschitzRule::Constant { .. } => "constant",
            LipschitzRule::Deterministic { .. } => "deterministic-full",
        }
    }

    /// Which Lipschitz property the rule certifies: the expected-norm sense
    /// of the Euclidean oracle assumption or the mean-square sense of the
    /// Bregman one, together with the norm it is stated in.
    pub fn sense(&self) -> LipschitzSense {
        match self {
            LipschitzRule::EuclidEqSelection { .. }
            | LipschitzRule::UniformFiniteSum { .. }
            | LipschitzRule::Constant { .. }
            | LipschitzRule::Deterministic { .. } => LipschitzSense::ExpectedNorm(NormKind::L2),
            LipschitzRule::BlockL1EqSelection { .. } | LipschitzRule::BlockL1Constrained { .. } => {
                LipschitzSense::MeanSquare(NormKind::LInfBlock)
            }
            LipschitzRule::BlockL2EqSelection { .. } | LipschitzRule::BlockL2Constrained { .. } => {
                LipschitzSense::MeanSquare(NormKind::L2)
            }
        }
    }
}

/// `ExpectedNorm`: `E||V^ξ(x) - V^ξ(y)|| <= L ||x - y||`.
/// `MeanSquare`: `E||V^ξ(x) - V^ξ(y)||²_* <= L² ||x - y||²` with the dual
/// norm of the geometry.
#[derive(Debug, Clone, Copy)]
pub enum LipschitzSense {
    ExpectedNorm(NormKind),
    MeanSquare(NormKind),
}

impl LipschitzSense {
    /// Primal norm the right-hand side `||x - y||` is measured in.
    fn primal(&self) -> NormKind {
        match self {
            LipschitzSense::ExpectedNorm(_) => NormKind::L2,
            LipschitzSense::MeanSquare(NormKind::LInfBlock) => NormKind::L1Block,
            LipschitzSense::MeanSquare(k) => *k,
        }
    }
}

/// Formula selector for [`lipschitz_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LipFormulaKind {
    EuclidEqSelection,
    L1EqSelection,
    L2EqSelection,
    L1Constrained,
    L2Constrained,
}

/// A certified bound value with the formula that produced it.
#[derive(Debug, Clone, Copy)]
pub struct LipschitzBound {
    pub value: f64,
    pub provenance: &'static str,
}

/// Resolves a formula against an instance. Asking for a formula of the
/// other instance is a configuration error.
pub fn lipschitz_rule(kind: LipFormulaKind, instance: &Instance) -> Result<LipschitzRule> {
    match (kind, instance) {
        (LipFormulaKind::EuclidEqSelection, Instance::EqSelection(p)) => {
            let (c, r) = p.static_importance();
            let max_inv = c
                .iter()
                .chain(r.iter())
                .map(|&q| 1.0 / q)
                .fold(0.0, f64::max);
            Ok(LipschitzRule::EuclidEqSelection {
                max_inv_prob: max_inv,
                m_frob_sq: p.game().frobenius_sq(),
            })
        }
        (LipFormulaKind::L1EqSelection, Instance::EqSelection(p)) => {
            Ok(LipschitzRule::BlockL1EqSelection { m_max_sq: p.game().max_abs().powi(2) })
        }
        (LipFormulaKind::L2EqSelection, Instance::EqSelection(p)) => {
            Ok(LipschitzRule::BlockL2EqSelection { m_frob_sq: p.game().frobenius_sq() })
        }
        (LipFormulaKind::L1Constrained, Instance::LinConstrained(p)) => {
            Ok(LipschitzRule::BlockL1Constrained {
                pbc_max_sq: p.constraint().pb_max_abs().powi(2),
                m_max_sq: p.game().max_abs().powi(2),
            })
        }
        (LipFormulaKind::L2Constrained, Instance::LinConstrained(p)) => {
            Ok(LipschitzRule::BlockL2Constrained {
                pbc_frob_sq: p.constraint().pb_frobenius_sq(),
                m_frob_sq: p.game().frobenius_sq(),
            })
        }
        _ => Err(Error::config(format!(
            "lipschitz formula {kind:?} does not apply to instance {:?}",
            instance.kind()
        ))),
    }
}

/// The cited closed-form bound for `(formula, β, instance)`.
pub fn lipschitz_bound(kind: LipFormulaKind, beta: f64, instance: &Instance) -> Result<LipschitzBound> {
    let rule = lipschitz_rule(kind, instance)?;
    Ok(LipschitzBound { value: rule.value(beta), provenance: rule.provenance() })
}

/// Outcome of the empirical certification of a Lipschitz bound.
#[derive(Debug, Clone)]
pub struct LipschitzCheckReport {
    pub max_ratio: f64,
    pub trials: usize,
    pub skipped_degenerate: usize,
    pub pass: bool,
}

/// Certifies a bound against the exact oracle expectation: for `trials`
/// random feasible pairs `(x, y)`, computes the exhaustive expectation of
/// `||V^ξ(x) - V^ξ(y)||` (expected-norm sense) or `||·||²_*` (mean-square
/// sense) and the ratio against `L ||x - y||` (resp. `L² ||x - y||²`).
/// Passes iff the max ratio is at most `1 + 1e-9`. Pairs with `x = y` are
/// skipped.
pub fn empirical_lipschitz_check(
    scheme: &SamplingScheme,
    problem: &dyn HierarchicalProblem,
    beta: f64,
    rule: &LipschitzRule,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<LipschitzCheckReport> {
    let (pn, pm) = problem.pair_dims();
    let (n, m) = problem.dims();
    let sense = rule.sense();
    let bound = rule.value(beta);
    let mut max_ratio: f64 = 0.0;
    let mut skipped = 0;
    for _ in 0..trials {
        let x = random_feasible(rng, n, m);
        let y = random_feasible(rng, n, m);
        let diff_norm = block_norms(&x.sub(&y), sense.primal());
        if diff_norm == 0.0 {
            skipped += 1;
            continue;
        }
        let (c, r) = scheme.probabilities((pn, pm), Some((&x, &y)))?;
        let mut expectation = 0.0;
        for i in 0..pn {
            if c[i] == 0.0 {
                continue;
            }
            for j in 0..pm {
                if r[j] == 0.0 {
                    continue;
                }
                let vx = sampled_combined(problem, beta, (i, j), 1.0 / c[i], 1.0 / r[j], &x);
                let vy = sampled_combined(problem, beta, (i, j), 1.0 / c[i], 1.0 / r[j], &y);
                let d = vx.sub(&vy);
                let term = match sense {
                    LipschitzSense::ExpectedNorm(k) => block_norms(&d, k),
                    LipschitzSense::MeanSquare(k) => block_norms(&d, k).powi(2),
                };
                expectation += c[i] * r[j] * term;
            }
        }
        let rhs = match sense {
            LipschitzSense::ExpectedNorm(_) => bound * diff_norm,
            LipschitzSense::MeanSquare(_) => bound * bound * diff_norm * diff_norm,
        };
        max_ratio = max_ratio.max(expectation / rhs);
    }
    Ok(LipschitzCheckReport {
        max_ratio,
        trials,
        skipped_degenerate: skipped,
        pass: max_ratio <= 1.0 + 1e-9,
    })
}

/// A random point of `Δn × Δm`, Dirichlet(1) per block.
pub fn random_feasible(rng: &mut ChaCha8Rng, n: usize, m: usize) -> BlockVector {
    let mut draw = |d: usize| -> Vec<f64> {
        let mut v: Vec<f64> = (0..d).map(|_| -(rng.gen::<f64>().max(1e-300)).ln()).collect();
        let s: f64 = v.iter().sum();
        for x in &mut v {
            *x /= s;
        }
        v
    };
    let xb = draw(n);
    let yb = draw(m);
    BlockVector::from_parts(&xb, &yb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Instance, InstanceKind};
    use rand::SeedableRng;

    #[test]
    fn uniform_probabilities() {
        let s = SamplingScheme::Uniform;
        let (c, r) = s.probabilities((2, 2), None).unwrap();
        assert_eq!(c, vec![0.5, 0.5]);
        assert_eq!(r, vec![0.5, 0.5]);
    }

    #[test]
    fn adaptive_l1_example() {
        // u - v = ((3, 1), (1, 1)) → c = (¾, ¼), r = (½, ½).
        let u = BlockVector::from_parts(&[3.0, 1.0], &[1.0, 1.0]);
        let v = BlockVector::zeros(2, 2);
        let s = SamplingScheme::AdaptiveL1;
        let (c, r) = s.probabilities((2, 2), Some((&u, &v))).unwrap();
        assert_eq!(c, vec![0.75, 0.25]);
        assert_eq!(r, vec![0.5, 0.5]);
    }

    #[test]
    fn adaptive_requires_context_and_handles_degenerate_blocks() {
        let s = SamplingScheme::AdaptiveL2;
        assert!(s.probabilities((2, 2), None).is_err());
        let u = BlockVector::from_parts(&[0.5, 0.5], &[1.0, 0.0]);
        let (c, r) = s.probabilities((2, 2), Some((&u, &u))).unwrap();
        assert_eq!(c, vec![0.5, 0.5]);
        assert_eq!(r, vec![0.5, 0.5]);
    }

    #[test]
    fn produced_distributions_normalize(){
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let inst = Instance::build(InstanceKind::EqSelection, 3).unwrap();
        let p = inst.problem();
        let schemes = [
            SamplingScheme::Uniform,
            {
                let (c, r) = p.static_importance();
                SamplingScheme::StaticImportance { c, r }
            },
            SamplingScheme::AdaptiveL1,
            SamplingScheme::AdaptiveL2,
        ];
        for s in &schemes {
            for _ in 0..50 {
                let u = random_feasible(&mut rng, 6, 6);
                let v = random_feasible(&mut rng, 6, 6);
                let (c, r) = s.probabilities((6, 6), Some((&u, &v))).unwrap();
                for w in [&c, &r] {
                    let sum: f64 = w.iter().sum();
                    assert!((sum - 1.0).abs() < 1e-12);
                    assert!(w.iter().all(|&t| t >= 0.0));
                }
            }
        }
    }

    #[test]
    fn adaptive_l1_tightness_identity() {
        // Σ_i (u_i - v_i)² / c_i = ||u - v||_1² per block.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let u = random_feasible(&mut rng, 5, 4);
            let v = random_feasible(&mut rng, 5, 4);
            let (c, r) = SamplingScheme::AdaptiveL1.probabilities((5, 4), Some((&u, &v))).unwrap();
            let check = |a: &[f64], b: &[f64], w: &[f64]| {
                let l1: f64 = a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
                if l1 == 0.0 {
                    return;
                }
                let sum: f64 = a
                    .iter()
                    .zip(b)
                    .zip(w)
                    .filter(|(_, &wi)| wi > 0.0)
                    .map(|((x, y), &wi)| (x - y).powi(2) / wi)
                    .sum();
                assert!((sum - l1 * l1).abs() <= 1e-12 * l1 * l1.max(1.0));
            };
            check(u.x(), v.x(), &c);
            check(u.y(), v.y(), &r);
        }
    }

    #[test]
    fn draws_match_requested_distribution_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let inst = Instance::build(InstanceKind::EqSelection, 1).unwrap();
        let p = inst.problem();
        let u = BlockVector::from_parts(&[1.0, 0.0], &[0.5, 0.5]);
        let v = BlockVector::from_parts(&[0.0, 1.0], &[0.25, 0.75]);
        for _ in 0..200 {
            let s = sample_index(&SamplingScheme::AdaptiveL1, p, &mut rng, Some((&u, &v))).unwrap();
            assert!(s.prob > 0.0);
            assert!(s.index.0 < 2 && s.index.1 < 2);
        }
    }

    #[test]
    fn exhaustive_expectation_is_unbiased() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for kind in [InstanceKind::EqSelection, InstanceKind::LinConstrained] {
            let inst = Instance::build(kind, 2).unwrap();
            let p = inst.problem();
            let (c, r) = p.static_importance();
            let schemes = [
                SamplingScheme::Uniform,
                SamplingScheme::StaticImportance { c, r },
                SamplingScheme::AdaptiveL1,
                SamplingScheme::AdaptiveL2,
            ];
            for s in &schemes {
                for _ in 0..20 {
                    let z = random_feasible(&mut rng, 4, 4);
                    let ctx_u = random_feasible(&mut rng, 4, 4);
                    let ctx_v = random_feasible(&mut rng, 4, 4);
                    let beta = 0.7;
                    let exp =
                        exhaustive_expectation(s, p, beta, &z, Some((&ctx_u, &ctx_v))).unwrap();
                    let full =
                        crate::operator::eval_combined(beta, p.f1(), p.f2(), &z).unwrap();
                    let scale = full.norm().max(1.0);
                    assert!(exp.max_abs_diff(&full) / scale < 1e-12);
                }
            }
        }
    }

    #[test]
    fn enumeration_budget_enforced() {
        struct Huge;
        impl crate::operator::FiniteSumOperator for Huge {
            fn dims(&self) -> (usize, usize) {
                (2000, 2000)
            }
            fn component_count(&self) -> usize {
                4000
            }
            fn accumulate_component(&self, _a: usize, _z: &BlockVector, _out: &mut BlockVector) {}
        }
        // pair_dims defaults to dims, so 2000 × 2000 pairs exceeds the cap.
        struct HugeProblem {
            op: Huge,
        }
        impl HierarchicalProblem for HugeProblem {
            fn dims(&self) -> (usize, usize) {
                (2000, 2000)
            }
            fn f1(&self) -> &dyn crate::operator::FiniteSumOperator {
                &self.op
            }
            fn f2(&self) -> &dyn crate::operator::FiniteSumOperator {
                &self.op
            }
            fn lip_f1(&self) -> f64 {
                1.0
            }
            fn lip_f2(&self) -> f64 {
                1.0
            }
            fn g1_value(&self, _z: &BlockVector) -> crate::problem::ExtReal {
                crate::problem::ExtReal::Finite(0.0)
            }
            fn g2_value(&self, _z: &BlockVector) -> crate::problem::ExtReal {
                crate::problem::ExtReal::Finite(0.0)
            }
            fn combined_prox_euclid(&self, _b: f64, _t: f64, p: &BlockVector) -> BlockVector {
                p.clone()
            }
            fn sampled_f1(&self, _i: (usize, usize), _c: f64, _r: f64, z: &BlockVector) -> BlockVector {
                z.clone()
            }
            fn sampled_f2(&self, _i: (usize, usize), _c: f64, _r: f64, z: &BlockVector) -> BlockVector {
                z.clone()
            }
            fn static_importance(&self) -> (Vec<f64>, Vec<f64>) {
                (vec![], vec![])
            }
        }
        let hp = HugeProblem { op: Huge };
        let z = BlockVector::zeros(2000, 2000);
        assert!(matches!(
            exhaustive_expectation(&SamplingScheme::Uniform, &hp, 0.0, &z, None),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn bound_examples() {
        let eq1 = Instance::build(InstanceKind::EqSelection, 1).unwrap();
        // ℓ1 eq-selection at β = 0 with ||M||_max = 1 → √2.
        let b = lipschitz_bound(LipFormulaKind::L1EqSelection, 0.0, &eq1).unwrap();
        assert!((b.value - 2f64.sqrt()).abs() < 1e-15);
        // ℓ2 eq-selection at β = 0, ν = 1 (||M||_F² = 4) → √8.
        let b = lipschitz_bound(LipFormulaKind::L2EqSelection, 0.0, &eq1).unwrap();
        assert!((b.value - 8f64.sqrt()).abs() < 1e-15);
        // Generic uniform finite-sum bound: |A| = 2, L_a = 1 each → 2.
        let r = LipschitzRule::UniformFiniteSum { count: 2, comp_sq_sum: 2.0 };
        assert_eq!(r.value(0.0), 2.0);
        // Mismatched formula/instance pairs are configuration errors.
        assert!(lipschitz_bound(LipFormulaKind::L1Constrained, 0.0, &eq1).is_err());
        let lc = Instance::build(InstanceKind::LinConstrained, 1).unwrap();
        assert!(lipschitz_bound(LipFormulaKind::EuclidEqSelection, 0.0, &lc).is_err());
    }

    #[test]
    fn bounds_monotone_in_beta() {
        let eq = Instance::build(InstanceKind::EqSelection, 2).unwrap();
        let lc = Instance::build(InstanceKind::LinConstrained, 2).unwrap();
        let cases = [
            (LipFormulaKind::EuclidEqSelection, &eq),
            (LipFormulaKind::L1EqSelection, &eq),
            (LipFormulaKind::L2EqSelection, &eq),
            (LipFormulaKind::L1Constrained, &lc),
            (LipFormulaKind::L2Constrained, &lc),
        ];
        for (kind, inst) in cases {
            let mut prev = -1.0;
            for beta in [0.0, 0.2, 0.5, 0.9, 1.0] {
                let v = lipschitz_bound(kind, beta, inst).unwrap().value;
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn halved_bound_fails_certification() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let inst = Instance::build(InstanceKind::EqSelection, 2).unwrap();
        let rule = lipschitz_rule(LipFormulaKind::L2EqSelection, &inst).unwrap();
        let good =
            empirical_lipschitz_check(&SamplingScheme::AdaptiveL2, inst.problem(), 0.5, &rule, 50, &mut rng)
                .unwrap();
        assert!(good.pass, "cited bound fails: ratio {}", good.max_ratio);
        let halved = LipschitzRule::Constant { value: rule.value(0.5) / 2.0 };
        // The constant rule checks the expected-norm sense; build the
        // mean-square comparison by hand instead.
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let report = empirical_lipschitz_check(
            &SamplingScheme::AdaptiveL2,
            inst.problem(),
            0.5,
            &LipschitzRule::BlockL2EqSelection { m_frob_sq: inst.game().frobenius_sq() / 4.0 },
            50,
            &mut rng,
        )
        .unwrap();
        let _ = halved;
        assert!(!report.pass, "artificially shrunk bound should fail");
    }
}
