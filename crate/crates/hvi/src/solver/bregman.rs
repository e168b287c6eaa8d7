//! Epoch-based variance-reduced mirror prox in Euclidean or entropic
//! geometry.
//!
//! One epoch `s` runs `K` inner iterations anchored at the outer snapshot
//! `w^s`, each solving two three-point subproblems interpolating between
//! the running inner iterate and the mirror average `w̄^s` of the previous
//! epoch. The sampling distribution is fixed per inner iteration from the
//! pair `(y_{k+1}^s, w^s)`, matching the adaptive importance schemes. After
//! the inner loop, `w^{s+1}` is the arithmetic mean of the inner iterates
//! and `w̄^{s+1}` their mirror average, and the inner chain continues from
//! `x_K^s`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::block::BlockVector;
use crate::error::{Error, Result};
use crate::geometry::{mirror_average, GeometryKind};
use crate::oracle::{sample_index, LipschitzRule};
use crate::problem::{combined_full, sampled_combined, HierarchicalProblem};
use crate::schedule::ScheduleParams;

use super::{ErgodicAccumulator, OracleMode, TauRule};

/// Per-inner-iteration record for the pathwise energy instrumentation.
#[derive(Debug, Clone)]
pub struct BregmanTrace {
    pub s: u64,
    pub k: usize,
    /// Inner iterate `x_k^s` the two subproblems interpolate from.
    pub x_k: BlockVector,
    pub y_next: BlockVector,
    pub x_next: BlockVector,
    pub w: BlockVector,
    pub wbar: BlockVector,
    /// Full operator at the snapshot, `V_s(w^s)`.
    pub v_w: BlockVector,
    /// Variance-reduced estimate `A_{k+1}^s`.
    pub a: BlockVector,
    pub tau: f64,
    pub beta: f64,
    pub alpha: f64,
}

pub struct BregmanVrSolver<'a> {
    problem: &'a dyn HierarchicalProblem,
    geom: GeometryKind,
    params: ScheduleParams,
    oracle: OracleMode,
    lip: LipschitzRule,
    tau_rule: TauRule,
    rng: ChaCha8Rng,
    /// Inner chain head `x_0^s`.
    x0: BlockVector,
    /// Previous epoch's inner iterates `{x_j^{s-1}}`, for diagnostics.
    prev_epoch: Vec<BlockVector>,
    w: BlockVector,
    wbar: BlockVector,
    cache_f1: BlockVector,
    cache_f2: BlockVector,
    s: u64,
    erg: ErgodicAccumulator,
    record_trace: bool,
    traces: Vec<BregmanTrace>,
    beta_override: Option<f64>,
}

impl<'a> BregmanVrSolver<'a> {
    pub fn new(
        problem: &'a dyn HierarchicalProblem,
        geom: GeometryKind,
        params: ScheduleParams,
        oracle: OracleMode,
        lip: LipschitzRule,
        tau_rule: TauRule,
        start: BlockVector,
        seed: u64,
    ) -> Result<Self> {
        if start.dims() != problem.dims() {
            return Err(Error::config("start point has wrong dimensions"));
        }
        if params.k_inner < 1 {
            return Err(Error::config("epoch length K must be at least 1"));
        }
        if geom == GeometryKind::EntropicBlockSimplex {
            if start.simplex_pair_violation() > 1e-10 {
                return Err(Error::config("entropic geometry needs a feasible start"));
            }
            if start.as_slice().iter().any(|&v| v <= 0.0) {
                return Err(Error::config("entropic geometry needs a strictly interior start"));
            }
        }
        let (n, m) = problem.dims();
        let cache_f1 = problem.f1().full(&start);
        let cache_f2 = problem.f2().full(&start);
        // Data line of the method: x_j^{-1} = x_0^0 = w^0 for all j, so the
        // initial mirror average collapses to the start point.
        Ok(BregmanVrSolver {
            problem,
            geom,
            params: params.clone(),
            oracle,
            lip,
            tau_rule,
            rng: ChaCha8Rng::seed_from_u64(seed),
            prev_epoch: vec![start.clone(); params.k_inner],
            x0: start.clone(),
            wbar: start.clone(),
            w: start,
            cache_f1,
            cache_f2,
            s: 0,
            erg: ErgodicAccumulator::new(n, m),
            record_trace: false,
            traces: Vec::new(),
            beta_override: None,
        })
    }

    pub fn record_traces(&mut self, on: bool) {
        self.record_trace = on;
    }

    /// Pins the regularization weight instead of following the epoch
    /// schedule. `Some(0.0)` runs the pure lower-level problem.
    pub fn override_beta(&mut self, beta: Option<f64>) {
        self.beta_override = beta;
    }

    pub fn geometry(&self) -> GeometryKind {
        self.geom
    }

    pub fn epoch(&self) -> u64 {
        self.s
    }

    pub fn snapshot(&self) -> &BlockVector {
        &self.w
    }

    pub fn mirror_snapshot(&self) -> &BlockVector {
        &self.wbar
    }

    pub fn inner_head(&self) -> &BlockVector {
        &self.x0
    }

    pub fn previous_epoch_iterates(&self) -> &[BlockVector] {
        &self.prev_epoch
    }

    pub fn ergodic(&self) -> &ErgodicAccumulator {
        &self.erg
    }

    /// `x̂^S = Σ_s τ_s Σ_k y_{k+1}^s / (K T_S)`: the accumulator weights
    /// every inner `y` by `τ_s`, so its total weight is `K T_S`.
    pub fn ergodic_point(&self) -> Result<BlockVector> {
        self.erg.point()
    }

    /// Traces of the most recent epoch (`record_traces(true)` required).
    pub fn last_epoch_traces(&self) -> &[BregmanTrace] {
        &self.traces
    }

    pub fn cached_combined(&self, beta: f64) -> BlockVector {
        BlockVector::lin_comb(beta, &self.cache_f1, 1.0, &self.cache_f2)
    }

    /// Runs one full epoch of `K` inner iterations.
    pub fn run_epoch(&mut self) -> Result<BregmanEpochInfo> {
        let beta = self.beta_override.unwrap_or_else(|| self.params.beta_bregman(self.s));
        let tau = self
            .tau_rule
            .bregman_tau(&self.params, self.lip.value(beta), beta, self.problem)?;
        let alpha = self.params.alpha;
        let k_inner = self.params.k_inner;

        let v_w = self.cached_combined(beta);
        if self.record_trace {
            self.traces.clear();
        }

        let mut cur = self.x0.clone();
        let mut produced: Vec<BlockVector> = Vec::with_capacity(k_inner);
        for k in 0..k_inner {
            let u_y = v_w.scale(tau);
            let y = self
                .problem
                .bregman_prox(self.geom, beta, tau, &u_y, &cur, &self.wbar, alpha)?;

            let (v_xi_y, v_xi_w) = match &self.oracle {
                OracleMode::Sampled(scheme) => {
                    let sample =
                        sample_index(scheme, self.problem, &mut self.rng, Some((&y, &self.w)))?;
                    (
                        sampled_combined(self.problem, beta, sample.index, sample.inv_ci, sample.inv_rj, &y),
                        sampled_combined(self.problem, beta, sample.index, sample.inv_ci, sample.inv_rj, &self.w),
                    )
                }
                OracleMode::FullBatch => (
                    combined_full(self.problem, beta, &y)?,
                    combined_full(self.problem, beta, &self.w)?,
                ),
            };

            let mut a = v_w.clone();
            a.add_scaled(1.0, &v_xi_y);
            a.add_scaled(-1.0, &v_xi_w);

            let u_x = a.scale(tau);
            let x_next = self
                .problem
                .bregman_prox(self.geom, beta, tau, &u_x, &cur, &self.wbar, alpha)?;

            self.erg.add(tau, &y);
            if self.record_trace {
                self.traces.push(BregmanTrace {
                    s: self.s,
                    k,
                    x_k: cur.clone(),
                    y_next: y,
                    x_next: x_next.clone(),
                    w: self.w.clone(),
                    wbar: self.wbar.clone(),
                    v_w: v_w.clone(),
                    a,
                    tau,
                    beta,
                    alpha,
                });
            }
            produced.push(x_next.clone());
            cur = x_next;
        }

        // w^{s+1} = (1/K) Σ x_k^s, ∇d(w̄^{s+1}) = (1/K) Σ ∇d(x_k^s),
        // x_0^{s+1} = x_K^s.
        let mut mean = BlockVector::zeros(self.w.dims().0, self.w.dims().1);
        for p in &produced {
            mean.add_scaled(1.0, p);
        }
        self.w = mean.scale(1.0 / k_inner as f64);
        self.wbar = mirror_average(self.geom, &produced)?;
        self.x0 = cur;
        self.prev_epoch = produced;
        self.cache_f1 = self.problem.f1().full(&self.w);
        self.cache_f2 = self.problem.f2().full(&self.w);
        self.s += 1;
        Ok(BregmanEpochInfo { tau, beta, inner_iterations: k_inner })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BregmanEpochInfo {
    pub tau: f64,
    pub beta: f64,
    pub inner_iterations: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{bregman_divergence, grad_d, prox_simplex_pair};
    use crate::oracle::SamplingScheme;
    use crate::problems::{equilibrium_from_weights, EquilibriumSelection};

    fn params_k(k: usize) -> ScheduleParams {
        ScheduleParams { theta: 0.1, alpha: 0.9, k_inner: k, ..Default::default() }
    }

    fn interior_start(n: usize, m: usize) -> BlockVector {
        // Deterministic asymmetric interior point: normalized ramps.
        let ramp = |d: usize| -> Vec<f64> {
            let s: f64 = (1..=d).map(|t| t as f64).sum();
            (1..=d).map(|t| t as f64 / s).collect()
        };
        BlockVector::from_parts(&ramp(n), &ramp(m))
    }

    #[test]
    fn entropic_iterates_stay_interior_and_normalized() {
        let p = EquilibriumSelection::new(2).unwrap();
        let mut solver = BregmanVrSolver::new(
            &p,
            GeometryKind::EntropicBlockSimplex,
            params_k(5),
            OracleMode::Sampled(SamplingScheme::AdaptiveL1),
            LipschitzRule::BlockL1EqSelection { m_max_sq: 1.0 },
            TauRule::Experiment,
            interior_start(4, 4),
            11,
        )
        .unwrap();
        for _ in 0..50 {
            solver.run_epoch().unwrap();
            for point in [solver.snapshot(), solver.mirror_snapshot(), solver.inner_head()] {
                assert!(point.simplex_pair_violation() < 1e-10);
                assert!(point.as_slice().iter().all(|&v| v > 0.0));
            }
        }
    }

    #[test]
    fn mirror_snapshot_satisfies_gradient_identity() {
        let p = EquilibriumSelection::new(2).unwrap();
        for geom in [GeometryKind::Euclidean, GeometryKind::EntropicBlockSimplex] {
            let mut solver = BregmanVrSolver::new(
                &p,
                geom,
                params_k(4),
                OracleMode::Sampled(SamplingScheme::AdaptiveL2),
                LipschitzRule::BlockL2EqSelection { m_frob_sq: p.game().frobenius_sq() },
                TauRule::Experiment,
                interior_start(4, 4),
                13,
            )
            .unwrap();
            for _ in 0..10 {
                solver.run_epoch().unwrap();
                let k = solver.previous_epoch_iterates().len() as f64;
                let mut mean_grad = BlockVector::zeros(4, 4);
                for xj in solver.previous_epoch_iterates() {
                    mean_grad.add_scaled(1.0 / k, &grad_d(geom, xj).unwrap());
                }
                let diff = grad_d(geom, solver.mirror_snapshot()).unwrap().sub(&mean_grad);
                let spread = |s: &[f64]| {
                    s.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                        - s.iter().cloned().fold(f64::INFINITY, f64::min)
                };
                match geom {
                    // Exact up to a per-block additive constant.
                    GeometryKind::EntropicBlockSimplex => {
                        assert!(spread(diff.x()) < 1e-10 && spread(diff.y()) < 1e-10)
                    }
                    GeometryKind::Euclidean => {
                        assert!(diff.norm() < 1e-10)
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_point_at_equilibrium_with_zero_beta() {
        // With β = 0 the combined operator is F2 alone, which vanishes on
        // the whole Nash set, so any interior equilibrium is a fixed point.
        let p = EquilibriumSelection::new(2).unwrap();
        let eq = equilibrium_from_weights(&[0.3, 0.7], &[0.55, 0.45]);
        for geom in [GeometryKind::Euclidean, GeometryKind::EntropicBlockSimplex] {
            let mut solver = BregmanVrSolver::new(
                &p,
                geom,
                params_k(3),
                OracleMode::Sampled(SamplingScheme::AdaptiveL1),
                LipschitzRule::BlockL1EqSelection { m_max_sq: 1.0 },
                TauRule::Experiment,
                eq.clone(),
                17,
            )
            .unwrap();
            solver.override_beta(Some(0.0));
            for _ in 0..20 {
                solver.run_epoch().unwrap();
                assert!(solver.snapshot().max_abs_diff(&eq) < 1e-12);
                assert!(solver.inner_head().max_abs_diff(&eq) < 1e-12);
            }
        }
    }

    /// K = 1, Euclidean geometry, full-batch oracle: one epoch must equal a
    /// hand-rolled mirror-prox step computed with the same τ and β.
    #[test]
    fn single_inner_epoch_matches_reference_step() {
        let p = EquilibriumSelection::new(1).unwrap();
        let start = BlockVector::from_parts(&[0.8, 0.2], &[0.3, 0.7]);
        let params = ScheduleParams { alpha: 0.6, k_inner: 1, delta: 0.1, ..Default::default() };
        let tau = 0.05;
        let mut solver = BregmanVrSolver::new(
            &p,
            GeometryKind::Euclidean,
            params.clone(),
            OracleMode::FullBatch,
            LipschitzRule::Constant { value: 1.0 },
            TauRule::Fixed(tau),
            start.clone(),
            23,
        )
        .unwrap();
        solver.run_epoch().unwrap();

        // Reference: x0 = w = w̄ = start; β = (K·1)^{-δ} = 1.
        let beta = params.beta_bregman(0);
        let v_w = combined_full(&p, beta, &start).unwrap();
        let alpha = params.alpha;
        let combine = |u: &BlockVector| {
            let mut pt = BlockVector::lin_comb(alpha, &start, 1.0 - alpha, &start);
            pt.add_scaled(-1.0, u);
            prox_simplex_pair(&pt)
        };
        let y = combine(&v_w.scale(tau));
        let vy = combined_full(&p, beta, &y).unwrap();
        let mut a = v_w.clone();
        a.add_scaled(1.0, &vy);
        a.add_scaled(-1.0, &combined_full(&p, beta, &start).unwrap());
        let x1 = combine(&a.scale(tau));

        assert!(solver.snapshot().max_abs_diff(&x1) < 1e-14);
        assert!(solver.inner_head().max_abs_diff(&x1) < 1e-14);
        assert!(solver.ergodic_point().unwrap().max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn seeded_epochs_are_bit_identical() {
        let p = EquilibriumSelection::new(2).unwrap();
        let mk = || {
            BregmanVrSolver::new(
                &p,
                GeometryKind::EntropicBlockSimplex,
                params_k(10),
                OracleMode::Sampled(SamplingScheme::AdaptiveL1),
                LipschitzRule::BlockL1EqSelection { m_max_sq: 1.0 },
                TauRule::Experiment,
                interior_start(4, 4),
                29,
            )
            .unwrap()
        };
        let mut a = mk();
        let mut b = mk();
        for _ in 0..20 {
            a.run_epoch().unwrap();
            b.run_epoch().unwrap();
        }
        for (u, v) in a.snapshot().as_slice().iter().zip(b.snapshot().as_slice()) {
            assert_eq!(u.to_bits(), v.to_bits());
        }
    }

    #[test]
    fn divergence_to_snapshot_is_finite() {
        // The stored Bregman snapshots remain valid second arguments.
        let p = EquilibriumSelection::new(2).unwrap();
        let mut solver = BregmanVrSolver::new(
            &p,
            GeometryKind::EntropicBlockSimplex,
            params_k(5),
            OracleMode::Sampled(SamplingScheme::AdaptiveL1),
            LipschitzRule::BlockL1EqSelection { m_max_sq: 1.0 },
            TauRule::Experiment,
            interior_start(4, 4),
            31,
        )
        .unwrap();
        for _ in 0..30 {
            solver.run_epoch().unwrap();
        }
        let probe = BlockVector::uniform_simplex_pair(4, 4);
        let d = bregman_divergence(
            GeometryKind::EntropicBlockSimplex,
            &probe,
            solver.mirror_snapshot(),
        )
        .unwrap();
        assert!(d.is_finite() && d >= 0.0);
    }
}
