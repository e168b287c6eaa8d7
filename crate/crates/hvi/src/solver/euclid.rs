//! Loopless variance-reduced extragradient in Euclidean geometry.
//!
//! Each iteration interpolates `z_k = α x_k + (1-α) w_k`, takes an
//! extrapolation step with the cached full operator at the snapshot `w_k`,
//! corrects it with the variance-reduced estimate
//! `A_{k+1} = V_k(w_k) + V^ξ_k(y_{k+1}) - V^ξ_k(w_k)`, and refreshes the
//! snapshot with probability `θ`. `F1(w)` and `F2(w)` are cached
//! separately so `β_k` can move between iterations without re-evaluating
//! the full operator; a non-refresh iteration therefore costs only two
//! stochastic component evaluations.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::block::BlockVector;
use crate::error::{Error, Result};
use crate::oracle::{sample_index, LipschitzRule};
use crate::problem::{check_prox_feasible, combined_full, sampled_combined, HierarchicalProblem};
use crate::schedule::ScheduleParams;

use super::{ErgodicAccumulator, OracleMode, TauRule};

/// Everything one step leaves behind, enough to re-evaluate the pathwise
/// energy inequality at arbitrary probes.
#[derive(Debug, Clone)]
pub struct EuclidTrace {
    pub k: u64,
    pub x_k: BlockVector,
    pub w_k: BlockVector,
    pub z_k: BlockVector,
    pub y_next: BlockVector,
    pub x_next: BlockVector,
    /// Cached full operator `V_k(w_k)`.
    pub v_w: BlockVector,
    /// Sampled `V^ξ_k(y_{k+1})`.
    pub v_xi_y: BlockVector,
    /// Sampled `V^ξ_k(w_k)`.
    pub v_xi_w: BlockVector,
    pub tau: f64,
    pub beta: f64,
    pub alpha: f64,
}

/// What a step reports back to the driver.
#[derive(Debug, Clone, Copy)]
pub struct EuclidStepInfo {
    pub refreshed: bool,
    pub tau: f64,
    pub beta: f64,
}

pub struct EuclidVrSolver<'a> {
    problem: &'a dyn HierarchicalProblem,
    params: ScheduleParams,
    oracle: OracleMode,
    lip: LipschitzRule,
    tau_rule: TauRule,
    rng: ChaCha8Rng,
    x: BlockVector,
    w: BlockVector,
    cache_f1: BlockVector,
    cache_f2: BlockVector,
    k: u64,
    erg: ErgodicAccumulator,
    record_trace: bool,
    last_trace: Option<EuclidTrace>,
    beta_override: Option<f64>,
}

impl<'a> EuclidVrSolver<'a> {
    /// Adaptive sampling schemes are rejected: this method requires an
    /// iteration-independent distribution.
    pub fn new(
        problem: &'a dyn HierarchicalProblem,
        params: ScheduleParams,
        oracle: OracleMode,
        lip: LipschitzRule,
        tau_rule: TauRule,
        start: BlockVector,
        seed: u64,
    ) -> Result<Self> {
        if let OracleMode::Sampled(scheme) = &oracle {
            if scheme.is_adaptive() {
                return Err(Error::config(
                    "the extragradient solver needs iteration-independent importance sampling",
                ));
            }
        }
        if start.dims() != problem.dims() {
            return Err(Error::config("start point has wrong dimensions"));
        }
        let (n, m) = problem.dims();
        let cache_f1 = problem.f1().full(&start);
        let cache_f2 = problem.f2().full(&start);
        Ok(EuclidVrSolver {
            problem,
            params,
            oracle,
            lip,
            tau_rule,
            rng: ChaCha8Rng::seed_from_u64(seed),
            w: start.clone(),
            x: start,
            cache_f1,
            cache_f2,
            k: 0,
            erg: ErgodicAccumulator::new(n, m),
            record_trace: false,
            last_trace: None,
            beta_override: None,
        })
    }

    /// Enables per-step traces for the energy instrumentation. Off by
    /// default: each trace clones the full iterate bundle.
    pub fn record_traces(&mut self, on: bool) {
        self.record_trace = on;
    }

    /// Pins the regularization weight instead of following the schedule.
    /// `Some(0.0)` runs the pure lower-level problem.
    pub fn override_beta(&mut self, beta: Option<f64>) {
        self.beta_override = beta;
    }

    pub fn iterate(&self) -> &BlockVector {
        &self.x
    }

    pub fn snapshot(&self) -> &BlockVector {
        &self.w
    }

    pub fn iteration(&self) -> u64 {
        self.k
    }

    pub fn last_trace(&self) -> Option<&EuclidTrace> {
        self.last_trace.as_ref()
    }

    pub fn ergodic(&self) -> &ErgodicAccumulator {
        &self.erg
    }

    pub fn ergodic_point(&self) -> Result<BlockVector> {
        self.erg.point()
    }

    /// `β_k F1(w) + F2(w)` from the separately cached sums.
    pub fn cached_combined(&self, beta: f64) -> BlockVector {
        BlockVector::lin_comb(beta, &self.cache_f1, 1.0, &self.cache_f2)
    }

    pub fn step(&mut self) -> Result<EuclidStepInfo> {
        let beta = self.beta_override.unwrap_or_else(|| self.params.beta_euclid(self.k));
        let tau = self
            .tau_rule
            .euclid_tau(&self.params, self.lip.value(beta), beta, self.problem);
        let alpha = self.params.alpha;

        let sample = match &self.oracle {
            OracleMode::Sampled(scheme) => {
                Some(sample_index(scheme, self.problem, &mut self.rng, None)?)
            }
            OracleMode::FullBatch => None,
        };

        let z = BlockVector::lin_comb(alpha, &self.x, 1.0 - alpha, &self.w);
        let v_w = self.cached_combined(beta);

        let mut point = z.clone();
        point.add_scaled(-tau, &v_w);
        let y = self.problem.combined_prox_euclid(beta, tau, &point);
        check_prox_feasible(self.problem, &y)?;

        let (v_xi_y, v_xi_w) = match sample {
            Some(s) => (
                sampled_combined(self.problem, beta, s.index, s.inv_ci, s.inv_rj, &y),
                sampled_combined(self.problem, beta, s.index, s.inv_ci, s.inv_rj, &self.w),
            ),
            None => (
                combined_full(self.problem, beta, &y)?,
                combined_full(self.problem, beta, &self.w)?,
            ),
        };

        // A_{k+1} = V_k(w_k) + V^ξ(y_{k+1}) - V^ξ(w_k), in this order.
        let mut a = v_w.clone();
        a.add_scaled(1.0, &v_xi_y);
        a.add_scaled(-1.0, &v_xi_w);

        let mut point = z.clone();
        point.add_scaled(-tau, &a);
        let x_next = self.problem.combined_prox_euclid(beta, tau, &point);
        check_prox_feasible(self.problem, &x_next)?;

        let refreshed = self.rng.gen::<f64>() < self.params.theta;

        self.erg.add(tau, &y);
        if self.record_trace {
            self.last_trace = Some(EuclidTrace {
                k: self.k,
                x_k: self.x.clone(),
                w_k: self.w.clone(),
                z_k: z,
                y_next: y,
                x_next: x_next.clone(),
                v_w,
                v_xi_y,
                v_xi_w,
                tau,
                beta,
                alpha,
            });
        }

        self.x = x_next;
        if refreshed {
            self.w = self.x.clone();
            self.cache_f1 = self.problem.f1().full(&self.w);
            self.cache_f2 = self.problem.f2().full(&self.w);
        }
        self.k += 1;
        Ok(EuclidStepInfo { refreshed, tau, beta })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::SamplingScheme;
    use crate::problems::{equilibrium_from_weights, EquilibriumSelection};

    fn base_params() -> ScheduleParams {
        ScheduleParams { theta: 0.1, alpha: 0.9, ..Default::default() }
    }

    fn solver_for<'a>(
        p: &'a EquilibriumSelection,
        params: ScheduleParams,
        seed: u64,
        start: BlockVector,
    ) -> EuclidVrSolver<'a> {
        let (c, r) = p.static_importance();
        let lip = LipschitzRule::EuclidEqSelection {
            max_inv_prob: c.iter().chain(r.iter()).map(|&q| 1.0 / q).fold(0.0, f64::max),
            m_frob_sq: p.game().frobenius_sq(),
        };
        EuclidVrSolver::new(
            p,
            params,
            OracleMode::Sampled(SamplingScheme::StaticImportance { c, r }),
            lip,
            TauRule::Experiment,
            start,
            seed,
        )
        .unwrap()
    }


    #[test]
    fn rejects_adaptive_sampling() {
        let p = EquilibriumSelection::new(1).unwrap();
        let start = BlockVector::uniform_simplex_pair(2, 2);
        let err = EuclidVrSolver::new(
            &p,
            base_params(),
            OracleMode::Sampled(SamplingScheme::AdaptiveL1),
            LipschitzRule::Constant { value: 1.0 },
            TauRule::Experiment,
            start,
            1,
        );
        assert!(err.is_err());
    }

    #[test]
    fn seeded_runs_are_bit_identical() {
        let p = EquilibriumSelection::new(2).unwrap();
        let start = BlockVector::from_parts(&[0.7, 0.1, 0.1, 0.1], &[0.4, 0.3, 0.2, 0.1]);
        let mut a = solver_for(&p, base_params(), 42, start.clone());
        let mut b = solver_for(&p, base_params(), 42, start);
        for _ in 0..200 {
            a.step().unwrap();
            b.step().unwrap();
        }
        for (u, v) in a.iterate().as_slice().iter().zip(b.iterate().as_slice()) {
            assert_eq!(u.to_bits(), v.to_bits());
        }
        assert_eq!(
            a.ergodic_point().unwrap().as_slice(),
            b.ergodic_point().unwrap().as_slice()
        );
    }

    #[test]
    fn iterates_stay_feasible() {
        let p = EquilibriumSelection::new(3).unwrap();
        let start = BlockVector::from_parts(
            &[0.5, 0.3, 0.1, 0.05, 0.03, 0.02],
            &[0.02, 0.03, 0.05, 0.1, 0.3, 0.5],
        );
        let mut s = solver_for(&p, base_params(), 7, start);
        for _ in 0..500 {
            s.step().unwrap();
            assert!(s.iterate().simplex_pair_violation() < 1e-10);
            assert!(s.snapshot().simplex_pair_violation() < 1e-10);
        }
    }

    #[test]
    fn cache_recombination_matches_full_operator() {
        let p = EquilibriumSelection::new(2).unwrap();
        let start = BlockVector::from_parts(&[0.7, 0.1, 0.1, 0.1], &[0.4, 0.3, 0.2, 0.1]);
        let mut s = solver_for(&p, base_params(), 9, start);
        for _ in 0..100 {
            s.step().unwrap();
            let beta = s.params.beta_euclid(s.k);
            let direct = combined_full(&p, beta, s.snapshot()).unwrap();
            let cached = s.cached_combined(beta);
            assert!(cached.max_abs_diff(&direct) < 1e-12);
        }
    }

    #[test]
    fn fixed_point_at_equilibrium_with_zero_beta() {
        let p = EquilibriumSelection::new(2).unwrap();
        let eq = equilibrium_from_weights(&[0.3, 0.7], &[0.55, 0.45]);
        let params = ScheduleParams { a: 0.0, ..base_params() };
        let mut s = solver_for(&p, params, 5, eq.clone());
        for _ in 0..50 {
            s.step().unwrap();
            assert!(s.iterate().max_abs_diff(&eq) < 1e-12);
        }
    }

    #[test]
    fn ergodic_recomputation_matches_running_accumulator() {
        let p = EquilibriumSelection::new(2).unwrap();
        let start = BlockVector::from_parts(&[0.7, 0.1, 0.1, 0.1], &[0.4, 0.3, 0.2, 0.1]);
        let mut s = solver_for(&p, base_params(), 3, start);
        s.record_traces(true);
        let mut ys: Vec<(f64, BlockVector)> = Vec::new();
        for _ in 0..100 {
            s.step().unwrap();
            let t = s.last_trace().unwrap();
            ys.push((t.tau, t.y_next.clone()));
        }
        let mut sum = BlockVector::zeros(4, 4);
        let mut weight = 0.0;
        for (tau, y) in &ys {
            sum.add_scaled(*tau, y);
            weight += tau;
        }
        let brute = sum.scale(1.0 / weight);
        assert!(brute.max_abs_diff(&s.ergodic_point().unwrap()) < 1e-12);
    }
}
