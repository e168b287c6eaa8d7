//! Deterministic extragradient baseline on the combined operator.
//!
//! Two full operator evaluations and two proxes per iteration:
//! `y_k = prox(x_k - τ_k V_k(x_k))`, `x_{k+1} = prox(x_k - τ_k V_k(y_k))`.
//! Two step rules are supported: `τ_k = γ / (β_k L_F1 + L_F2)` from the
//! sharp full-operator constants, and `τ_k = γ / L(β_k)` from an
//! instance-specific Lipschitz formula — the same constant family the
//! stochastic methods are tuned with, matching the benchmark comparisons
//! ([`LipschitzRule::value`] upper-bounds the full operator's modulus).

use crate::block::BlockVector;
use crate::error::{Error, Result};
use crate::oracle::LipschitzRule;
use crate::problem::{check_prox_feasible, combined_full, HierarchicalProblem};
use crate::schedule::ScheduleParams;

use super::{ErgodicAccumulator, TauRule};

pub struct DetEgSolver<'a> {
    problem: &'a dyn HierarchicalProblem,
    params: ScheduleParams,
    tau_rule: TauRule,
    lip: Option<LipschitzRule>,
    x: BlockVector,
    k: u64,
    erg: ErgodicAccumulator,
    beta_override: Option<f64>,
}

impl<'a> DetEgSolver<'a> {
    pub fn new(
        problem: &'a dyn HierarchicalProblem,
        params: ScheduleParams,
        tau_rule: TauRule,
        start: BlockVector,
    ) -> Result<Self> {
        if start.dims() != problem.dims() {
            return Err(Error::config("start point has wrong dimensions"));
        }
        let (n, m) = problem.dims();
        Ok(DetEgSolver {
            problem,
            params,
            tau_rule,
            lip: None,
            x: start,
            k: 0,
            erg: ErgodicAccumulator::new(n, m),
            beta_override: None,
        })
    }

    /// Uses `τ_k = γ / L(β_k)` with the given formula under
    /// [`TauRule::Experiment`].
    pub fn with_lipschitz_rule(mut self, rule: LipschitzRule) -> Self {
        self.lip = Some(rule);
        self
    }

    pub fn override_beta(&mut self, beta: Option<f64>) {
        self.beta_override = beta;
    }

    pub fn iterate(&self) -> &BlockVector {
        &self.x
    }

    pub fn iteration(&self) -> u64 {
        self.k
    }

    pub fn ergodic(&self) -> &ErgodicAccumulator {
        &self.erg
    }

    pub fn ergodic_point(&self) -> Result<BlockVector> {
        self.erg.point()
    }

    pub fn step(&mut self) -> Result<(f64, f64)> {
        let beta = self.beta_override.unwrap_or_else(|| self.params.beta_euclid(self.k));
        let sharp = || self.params.gamma / (beta * self.problem.lip_f1() + self.problem.lip_f2());
        let tau = match self.tau_rule {
            TauRule::Experiment => match &self.lip {
                Some(rule) => self.params.gamma / rule.value(beta),
                None => sharp(),
            },
            TauRule::DeterministicRatio => sharp(),
            TauRule::Fixed(t) => t,
        };

        let v_x = combined_full(self.problem, beta, &self.x)?;
        let mut point = self.x.clone();
        point.add_scaled(-tau, &v_x);
        let y = self.problem.combined_prox_euclid(beta, tau, &point);
        check_prox_feasible(self.problem, &y)?;

        let v_y = combined_full(self.problem, beta, &y)?;
        let mut point = self.x.clone();
        point.add_scaled(-tau, &v_y);
        let x_next = self.problem.combined_prox_euclid(beta, tau, &point);
        check_prox_feasible(self.problem, &x_next)?;

        self.erg.add(tau, &y);
        self.x = x_next;
        self.k += 1;
        Ok((tau, beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{feas_gap_game, EquilibriumSelection};

    #[test]
    fn zero_operator_means_projection_fixed_point() {
        let p = EquilibriumSelection::new(1).unwrap();
        // β = 0 and the game operator vanishes at the uniform equilibrium.
        let eq = BlockVector::uniform_simplex_pair(2, 2);
        let params = ScheduleParams { a: 0.0, ..Default::default() };
        let mut s = DetEgSolver::new(&p, params, TauRule::DeterministicRatio, eq.clone()).unwrap();
        for _ in 0..50 {
            s.step().unwrap();
            assert!(s.iterate().max_abs_diff(&eq) < 1e-15);
        }
    }

    #[test]
    fn hand_computed_first_step() {
        // ν = 1, β = 0, τ = 0.25, start ((1,0),(1,0)):
        // V(x) = ((1,-1),(-1,1)); y = (Π(0.75,0.25), Π(1.25,-0.25))
        //      = ((0.75,0.25),(1,0));
        // V(y) = (My_y, -Mᵀx_y) = ((1,-1),(-0.5,0.5));
        // x⁺ = (Π(0.75,0.25), Π(1.125,-0.125)) = ((0.75,0.25),(1,0)).
        let p = EquilibriumSelection::new(1).unwrap();
        let start = BlockVector::from_parts(&[1.0, 0.0], &[1.0, 0.0]);
        let params = ScheduleParams { a: 0.0, ..Default::default() };
        let mut s = DetEgSolver::new(&p, params, TauRule::Fixed(0.25), start).unwrap();
        s.step().unwrap();
        let x = s.iterate();
        assert!((x.x()[0] - 0.75).abs() < 1e-15);
        assert!((x.x()[1] - 0.25).abs() < 1e-15);
        assert!((x.y()[0] - 1.0).abs() < 1e-15);
        assert!(x.y()[1].abs() < 1e-15);
    }

    #[test]
    fn ergodic_gap_improves_with_iterations() {
        let p = EquilibriumSelection::new(10).unwrap();
        let ramp = |d: usize| -> Vec<f64> {
            let s: f64 = (1..=d).map(|t| t as f64).sum();
            (1..=d).map(|t| t as f64 / s).collect()
        };
        let start = BlockVector::from_parts(&ramp(20), &ramp(20));
        let mut s =
            DetEgSolver::new(&p, ScheduleParams::default(), TauRule::DeterministicRatio, start)
                .unwrap();
        let mut gap_at_10 = f64::NAN;
        for k in 0..1000 {
            s.step().unwrap();
            if k + 1 == 10 {
                gap_at_10 = feas_gap_game(p.game(), &s.ergodic_point().unwrap()).value;
            }
        }
        let gap_at_1000 = feas_gap_game(p.game(), &s.ergodic_point().unwrap()).value;
        assert!(
            gap_at_1000 < gap_at_10,
            "ergodic gap should improve: {gap_at_1000} vs {gap_at_10}"
        );
    }
}
