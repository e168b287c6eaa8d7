//! Regularization and step-size sequences, their validity conditions, and
//! the closed-form summability diagnostic.
//!
//! The regularization weight decays polynomially, `β_k = a (k + b)^{-δ}`
//! (per-iteration form) or `β_s = (K (s+1))^{-δ}` (per-epoch form). Under a
//! `(κ, ρ)`-weak-sharpness assumption on the lower-level solution set, the
//! summability condition behind almost-sure boundedness of the iterates
//! holds exactly when `δ > 1 - 1/ρ`; [`ScheduleParams::validate`] reports
//! violations of that and of the basic parameter ranges, and
//! [`h_bar_bound`] evaluates the closed-form bound on the summed
//! regularization error. Both are diagnostics: they never gate a run.

use crate::error::{Error, Result};

/// Parameters shared by the solvers and the schedule diagnostics.
///
/// `theta` is the snapshot-refresh probability, `alpha` the interpolation
/// weight, `gamma` the step-size safety factor, `delta` the regularization
/// decay exponent, `a`/`b` the Tikhonov scale and shift, `k_inner` the
/// epoch length of the mirror-prox solver. `rho`, `kappa` and `p_norm` are
/// user-asserted weak-sharpness data consumed only by the diagnostics.
#[derive(Debug, Clone)]
pub struct ScheduleParams {
    pub theta: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub delta: f64,
    pub a: f64,
    pub b: f64,
    pub k_inner: usize,
    pub rho: f64,
    pub kappa: f64,
    pub p_norm: f64,
}

impl Default for ScheduleParams {
    /// The benchmark defaults: θ = 0.1, α = 1 - θ, γ = 1/2, δ = 0.1,
    /// β_k = 1/(k+1)^δ, K = 1/θ.
    fn default() -> Self {
        ScheduleParams {
            theta: 0.1,
            alpha: 0.9,
            gamma: 0.5,
            delta: 0.1,
            a: 1.0,
            b: 1.0,
            k_inner: 10,
            rho: 1.5,
            kappa: 1.0,
            p_norm: 1.0,
        }
    }
}

/// A single failed validity condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl ScheduleParams {
    /// `β_k = a (k + b)^{-δ}`.
    pub fn beta_euclid(&self, k: u64) -> f64 {
        self.a * (k as f64 + self.b).powf(-self.delta)
    }

    /// `β_s = (K (s + 1))^{-δ}`.
    pub fn beta_bregman(&self, s: u64) -> f64 {
        (self.k_inner as f64 * (s as f64 + 1.0)).powf(-self.delta)
    }

    /// Step size for the Euclidean solver: `τ_k = √θ γ / L_k`. The
    /// benchmark default γ = 1/2 gives the rule `√θ / (2 L_k)`.
    pub fn tau_euclid(&self, lipschitz: f64) -> f64 {
        self.theta.sqrt() * self.gamma / lipschitz
    }

    /// Step size for the mirror-prox solver: `τ_s = √(1-α) / (2 L_s)`.
    pub fn tau_bregman(&self, lipschitz: f64) -> Result<f64> {
        if self.alpha >= 1.0 {
            return Err(Error::config("alpha = 1 collapses the mirror-prox step size to zero"));
        }
        Ok((1.0 - self.alpha).sqrt() / (2.0 * lipschitz))
    }

    /// Checks the parameter ranges and the summability condition
    /// `δ > 1 - 1/ρ` (which, for constant steps and the polynomial
    /// regularization sequence, is exactly `Σ τ_k β_k^{ρ/(ρ-1)} < ∞`).
    /// Returns the violations; an empty list means the schedule is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let mut check = |ok: bool, field: &'static str, message: String| {
            if !ok {
                v.push(Violation { field, message });
            }
        };
        check(
            self.theta > 0.0 && self.theta <= 1.0,
            "theta",
            format!("θ ∉ (0, 1]: {}", self.theta),
        );
        check(
            self.alpha > 0.0 && self.alpha <= 1.0,
            "alpha",
            format!("α ∉ (0, 1]: {}", self.alpha),
        );
        check(
            self.gamma > 0.0 && self.gamma < 1.0,
            "gamma",
            format!("γ ∉ (0, 1): {}", self.gamma),
        );
        check(
            self.delta > 0.0 && self.delta < 0.5,
            "delta",
            format!("δ ∉ (0, ½): {}", self.delta),
        );
        check(self.a > 0.0, "a", format!("a ≤ 0: {}", self.a));
        check(self.b > 0.0, "b", format!("b ≤ 0: {}", self.b));
        check(self.k_inner >= 1, "k_inner", format!("K < 1: {}", self.k_inner));
        let sharp = 1.0 - 1.0 / self.rho;
        check(
            self.delta > sharp,
            "delta",
            format!("δ ≤ 1 - 1/ρ = {sharp}: Attouch-Czarnecki summability fails"),
        );
        v
    }

    /// Closed-form bound on `Σ_k h_k` under `(κ, ρ)`-weak sharpness with
    /// the polynomial regularization sequence. Requires `δ ρ* > 1` with
    /// `ρ* = ρ/(ρ-1)`.
    pub fn h_bar_bound(&self) -> Result<f64> {
        h_bar_bound(self.a, self.b, self.delta, self.rho, self.kappa, self.p_norm)
    }
}

/// `h̄_ρ = C_ρ [a^{ρ*} b^{-ρ*δ} + a^{ρ*} b^{1-ρ*δ} / (δρ* - 1)]` with
/// `C_ρ = ||p*||^{ρ*} κ^{-1/(ρ-1)} / ρ*`: the closed-form diagnostic bound
/// on the summed regularization error of the Tikhonov schedule.
pub fn h_bar_bound(a: f64, b: f64, delta: f64, rho: f64, kappa: f64, p_norm: f64) -> Result<f64> {
    if !(rho > 1.0) {
        return Err(Error::precondition(format!("weak-sharpness exponent must exceed 1, got {rho}")));
    }
    if kappa <= 0.0 {
        return Err(Error::precondition(format!("sharpness modulus must be positive, got {kappa}")));
    }
    let rho_star = rho / (rho - 1.0);
    if delta * rho_star <= 1.0 {
        return Err(Error::precondition(format!(
            "need δρ* > 1 for a finite tail, got δρ* = {}",
            delta * rho_star
        )));
    }
    let c_rho = p_norm.powf(rho_star) * kappa.powf(-1.0 / (rho - 1.0)) / rho_star;
    let head = a.powf(rho_star) * b.powf(-rho_star * delta);
    let tail = a.powf(rho_star) * b.powf(1.0 - rho_star * delta) / (delta * rho_star - 1.0);
    Ok(c_rho * (head + tail))
}
