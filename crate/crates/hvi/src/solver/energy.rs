//! Pathwise energy-inequality checks.
//!
//! Both solvers admit a per-step inequality that holds along every sample
//! path (before any conditional expectation), assembled from the two prox
//! inequalities of the step. Evaluating its residual at probe points with
//! the actually sampled quantities is a strong end-to-end certificate: a
//! wrong prox, a wrong interpolation, a misplaced β or τ, or a biased
//! estimator all show up as negative residuals.

use crate::block::BlockVector;
use crate::geometry::{bregman_divergence, GeometryKind};
use crate::problem::{combined_g, HierarchicalProblem};

use super::{BregmanTrace, EuclidTrace};

/// Why a probe produced no residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeStatus {
    Evaluated,
    /// `G_k(probe) = +∞` (or the probe left the geometry's domain).
    RejectedInfeasible,
}

/// Residual of a pathwise inequality at one probe; nonnegative when the
/// inequality is satisfied.
#[derive(Debug, Clone)]
pub struct EnergyReport {
    pub iteration: u64,
    pub residual: f64,
    pub status: ProbeStatus,
    /// The two sides making up the residual, for inspection.
    pub lhs: f64,
    pub rhs: f64,
}

impl EnergyReport {
    fn rejected(iteration: u64) -> Self {
        EnergyReport {
            iteration,
            residual: f64::NAN,
            status: ProbeStatus::RejectedInfeasible,
            lhs: f64::NAN,
            rhs: f64::NAN,
        }
    }
}

/// Per-step inequality of the extragradient solver, with the sampled
/// operator values:
///
/// `||x_{k+1} - x||² <= α||x_k - x||² + (1-α)||w_k - x||²
///   - α||y_{k+1} - x_k||² - (1-α)||y_{k+1} - w_k||²
///   + 2τ <V^ξ(w_k) - V^ξ(y_{k+1}), x_{k+1} - y_{k+1}>
///   + 2τ (G_k(x) - G_k(y_{k+1}))
///   + 2τ <A_{k+1}, x - y_{k+1}> - ||x_{k+1} - y_{k+1}||²`.
///
/// The report's residual is `rhs - lhs`.
pub fn check_energy_euclid(
    trace: &EuclidTrace,
    probe: &BlockVector,
    problem: &dyn HierarchicalProblem,
) -> EnergyReport {
    let g_probe = match combined_g(problem, trace.beta, probe).value() {
        Some(v) => v,
        None => return EnergyReport::rejected(trace.k),
    };
    let g_y = combined_g(problem, trace.beta, &trace.y_next)
        .value()
        .expect("prox outputs stay in the domain");

    let alpha = trace.alpha;
    let tau = trace.tau;
    let y = &trace.y_next;
    let x_next = &trace.x_next;

    let mut a = trace.v_w.clone();
    a.add_scaled(1.0, &trace.v_xi_y);
    a.add_scaled(-1.0, &trace.v_xi_w);

    let rhs = alpha * trace.x_k.sub(probe).norm_sq()
        + (1.0 - alpha) * trace.w_k.sub(probe).norm_sq()
        - alpha * y.sub(&trace.x_k).norm_sq()
        - (1.0 - alpha) * y.sub(&trace.w_k).norm_sq()
        + 2.0 * tau * trace.v_xi_w.sub(&trace.v_xi_y).dot(&x_next.sub(y))
        + 2.0 * tau * (g_probe - g_y)
        + 2.0 * tau * a.dot(&probe.sub(y))
        - x_next.sub(y).norm_sq();
    let lhs = x_next.sub(probe).norm_sq();

    EnergyReport {
        iteration: trace.k,
        residual: rhs - lhs,
        status: ProbeStatus::Evaluated,
        lhs,
        rhs,
    }
}

/// Per-inner-iteration inequality of the mirror-prox solver, the sum of
/// the two three-point prox inequalities:
///
/// `τ(G_s(x) - G_s(y) + <A, x - x⁺> + <V_s(w), x⁺ - y>)
///   >= D(x, x⁺) + D(x⁺, y) + α(D(y, x_k) - D(x, x_k))
///      + (1-α)(D(y, w̄) - D(x, w̄))`.
///
/// The report's residual is `lhs - rhs`.
pub fn check_energy_bregman(
    trace: &BregmanTrace,
    probe: &BlockVector,
    problem: &dyn HierarchicalProblem,
    geom: GeometryKind,
) -> EnergyReport {
    let iteration = trace.s * 1_000_000 + trace.k as u64;
    let g_probe = match combined_g(problem, trace.beta, probe).value() {
        Some(v) => v,
        None => return EnergyReport::rejected(iteration),
    };
    let g_y = combined_g(problem, trace.beta, &trace.y_next)
        .value()
        .expect("prox outputs stay in the domain");

    let d = |x: &BlockVector, z: &BlockVector| bregman_divergence(geom, x, z);
    let (dxp, dpy, dyx, dxx, dyw, dxw) = match (
        d(probe, &trace.x_next),
        d(&trace.x_next, &trace.y_next),
        d(&trace.y_next, &trace.x_k),
        d(probe, &trace.x_k),
        d(&trace.y_next, &trace.wbar),
        d(probe, &trace.wbar),
    ) {
        (Ok(a), Ok(b), Ok(c), Ok(e), Ok(f), Ok(g)) => (a, b, c, e, f, g),
        _ => return EnergyReport::rejected(iteration),
    };

    let tau = trace.tau;
    let alpha = trace.alpha;
    let lhs = tau
        * (g_probe - g_y
            + trace.a.dot(&probe.sub(&trace.x_next))
            + trace.v_w.dot(&trace.x_next.sub(&trace.y_next)));
    let rhs = dxp + dpy + alpha * (dyx - dxx) + (1.0 - alpha) * (dyw - dxw);

    EnergyReport {
        iteration,
        residual: lhs - rhs,
        status: ProbeStatus::Evaluated,
        lhs,
        rhs,
    }
}
