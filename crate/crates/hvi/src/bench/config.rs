//! Benchmark run configuration: strict JSON schema with field-path errors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::InstanceKind;
use crate::schedule::ScheduleParams;

use super::cost::EpochCostModel;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    pub algorithm: AlgorithmConfig,
    pub seed: u64,
    pub epoch_budget: f64,
    /// Metric rows are emitted each time this many epochs elapse. Defaults
    /// to `epoch_budget / 50`, floored at one epoch.
    #[serde(default)]
    pub eval_every_epochs: Option<f64>,
    #[serde(default)]
    pub checks: ChecksConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub epoch_cost_model: EpochCostModel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub kind: ProblemKind,
    pub nu: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    EqSelection,
    LinConstrained,
}

impl From<ProblemKind> for InstanceKind {
    fn from(k: ProblemKind) -> InstanceKind {
        match k {
            ProblemKind::EqSelection => InstanceKind::EqSelection,
            ProblemKind::LinConstrained => InstanceKind::LinConstrained,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    #[serde(default)]
    pub theta: Option<f64>,
    pub delta: f64,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub b: Option<f64>,
    #[serde(rename = "K", default)]
    pub k_inner: Option<usize>,
    #[serde(default)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    /// Variance-reduced extragradient (Euclidean, static importance).
    Alg1,
    /// Variance-reduced mirror prox, entropic block-simplex geometry.
    Alg2L1,
    /// Variance-reduced mirror prox, Euclidean geometry.
    Alg2L2,
    /// Deterministic extragradient baseline.
    DetEg,
}

impl AlgorithmKind {
    pub fn is_mirror_prox(&self) -> bool {
        matches!(self, AlgorithmKind::Alg2L1 | AlgorithmKind::Alg2L2)
    }

    pub fn label(&self) -> &'static str {
        match self {
            AlgorithmKind::Alg1 => "alg1",
            AlgorithmKind::Alg2L1 => "alg2_l1",
            AlgorithmKind::Alg2L2 => "alg2_l2",
            AlgorithmKind::DetEg => "det_eg",
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksConfig {
    #[serde(default)]
    pub energy: bool,
    #[serde(default)]
    pub probes: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub csv_path: Option<String>,
    #[serde(default)]
    pub svg_path: Option<String>,
}

/// Parses and validates a config document. Unknown keys, malformed JSON
/// and range violations are configuration errors carrying the offending
/// field path.
pub fn parse_config(bytes: &[u8]) -> Result<RunConfig> {
    let config: RunConfig = serde_json::from_slice(bytes)
        .map_err(|e| Error::config(format!("config schema: {e}")))?;
    validate_config(&config)?;
    Ok(config)
}

fn validate_config(c: &RunConfig) -> Result<()> {
    let fail = |path: &str, msg: String| Err(Error::config(format!("{path}: {msg}")));
    if c.problem.nu == 0 {
        return fail("problem.nu", "must be at least 1".into());
    }
    if !(c.epoch_budget >= 0.0) {
        return fail("epoch_budget", format!("must be nonnegative, got {}", c.epoch_budget));
    }
    if let Some(e) = c.eval_every_epochs {
        if !(e > 0.0) {
            return fail("eval_every_epochs", format!("must be positive, got {e}"));
        }
    }
    let alg = &c.algorithm;
    if !(alg.delta > 0.0 && alg.delta < 0.5) {
        return fail("algorithm.delta", format!("δ must lie in (0, ½), got {}", alg.delta));
    }
    if let Some(g) = alg.gamma {
        if !(g > 0.0 && g < 1.0) {
            return fail("algorithm.gamma", format!("γ must lie in (0, 1), got {g}"));
        }
    }
    match alg.kind {
        AlgorithmKind::Alg1 | AlgorithmKind::Alg2L1 | AlgorithmKind::Alg2L2 => {
            let theta = match alg.theta {
                Some(t) => t,
                None => return fail("algorithm.theta", "required for the stochastic solvers".into()),
            };
            if !(theta > 0.0 && theta <= 1.0) {
                return fail("algorithm.theta", format!("θ must lie in (0, 1], got {theta}"));
            }
        }
        AlgorithmKind::DetEg => {}
    }
    if alg.kind.is_mirror_prox() {
        let alpha = alg.alpha.unwrap_or_else(|| 1.0 - alg.theta.unwrap_or(0.0));
        if !(0.0..1.0).contains(&alpha) {
            return fail("algorithm.alpha", format!("α must lie in [0, 1) for mirror prox, got {alpha}"));
        }
        if let Some(k) = alg.k_inner {
            if k == 0 {
                return fail("algorithm.K", "must be at least 1".into());
            }
        }
    }
    if alg.kind == AlgorithmKind::Alg1 && c.problem.kind == ProblemKind::LinConstrained {
        return fail(
            "algorithm.kind",
            "alg1 on lin_constrained: iteration-dependent sampling required".into(),
        );
    }
    if c.checks.energy && c.checks.probes == 0 {
        return fail("checks.probes", "energy checks need at least one probe".into());
    }
    Ok(())
}

impl RunConfig {
    /// Evaluation spacing after applying the default.
    pub fn eval_spacing(&self) -> f64 {
        self.eval_every_epochs.unwrap_or((self.epoch_budget / 50.0).max(1.0))
    }

    /// The resolved schedule: γ = ½, β_k = 1/(k+1)^δ (a = b = 1),
    /// α = 1 - θ and K = round(1/θ) unless overridden.
    pub fn schedule(&self) -> ScheduleParams {
        let alg = &self.algorithm;
        let theta = alg.theta.unwrap_or(1.0);
        ScheduleParams {
            theta,
            alpha: alg.alpha.unwrap_or(1.0 - theta),
            gamma: alg.gamma.unwrap_or(0.5),
            delta: alg.delta,
            a: alg.a.unwrap_or(1.0),
            b: alg.b.unwrap_or(1.0),
            k_inner: alg.k_inner.unwrap_or_else(|| (1.0 / theta).round().max(1.0) as usize),
            ..ScheduleParams::default()
        }
    }
}
