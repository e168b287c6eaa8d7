//! Run orchestration: drives a solver against its epoch budget, emits
//! metric rows, and keeps the per-event cost log.
//!
//! Gap evaluations are not charged to the epoch budget — epochs count
//! operator evaluations only. The CSV trace is deterministic for a fixed
//! `(config, seed)`: floats are written with 17 significant digits (which
//! round-trips `f64` exactly) and the wallclock column is left empty, with
//! timing reported in the run summary instead.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::block::BlockVector;
use crate::error::{Error, Result};
use crate::geometry::GeometryKind;
use crate::oracle::{lipschitz_rule, random_feasible, LipFormulaKind, SamplingScheme};
use crate::problems::Instance;
use crate::solver::{
    check_energy_bregman, check_energy_euclid, BregmanVrSolver, DetEgSolver, EuclidVrSolver,
    OracleMode, TauRule,
};

use super::config::{AlgorithmKind, RunConfig};
use super::cost::{epoch_cost, CostEvent};

pub const CSV_HEADER: &str =
    "epochs,iter_s,iter_k,feas_erg,opt_erg,dist_erg,feas_w,opt_w,dist_w,wall_s";

/// One evaluation record. `None` fields are undefined for the instance or
/// the moment (no ergodic point before the first step; wallclock excluded
/// from the deterministic trace).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricsRow {
    pub epochs: f64,
    pub iter_s: Option<u64>,
    pub iter_k: Option<u64>,
    pub feas_erg: Option<f64>,
    pub opt_erg: Option<f64>,
    pub dist_erg: Option<f64>,
    pub feas_w: Option<f64>,
    pub opt_w: Option<f64>,
    pub dist_w: Option<f64>,
    pub wall_s: Option<f64>,
}

fn fmt_float(v: f64) -> String {
    format!("{:.16e}", v)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn fmt_opt_int(v: Option<u64>) -> String {
    v.map(|t| t.to_string()).unwrap_or_default()
}

pub fn rows_to_csv(rows: &[MetricsRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            fmt_float(r.epochs),
            fmt_opt_int(r.iter_s),
            fmt_opt_int(r.iter_k),
            fmt_opt(r.feas_erg),
            fmt_opt(r.opt_erg),
            fmt_opt(r.dist_erg),
            fmt_opt(r.feas_w),
            fmt_opt(r.opt_w),
            fmt_opt(r.dist_w),
            fmt_opt(r.wall_s),
        ));
    }
    out
}

/// Parses a CSV produced by [`rows_to_csv`]. The header must match the
/// fixed column set exactly.
pub fn parse_csv(text: &str) -> Result<Vec<MetricsRow>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::config("empty CSV"))?;
    if header != CSV_HEADER {
        return Err(Error::config(format!(
            "CSV header mismatch: expected `{CSV_HEADER}`, got `{header}`"
        )));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(Error::config(format!("CSV line {}: wrong field count", lineno + 2)));
        }
        let f = |s: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<f64>()
                    .map(Some)
                    .map_err(|e| Error::config(format!("CSV line {}: {e}", lineno + 2)))
            }
        };
        let i = |s: &str| -> Result<Option<u64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<u64>()
                    .map(Some)
                    .map_err(|e| Error::config(format!("CSV line {}: {e}", lineno + 2)))
            }
        };
        rows.push(MetricsRow {
            epochs: f(fields[0])?.ok_or_else(|| Error::config("missing epochs"))?,
            iter_s: i(fields[1])?,
            iter_k: i(fields[2])?,
            feas_erg: f(fields[3])?,
            opt_erg: f(fields[4])?,
            dist_erg: f(fields[5])?,
            feas_w: f(fields[6])?,
            opt_w: f(fields[7])?,
            dist_w: f(fields[8])?,
            wall_s: f(fields[9])?,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub algorithm: AlgorithmKind,
    pub total_epochs: f64,
    pub iterations: u64,
    pub final_feas_erg: Option<f64>,
    pub final_opt_erg: Option<f64>,
    pub final_dist_erg: Option<f64>,
    pub wall_seconds: f64,
    /// Smallest pathwise energy residual observed (when checks are on).
    pub min_energy_residual: Option<f64>,
    pub schedule_warnings: Vec<String>,
}

pub struct RunOutput {
    pub rows: Vec<MetricsRow>,
    pub events: Vec<(CostEvent, f64)>,
    pub summary: RunSummary,
    /// A runtime numerical failure, with everything up to the last valid
    /// row retained.
    pub aborted: Option<String>,
}

enum Driver<'a> {
    Alg1(EuclidVrSolver<'a>),
    Alg2(BregmanVrSolver<'a>),
    DetEg(DetEgSolver<'a>),
}

/// Deterministic asymmetric feasible start: per-block normalized ramps
/// `(1, 2, …, d)/Σ`. The uniform point is excluded deliberately — it is
/// the exact solution of both built-in instances.
pub fn default_start(n: usize, m: usize) -> BlockVector {
    let ramp = |d: usize| -> Vec<f64> {
        let s: f64 = (1..=d).map(|t| t as f64).sum();
        (1..=d).map(|t| t as f64 / s).collect()
    };
    BlockVector::from_parts(&ramp(n), &ramp(m))
}

/// Executes one configured run to completion (or numerical abort).
/// Configuration problems surface as `Err`; runtime numerical failures
/// return `Ok` with `aborted` set and the rows flushed so far.
pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    let instance = Instance::build(config.problem.kind.into(), config.problem.nu)?;
    let params = config.schedule();
    let schedule_warnings: Vec<String> =
        params.validate().iter().map(|v| v.to_string()).collect();
    let problem = instance.problem();
    let (n, m) = problem.dims();
    let start = default_start(n, m);
    let c_ratio = instance.stochastic_cost_ratio();
    let k_inner = params.k_inner;

    let mut driver = match config.algorithm.kind {
        AlgorithmKind::Alg1 => {
            let (c, r) = problem.static_importance();
            let lip = lipschitz_rule(LipFormulaKind::EuclidEqSelection, &instance)?;
            let mut s = EuclidVrSolver::new(
                problem,
                params.clone(),
                OracleMode::Sampled(SamplingScheme::StaticImportance { c, r }),
                lip,
                TauRule::Experiment,
                start,
                config.seed,
            )?;
            s.record_traces(config.checks.energy);
            Driver::Alg1(s)
        }
        AlgorithmKind::Alg2L1 | AlgorithmKind::Alg2L2 => {
            let (geom, scheme) = match config.algorithm.kind {
                AlgorithmKind::Alg2L1 => {
                    (GeometryKind::EntropicBlockSimplex, SamplingScheme::AdaptiveL1)
                }
                _ => (GeometryKind::Euclidean, SamplingScheme::AdaptiveL2),
            };
            let formula = match (config.algorithm.kind, &instance) {
                (AlgorithmKind::Alg2L1, Instance::EqSelection(_)) => LipFormulaKind::L1EqSelection,
                (AlgorithmKind::Alg2L1, Instance::LinConstrained(_)) => LipFormulaKind::L1Constrained,
                (_, Instance::EqSelection(_)) => LipFormulaKind::L2EqSelection,
                (_, Instance::LinConstrained(_)) => LipFormulaKind::L2Constrained,
            };
            let lip = lipschitz_rule(formula, &instance)?;
            let mut s = BregmanVrSolver::new(
                problem,
                geom,
                params.clone(),
                OracleMode::Sampled(scheme),
                lip,
                TauRule::Experiment,
                start,
                config.seed,
            )?;
            s.record_traces(config.checks.energy);
            Driver::Alg2(s)
        }
        AlgorithmKind::DetEg => {
            // The baseline runs with the same instance-specific Lipschitz
            // family the stochastic methods are tuned with, keeping the
            // per-epoch comparison on one constant scale.
            let formula = match &instance {
                Instance::EqSelection(_) => LipFormulaKind::EuclidEqSelection,
                Instance::LinConstrained(_) => LipFormulaKind::L2Constrained,
            };
            let lip = lipschitz_rule(formula, &instance)?;
            let solver =
                DetEgSolver::new(problem, params.clone(), TauRule::Experiment, start)?
                    .with_lipschitz_rule(lip);
            Driver::DetEg(solver)
        }
    };

    let mut probe_rng = ChaCha8Rng::seed_from_u64(config.seed);
    probe_rng.set_stream(0xE7E59);

    let clock = Instant::now();
    let spacing = config.eval_spacing();
    let mut epochs = 0.0f64;
    let mut next_eval = spacing;
    let mut events: Vec<(CostEvent, f64)> = Vec::new();
    let mut rows: Vec<MetricsRow> = Vec::new();
    let mut min_residual: Option<f64> = None;
    let mut aborted = None;

    let snapshot_metrics = |d: &Driver| -> (Option<f64>, Option<f64>, Option<f64>) {
        let w = match d {
            Driver::Alg1(s) => s.snapshot().clone(),
            Driver::Alg2(s) => s.snapshot().clone(),
            Driver::DetEg(s) => s.iterate().clone(),
        };
        instance.metrics(&w)
    };
    let ergodic_metrics = |d: &Driver| -> (Option<f64>, Option<f64>, Option<f64>) {
        let pt = match d {
            Driver::Alg1(s) => s.ergodic_point(),
            Driver::Alg2(s) => s.ergodic_point(),
            Driver::DetEg(s) => s.ergodic_point(),
        };
        match pt {
            Ok(p) => instance.metrics(&p),
            Err(_) => (None, None, None),
        }
    };
    let indices = |d: &Driver| -> (Option<u64>, Option<u64>) {
        match d {
            Driver::Alg1(s) => (None, Some(s.iteration())),
            Driver::Alg2(s) => (Some(s.epoch()), Some(s.epoch() * k_inner as u64)),
            Driver::DetEg(s) => (None, Some(s.iteration())),
        }
    };
    let make_row = |d: &Driver, epochs: f64| -> MetricsRow {
        let (iter_s, iter_k) = indices(d);
        let (feas_erg, opt_erg, dist_erg) = ergodic_metrics(d);
        let (feas_w, opt_w, dist_w) = snapshot_metrics(d);
        MetricsRow {
            epochs,
            iter_s,
            iter_k,
            feas_erg,
            opt_erg,
            dist_erg,
            feas_w,
            opt_w,
            dist_w,
            wall_s: None,
        }
    };

    rows.push(make_row(&driver, 0.0));

    while epochs < config.epoch_budget {
        let step = (|| -> Result<CostEvent> {
            match &mut driver {
                Driver::Alg1(s) => {
                    let info = s.step()?;
                    if config.checks.energy {
                        let trace = s.last_trace().expect("traces recorded");
                        for _ in 0..config.checks.probes {
                            let probe = random_feasible(&mut probe_rng, n, m);
                            let rep = check_energy_euclid(trace, &probe, problem);
                            if rep.status == crate::solver::ProbeStatus::Evaluated {
                                min_residual =
                                    Some(min_residual.map_or(rep.residual, |r| r.min(rep.residual)));
                                if rep.residual < -1e-9 {
                                    return Err(Error::numerical(format!(
                                        "pathwise energy inequality violated at iteration {}: residual {}",
                                        rep.iteration, rep.residual
                                    )));
                                }
                            }
                        }
                    }
                    Ok(CostEvent::VrIteration { refreshed: info.refreshed })
                }
                Driver::Alg2(s) => {
                    s.run_epoch()?;
                    if config.checks.energy {
                        let geom = s.geometry();
                        for trace in s.last_epoch_traces() {
                            for _ in 0..config.checks.probes {
                                let probe = random_feasible(&mut probe_rng, n, m);
                                let rep = check_energy_bregman(trace, &probe, problem, geom);
                                if rep.status == crate::solver::ProbeStatus::Evaluated {
                                    min_residual = Some(
                                        min_residual.map_or(rep.residual, |r| r.min(rep.residual)),
                                    );
                                    if rep.residual < -1e-9 {
                                        return Err(Error::numerical(format!(
                                            "pathwise energy inequality violated at epoch {}: residual {}",
                                            trace.s, rep.residual
                                        )));
                                    }
                                }
                            }
                        }
                    }
                    Ok(CostEvent::MirrorProxEpoch { k_inner })
                }
                Driver::DetEg(s) => {
                    s.step()?;
                    Ok(CostEvent::DetEgIteration)
                }
            }
        })();

        let event = match step {
            Ok(ev) => ev,
            Err(Error::Config(msg)) => return Err(Error::Config(msg)),
            Err(e) => {
                aborted = Some(e.to_string());
                break;
            }
        };
        let cost = epoch_cost(event, config.epoch_cost_model, c_ratio);
        epochs += cost;
        events.push((event, cost));

        if epochs >= next_eval - 1e-12 {
            rows.push(make_row(&driver, epochs));
            while next_eval <= epochs + 1e-12 {
                next_eval += spacing;
            }
        }
    }

    if rows.last().map(|r| r.epochs) != Some(epochs) {
        rows.push(make_row(&driver, epochs));
    }

    let iterations = match &driver {
        Driver::Alg1(s) => s.iteration(),
        Driver::Alg2(s) => s.epoch() * k_inner as u64,
        Driver::DetEg(s) => s.iteration(),
    };
    let (final_feas, final_opt, final_dist) = ergodic_metrics(&driver);
    Ok(RunOutput {
        rows,
        events,
        summary: RunSummary {
            algorithm: config.algorithm.kind,
            total_epochs: epochs,
            iterations,
            final_feas_erg: final_feas,
            final_opt_erg: final_opt,
            final_dist_erg: final_dist,
            wall_seconds: clock.elapsed().as_secs_f64(),
            min_energy_residual: min_residual,
            schedule_warnings,
        },
        aborted,
    })
}
