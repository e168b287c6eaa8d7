//! The linearly constrained equilibrium instance: find a Nash equilibrium
//! that also satisfies `Bx + Cy = d`. The upper level carries the game and
//! the lower level the constraint gradient, so the duality gap is the
//! optimality metric and `||Bx + Cy - d||²` the feasibility metric.
//!
//! Run with `cargo run --release --example linearly_constrained`.

use hvi::bench::default_start;
use hvi::geometry::GeometryKind;
use hvi::oracle::{lipschitz_rule, LipFormulaKind, SamplingScheme};
use hvi::problems::{gaps_linear, Instance, InstanceKind, LinearlyConstrained};
use hvi::problem::HierarchicalProblem;
use hvi::schedule::ScheduleParams;
use hvi::solver::{BregmanVrSolver, OracleMode, TauRule};

fn main() -> hvi::Result<()> {
    let nu = 50;
    let problem = LinearlyConstrained::new(nu)?;
    let (n, m) = problem.dims();
    println!("linearly constrained equilibrium, n = m = {n}");

    // The iteration-independent importance sampling of the extragradient
    // solver is unavailable here (B has zero columns), so only the
    // mirror-prox solver runs, in both geometries. δ = 0.01 per the
    // constrained benchmark setup.
    for (name, geom, formula, scheme) in [
        (
            "l1 (entropic)",
            GeometryKind::EntropicBlockSimplex,
            LipFormulaKind::L1Constrained,
            SamplingScheme::AdaptiveL1,
        ),
        (
            "l2 (euclidean)",
            GeometryKind::Euclidean,
            LipFormulaKind::L2Constrained,
            SamplingScheme::AdaptiveL2,
        ),
    ] {
        let params = ScheduleParams { delta: 0.01, ..Default::default() };
        let lip =
            lipschitz_rule(formula, &Instance::build(InstanceKind::LinConstrained, nu)?)?;
        let mut solver = BregmanVrSolver::new(
            &problem,
            geom,
            params,
            OracleMode::Sampled(scheme),
            lip,
            TauRule::Experiment,
            default_start(n, m),
            99,
        )?;
        for _ in 0..1500 {
            solver.run_epoch()?;
        }
        let erg = solver.ergodic_point()?;
        let (opt, feas) = gaps_linear(&problem, &erg);
        println!("{name:>16}: optimality gap {opt:.4e}, constraint residual {feas:.4e}");
    }
    Ok(())
}
