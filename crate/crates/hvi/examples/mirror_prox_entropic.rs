//! The variance-reduced mirror-prox solver in entropic (block-simplex)
//! geometry, with per-iterate adaptive importance sampling.
//!
//! Run with `cargo run --release --example mirror_prox_entropic`.

use hvi::bench::default_start;
use hvi::geometry::GeometryKind;
use hvi::oracle::{lipschitz_rule, LipFormulaKind, SamplingScheme};
use hvi::problems::{dist_to_opt_selection, feas_gap_game, EquilibriumSelection, Instance, InstanceKind};
use hvi::problem::HierarchicalProblem;
use hvi::schedule::ScheduleParams;
use hvi::solver::{BregmanVrSolver, OracleMode, TauRule};

fn main() -> hvi::Result<()> {
    let nu = 50;
    let problem = EquilibriumSelection::new(nu)?;
    let (n, m) = problem.dims();

    // K = 1/θ inner iterations per epoch; β_s = (K(s+1))^{-δ};
    // τ_s = √(1-α)/(2 L_s) with L_s = sqrt(2(β_s² + ||M||_max²)).
    let params = ScheduleParams::default();
    let lip = lipschitz_rule(
        LipFormulaKind::L1EqSelection,
        &Instance::build(InstanceKind::EqSelection, nu)?,
    )?;

    let mut solver = BregmanVrSolver::new(
        &problem,
        GeometryKind::EntropicBlockSimplex,
        params,
        OracleMode::Sampled(SamplingScheme::AdaptiveL1),
        lip,
        TauRule::Experiment,
        default_start(n, m),
        7,
    )?;

    println!("entropic mirror prox on the {n}x{m} equilibrium-selection instance");
    println!("{:>8} {:>14} {:>14} {:>14}", "epoch", "gap (ergodic)", "gap (outer w)", "dist (erg)");
    for s in 1..=2000u64 {
        solver.run_epoch()?;
        if s % 200 == 0 {
            let erg = solver.ergodic_point()?;
            println!(
                "{s:>8} {:>14.6e} {:>14.6e} {:>14.6e}",
                feas_gap_game(problem.game(), &erg).value,
                feas_gap_game(problem.game(), solver.snapshot()).value,
                dist_to_opt_selection(&erg)
            );
        }
    }
    println!("iterates remain strictly interior: multiplicative updates never touch the boundary");
    Ok(())
}
