//! Solve the equilibrium-selection problem with the variance-reduced
//! extragradient method: among all Nash equilibria of a matching-pennies
//! game, find the one of minimal norm.
//!
//! Run with `cargo run --release --example equilibrium_selection`.

use hvi::bench::default_start;
use hvi::oracle::{lipschitz_rule, LipFormulaKind, SamplingScheme};
use hvi::problems::{dist_to_opt_selection, feas_gap_game, EquilibriumSelection, Instance, InstanceKind};
use hvi::problem::HierarchicalProblem;
use hvi::schedule::ScheduleParams;
use hvi::solver::{EuclidVrSolver, OracleMode, TauRule};

fn main() -> hvi::Result<()> {
    let nu = 50;
    let problem = EquilibriumSelection::new(nu)?;
    let (n, m) = problem.dims();
    println!("equilibrium selection on a {n}x{m} matching-pennies game");

    // Experiment parameters: θ = 0.1, α = 1-θ, β_k = 1/(k+1)^0.1,
    // τ_k = √θ/(2 L_k) with the instance's Lipschitz formula.
    let params = ScheduleParams::default();
    let (c, r) = problem.static_importance();
    let lip = lipschitz_rule(
        LipFormulaKind::EuclidEqSelection,
        &Instance::build(InstanceKind::EqSelection, nu)?,
    )?;

    let mut solver = EuclidVrSolver::new(
        &problem,
        params,
        OracleMode::Sampled(SamplingScheme::StaticImportance { c, r }),
        lip,
        TauRule::Experiment,
        default_start(n, m),
        42,
    )?;

    println!("{:>10} {:>14} {:>14}", "iteration", "duality gap", "dist to z*");
    for k in 1..=50_000u64 {
        solver.step()?;
        if k % 5000 == 0 {
            let erg = solver.ergodic_point()?;
            println!(
                "{k:>10} {:>14.6e} {:>14.6e}",
                feas_gap_game(problem.game(), &erg).value,
                dist_to_opt_selection(&erg)
            );
        }
    }

    let erg = solver.ergodic_point()?;
    println!(
        "final ergodic point: x-block mass spread {:.3e} (the solution is uniform)",
        erg.x().iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - erg.x().iter().cloned().fold(f64::INFINITY, f64::min)
    );
    Ok(())
}
