//! The deterministic extragradient baseline, and the gap between ergodic
//! and last-iterate behavior.
//!
//! Run with `cargo run --release --example deterministic_baseline`.

use hvi::bench::default_start;
use hvi::problems::{dist_to_opt_selection, feas_gap_game, EquilibriumSelection};
use hvi::problem::HierarchicalProblem;
use hvi::schedule::ScheduleParams;
use hvi::solver::{DetEgSolver, TauRule};

fn main() -> hvi::Result<()> {
    let problem = EquilibriumSelection::new(25)?;
    let (n, m) = problem.dims();
    let mut solver = DetEgSolver::new(
        &problem,
        ScheduleParams::default(),
        TauRule::DeterministicRatio,
        default_start(n, m),
    )?;

    println!("{:>8} {:>14} {:>14} {:>14}", "iter", "gap (ergodic)", "gap (last)", "dist (erg)");
    for k in 1..=20_000u64 {
        solver.step()?;
        if k % 2000 == 0 {
            let erg = solver.ergodic_point()?;
            println!(
                "{k:>8} {:>14.6e} {:>14.6e} {:>14.6e}",
                feas_gap_game(problem.game(), &erg).value,
                feas_gap_game(problem.game(), solver.iterate()).value,
                dist_to_opt_selection(&erg)
            );
        }
    }
    Ok(())
}
