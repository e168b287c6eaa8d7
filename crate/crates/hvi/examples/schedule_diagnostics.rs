//! Schedule diagnostics: the summability validator tied to weak sharpness
//! of the lower-level solution set, and the closed-form bound on the
//! summed regularization error.
//!
//! Run with `cargo run --example schedule_diagnostics`.

use hvi::schedule::{h_bar_bound, ScheduleParams};

fn main() {
    // The regularization weight must decay slowly enough to keep steering
    // the upper level (δ < ½) but fast enough for summability under
    // (κ, ρ)-weak sharpness (δ > 1 - 1/ρ).
    for (rho, delta) in [(1.5, 0.4), (1.5, 0.2), (1.2, 0.2), (1.5, 0.6)] {
        let params = ScheduleParams { rho, delta, ..Default::default() };
        let violations = params.validate();
        if violations.is_empty() {
            println!("ρ = {rho}, δ = {delta}: schedule valid");
        } else {
            println!("ρ = {rho}, δ = {delta}:");
            for v in violations {
                println!("    {v}");
            }
        }
    }

    println!();
    println!("β_k = a (k+b)^(-δ) with the benchmark defaults:");
    let p = ScheduleParams::default();
    for k in [0u64, 10, 1000, 100_000] {
        println!("    β_{k:<7} = {:.6}", p.beta_euclid(k));
    }

    println!();
    println!("closed-form bound on the summed regularization error Σ h_k");
    println!("(needs δ ρ/(ρ-1) > 1; scales like a^ρ* and ||p*||^ρ*):");
    for (a, delta, rho) in [(1.0, 0.75, 2.0), (2.0, 0.75, 2.0), (1.0, 0.45, 1.5)] {
        match h_bar_bound(a, 1.0, delta, rho, 1.0, 1.0) {
            Ok(v) => println!("    a = {a}, δ = {delta}, ρ = {rho}: h̄ = {v:.4}"),
            Err(e) => println!("    a = {a}, δ = {delta}, ρ = {rho}: {e}"),
        }
    }
}
