//! The stochastic oracle toolkit: sampling distributions over component
//! pairs, exact unbiasedness by enumeration, and empirical certification
//! of the closed-form Lipschitz bounds.
//!
//! Run with `cargo run --release --example sampling_oracles`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hvi::oracle::{
    empirical_lipschitz_check, exhaustive_expectation, lipschitz_bound, lipschitz_rule,
    random_feasible, LipFormulaKind, SamplingScheme,
};
use hvi::operator::eval_combined;
use hvi::problems::{Instance, InstanceKind};

fn main() -> hvi::Result<()> {
    let nu = 4;
    let inst = Instance::build(InstanceKind::EqSelection, nu)?;
    let p = inst.problem();
    let (n, m) = (2 * nu, 2 * nu);
    let mut rng = ChaCha8Rng::seed_from_u64(88);

    println!("unbiasedness: sum over all pairs of Q(ξ) V^ξ(z) vs the full operator");
    let (c, r) = p.static_importance();
    let schemes = [
        ("uniform", SamplingScheme::Uniform),
        ("static importance", SamplingScheme::StaticImportance { c, r }),
        ("adaptive l1", SamplingScheme::AdaptiveL1),
        ("adaptive l2", SamplingScheme::AdaptiveL2),
    ];
    let z = random_feasible(&mut rng, n, m);
    let u = random_feasible(&mut rng, n, m);
    let v = random_feasible(&mut rng, n, m);
    let beta = 0.7;
    let full = eval_combined(beta, p.f1(), p.f2(), &z)?;
    for (name, scheme) in &schemes {
        let exp = exhaustive_expectation(scheme, p, beta, &z, Some((&u, &v)))?;
        println!("    {name:<18} max deviation {:.2e}", exp.max_abs_diff(&full));
    }

    println!();
    println!("cited Lipschitz bounds at β = 0.7:");
    let lc = Instance::build(InstanceKind::LinConstrained, nu)?;
    for (inst, kind) in [
        (&inst, LipFormulaKind::EuclidEqSelection),
        (&inst, LipFormulaKind::L1EqSelection),
        (&inst, LipFormulaKind::L2EqSelection),
        (&lc, LipFormulaKind::L1Constrained),
        (&lc, LipFormulaKind::L2Constrained),
    ] {
        let b = lipschitz_bound(kind, beta, inst)?;
        println!("    {:<22} L = {:.4}", b.provenance, b.value);
    }

    println!();
    println!("certification against exact oracle expectations (ratio must stay <= 1):");
    for (inst, kind, scheme) in [
        (&inst, LipFormulaKind::L1EqSelection, SamplingScheme::AdaptiveL1),
        (&inst, LipFormulaKind::L2EqSelection, SamplingScheme::AdaptiveL2),
        (&lc, LipFormulaKind::L2Constrained, SamplingScheme::AdaptiveL2),
    ] {
        let rule = lipschitz_rule(kind, inst)?;
        let report = empirical_lipschitz_check(&scheme, inst.problem(), beta, &rule, 200, &mut rng)?;
        println!(
            "    {:<22} max ratio {:.4} over {} pairs -> {}",
            rule.provenance(),
            report.max_ratio,
            report.trials,
            if report.pass { "certified" } else { "VIOLATED" }
        );
    }
    Ok(())
}
