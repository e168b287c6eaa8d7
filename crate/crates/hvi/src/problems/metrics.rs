//! Gap metrics, solution-set distances and the weak-sharpness probe for the
//! matrix-game instances.

use crate::block::BlockVector;
use crate::geometry::project_simplex;
use crate::operator::FiniteSumOperator;
use crate::problem::{ExtReal, HierarchicalProblem};

use super::lin_constrained::LinearlyConstrained;
use super::pennies::MatchingPenniesGame;

/// How far `z` sits from the simplex-pair constraints before a gap
/// evaluation stops being trustworthy.
pub const FEASIBILITY_TOL: f64 = 1e-8;

/// Result of a gap evaluation on a possibly slightly infeasible point.
#[derive(Debug, Clone, Copy)]
pub struct GapValue {
    pub value: f64,
    /// Set when the queried point violated the simplex constraints by more
    /// than `1e-8`; the gap is still computed.
    pub infeasible_input: bool,
}

/// Matrix-game duality gap `max_j (Mᵀx)_j - min_i (My)_i`. Nonnegative on
/// the feasible set, zero exactly at Nash equilibria.
pub fn feas_gap_game(game: &MatchingPenniesGame, z: &BlockVector) -> GapValue {
    let mtx = game.mat_t_vec(z.x());
    let my = game.mat_vec(z.y());
    let max = mtx.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = my.iter().cloned().fold(f64::INFINITY, f64::min);
    GapValue {
        value: max - min,
        infeasible_input: z.simplex_pair_violation() > FEASIBILITY_TOL,
    }
}

/// Squared distance `||z - z*||²` to the unique equilibrium-selection
/// solution `z* = (1/n·1, 1/m·1)`.
pub fn dist_to_opt_selection(z: &BlockVector) -> f64 {
    let (n, m) = z.dims();
    let zstar = BlockVector::uniform_simplex_pair(n, m);
    z.sub(&zstar).norm_sq()
}

/// Euclidean distance from `z` to the Nash set
/// `{(½μ⊗(1,1), ½η⊗(1,1)) : μ, η ∈ Δ_ν}` of the matching-pennies game.
///
/// The per-block projection is closed-form: with pair averages
/// `x̄_s = (x_{2s} + x_{2s+1})/2`, the optimal weights are
/// `μ = Π_{Δν}(2x̄)`, and the nearest point is `½μ⊗(1,1)`.
pub fn dist_to_s2_selection(game: &MatchingPenniesGame, z: &BlockVector) -> f64 {
    let d2 = block_dist_sq_to_nash(game.nu(), z.x()) + block_dist_sq_to_nash(game.nu(), z.y());
    d2.sqrt()
}

fn block_dist_sq_to_nash(nu: usize, block: &[f64]) -> f64 {
    let doubled_avgs: Vec<f64> = (0..nu).map(|s| block[2 * s] + block[2 * s + 1]).collect();
    let mu = project_simplex(&doubled_avgs).expect("nu >= 1");
    let mut d2 = 0.0;
    for s in 0..nu {
        let t = mu[s] / 2.0;
        d2 += (block[2 * s] - t).powi(2) + (block[2 * s + 1] - t).powi(2);
    }
    d2
}

/// Nearest Nash point used by `dist_to_s2_selection`, exposed for tests and
/// for constructing equilibria from arbitrary simplex weights.
pub fn project_to_nash(game: &MatchingPenniesGame, z: &BlockVector) -> BlockVector {
    let nu = game.nu();
    let reconstruct = |block: &[f64]| -> Vec<f64> {
        let doubled: Vec<f64> = (0..nu).map(|s| block[2 * s] + block[2 * s + 1]).collect();
        let mu = project_simplex(&doubled).expect("nu >= 1");
        let mut out = vec![0.0; 2 * nu];
        for s in 0..nu {
            out[2 * s] = mu[s] / 2.0;
            out[2 * s + 1] = mu[s] / 2.0;
        }
        out
    };
    BlockVector::from_parts(&reconstruct(z.x()), &reconstruct(z.y()))
}

/// The equilibrium `(½μ⊗(1,1), ½η⊗(1,1))` for weights `μ, η ∈ Δ_ν`.
pub fn equilibrium_from_weights(mu: &[f64], eta: &[f64]) -> BlockVector {
    let spread = |w: &[f64]| -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * w.len());
        for &v in w {
            out.push(v / 2.0);
            out.push(v / 2.0);
        }
        out
    };
    BlockVector::from_parts(&spread(mu), &spread(eta))
}

/// Both gaps of the linearly constrained instance:
/// `(opt, feas) = (duality gap of the game, ||Bx + Cy - d||²)`.
pub fn gaps_linear(instance: &LinearlyConstrained, z: &BlockVector) -> (f64, f64) {
    let opt = feas_gap_game(instance.game(), z).value;
    let feas = instance.constraint_gap(z);
    (opt, feas)
}

/// The gap bifunction `H^{(F,g)}(x, y) = <F(y), x - y> + g(x) - g(y)`.
/// Infinite `g` values propagate to `±∞` accordingly.
pub fn h_bifunction(
    f: &dyn FiniteSumOperator,
    g: impl Fn(&BlockVector) -> ExtReal,
    x: &BlockVector,
    y: &BlockVector,
) -> f64 {
    let inner = f.full(y).dot(&x.sub(y));
    let gx = match g(x) {
        ExtReal::Finite(v) => v,
        ExtReal::PosInf => return f64::INFINITY,
    };
    let gy = match g(y) {
        ExtReal::Finite(v) => v,
        ExtReal::PosInf => return f64::NEG_INFINITY,
    };
    inner + gx - gy
}

/// Restricted dual gap `Θ(x | F, g, C) = max_{y ∈ C} H^{(F,g)}(x, y)` over a
/// finite probe set.
pub fn restricted_gap(
    f: &dyn FiniteSumOperator,
    g: impl Fn(&BlockVector) -> ExtReal + Copy,
    x: &BlockVector,
    probes: &[BlockVector],
) -> f64 {
    probes
        .iter()
        .map(|y| h_bifunction(f, g, x, y))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// One weak-sharpness observation: `H = H^{(F2,g2)}(z, z*)`, the distance
/// to the lower-level solution set, and the ratio `H / dist^ρ`. The ratio
/// is reported, not asserted — the sharpness modulus is unknown.
#[derive(Debug, Clone, Copy)]
pub struct SharpnessProbe {
    pub h: f64,
    pub dist: f64,
    pub ratio: f64,
}

pub fn weak_sharpness_probe(
    problem: &dyn HierarchicalProblem,
    game: &MatchingPenniesGame,
    z: &BlockVector,
    zstar: &BlockVector,
    rho: f64,
) -> SharpnessProbe {
    let h = h_bifunction(problem.f2(), |p| problem.g2_value(p), z, zstar);
    let dist = dist_to_s2_selection(game, z);
    let ratio = if dist > 0.0 { h / dist.powf(rho) } else { f64::INFINITY };
    SharpnessProbe { h, dist, ratio }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_simplex(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
        let mut v: Vec<f64> = (0..d).map(|_| -(rng.gen::<f64>().max(1e-300)).ln()).collect();
        let s: f64 = v.iter().sum();
        for x in &mut v {
            *x /= s;
        }
        v
    }

    #[test]
    fn duality_gap_examples() {
        let g = MatchingPenniesGame::new(1).unwrap();
        let uniform = BlockVector::uniform_simplex_pair(2, 2);
        assert_eq!(feas_gap_game(&g, &uniform).value, 0.0);
        let corner = BlockVector::from_parts(&[1.0, 0.0], &[1.0, 0.0]);
        assert_eq!(feas_gap_game(&g, &corner).value, 2.0);
        let infeasible = BlockVector::from_parts(&[2.0, 0.0], &[1.0, 0.0]);
        assert!(feas_gap_game(&g, &infeasible).infeasible_input);
    }

    #[test]
    fn gap_nonnegative_on_feasible_points_and_zero_on_equilibria() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for nu in [1usize, 2, 3] {
            let g = MatchingPenniesGame::new(nu).unwrap();
            for _ in 0..200 {
                let z = BlockVector::from_parts(
                    &random_simplex(&mut rng, 2 * nu),
                    &random_simplex(&mut rng, 2 * nu),
                );
                assert!(feas_gap_game(&g, &z).value >= -1e-12);
            }
            for _ in 0..50 {
                let mu = random_simplex(&mut rng, nu);
                let eta = random_simplex(&mut rng, nu);
                let eq = equilibrium_from_weights(&mu, &eta);
                assert!(feas_gap_game(&g, &eq).value.abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn dist_to_opt_examples() {
        let z = BlockVector::uniform_simplex_pair(2, 2);
        assert_eq!(dist_to_opt_selection(&z), 0.0);
        let z = BlockVector::from_parts(&[1.0, 0.0], &[0.5, 0.5]);
        assert!((dist_to_opt_selection(&z) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dist_to_s2_hand_case() {
        // ν = 1: μ = 1 forced, nearest x-block is (½, ½); with y at the
        // equilibrium the squared distance is 0.08.
        let g = MatchingPenniesGame::new(1).unwrap();
        let z = BlockVector::from_parts(&[0.7, 0.3], &[0.5, 0.5]);
        let d = dist_to_s2_selection(&g, &z);
        assert!((d * d - 0.08).abs() < 1e-14);
        // Points already in the Nash set are at distance zero.
        let eq = equilibrium_from_weights(&[0.25, 0.75], &[0.6, 0.4]);
        let g2 = MatchingPenniesGame::new(2).unwrap();
        assert!(dist_to_s2_selection(&g2, &eq) < 1e-15);
    }

    /// Dense grid-search oracle for the Nash-set distance at ν = 2: the
    /// Nash set is parameterized by a single scalar per block.
    fn grid_dist_nu2(z: &BlockVector) -> f64 {
        let block_min = |block: &[f64]| -> f64 {
            let mut best = f64::INFINITY;
            let mut t = 0.0;
            while t <= 1.0 + 1e-12 {
                let p = [t / 2.0, t / 2.0, (1.0 - t) / 2.0, (1.0 - t) / 2.0];
                let d: f64 = block.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum();
                best = best.min(d);
                t += 1e-3;
            }
            best
        };
        (block_min(z.x()) + block_min(z.y())).sqrt()
    }

    #[test]
    fn dist_to_s2_matches_grid_search() {
        let g = MatchingPenniesGame::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let z =
                BlockVector::from_parts(&random_simplex(&mut rng, 4), &random_simplex(&mut rng, 4));
            let exact = dist_to_s2_selection(&g, &z);
            let grid = grid_dist_nu2(&z);
            assert!((exact - grid).abs() < 1e-3, "exact {exact} vs grid {grid}");
        }
    }

    #[test]
    fn gaps_linear_examples() {
        let p = LinearlyConstrained::new(1).unwrap();
        let uniform = BlockVector::uniform_simplex_pair(2, 2);
        let (opt, feas) = gaps_linear(&p, &uniform);
        assert_eq!(opt, 0.0);
        assert!(feas < 1e-30);
        let z = BlockVector::from_parts(&[1.0, 0.0], &[0.0, 1.0]);
        let (opt, feas) = gaps_linear(&p, &z);
        assert_eq!(opt, 2.0);
        assert_eq!(feas, 0.0);
    }

    #[test]
    fn weak_sharpness_probe_nonnegative() {
        use super::super::eq_selection::EquilibriumSelection;
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for nu in [1usize, 2, 3] {
            let p = EquilibriumSelection::new(nu).unwrap();
            for _ in 0..100 {
                let z = BlockVector::from_parts(
                    &random_simplex(&mut rng, 2 * nu),
                    &random_simplex(&mut rng, 2 * nu),
                );
                let mu = random_simplex(&mut rng, nu);
                let eta = random_simplex(&mut rng, nu);
                let eq = equilibrium_from_weights(&mu, &eta);
                let probe = weak_sharpness_probe(&p, p.game(), &z, &eq, 1.5);
                assert!(probe.h >= -1e-12, "H^(F2,g2)(z, z*) = {} < 0", probe.h);
                assert!(probe.dist >= 0.0);
            }
        }
    }
}
