//! Euclidean and entropic geometric primitives: simplex projection, Bregman
//! divergences, the two- and three-point prox maps used by the solvers, and
//! mirror averaging.
//!
//! The entropic geometry is the negative-entropy distance-generating
//! function on `Δn × Δm`, whose Bregman divergence is the blockwise KL
//! divergence. All entropic computations run in the log domain with
//! per-block max subtraction before exponentiation; coordinates that
//! underflow are floored at the smallest positive normal number and the
//! block renormalized, since epoch-style multiplicative updates otherwise
//! drive raw products to zero.

use crate::block::BlockVector;
use crate::error::{Error, Result};

/// The two supported geometries. The entropic one is only valid when the
/// feasible set is a product of unit simplices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    Euclidean,
    EntropicBlockSimplex,
}

/// Euclidean projection onto the unit simplex by sort and threshold.
pub fn project_simplex(v: &[f64]) -> Result<Vec<f64>> {
    if v.is_empty() {
        return Err(Error::config("cannot project an empty vector onto a simplex"));
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("non-finite entry in projection input"));
    let mut cumsum = 0.0;
    let mut lambda = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            lambda = candidate;
        } else {
            break;
        }
    }
    Ok(v.iter().map(|&u| (u - lambda).max(0.0)).collect())
}

/// Blockwise projection `(Π_{Δn}(x), Π_{Δm}(y))`. This realizes
/// `prox_{τ G}` whenever `G` is the indicator of `Δn × Δm`.
pub fn prox_simplex_pair(z: &BlockVector) -> BlockVector {
    let px = project_simplex(z.x()).expect("nonempty block");
    let py = project_simplex(z.y()).expect("nonempty block");
    BlockVector::from_parts(&px, &py)
}

/// Gradient of the distance-generating function: the identity for the
/// Euclidean geometry, `1 + log z` per coordinate for the entropic one.
pub fn grad_d(geom: GeometryKind, z: &BlockVector) -> Result<BlockVector> {
    match geom {
        GeometryKind::Euclidean => Ok(z.clone()),
        GeometryKind::EntropicBlockSimplex => {
            let mut out = z.clone();
            for v in out.as_mut_slice() {
                if *v <= 0.0 {
                    return Err(Error::domain("entropic gradient needs strictly positive entries"));
                }
                *v = 1.0 + v.ln();
            }
            Ok(out)
        }
    }
}

/// Bregman divergence `D(x, z) = d(x) - d(z) - <d'(z), x - z>`.
///
/// Euclidean: `||x - z||² / 2`. Entropic: blockwise KL divergence (plus the
/// mass-correction term, which vanishes when both blocks are normalized),
/// with the convention `0·log 0 = 0`. The second argument must be strictly
/// positive in the entropic case.
pub fn bregman_divergence(geom: GeometryKind, x: &BlockVector, z: &BlockVector) -> Result<f64> {
    x.check_shape(z)?;
    match geom {
        GeometryKind::Euclidean => Ok(0.5 * x.sub(z).norm_sq()),
        GeometryKind::EntropicBlockSimplex => {
            let mut d = 0.0;
            for (&xi, &zi) in x.as_slice().iter().zip(z.as_slice()) {
                if zi <= 0.0 {
                    return Err(Error::domain(format!(
                        "KL divergence needs a strictly positive reference point, got {zi}"
                    )));
                }
                if xi < 0.0 {
                    return Err(Error::domain("first KL argument must be nonnegative"));
                }
                if xi > 0.0 {
                    d += xi * (xi / zi).ln();
                }
                d += zi - xi;
            }
            Ok(d)
        }
    }
}

fn normalize_from_log(log_block: &[f64]) -> Result<Vec<f64>> {
    let max = log_block.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return Err(Error::numerical("log-domain block degenerated"));
    }
    let mut vals: Vec<f64> = log_block
        .iter()
        .map(|&t| (t - max).exp().max(f64::MIN_POSITIVE))
        .collect();
    let sum: f64 = vals.iter().sum();
    if !(sum > 0.0 && sum.is_finite()) {
        return Err(Error::numerical("block vanished after flooring"));
    }
    for v in &mut vals {
        *v /= sum;
    }
    Ok(vals)
}

/// Entropic three-point prox map
/// `T(u, v, w) = argmin_z { <u, z> + G(z) + α D(z, v) + (1-α) D(z, w) }`
/// with `G` the indicator of `Δn × Δm`. Closed form per coordinate:
/// `z̃_i = v_i^α w_i^{1-α} e^{-u_i}`, normalized per block.
pub fn entropic_three_point(
    u: &BlockVector,
    v: &BlockVector,
    w: &BlockVector,
    alpha: f64,
) -> Result<BlockVector> {
    u.check_shape(v)?;
    u.check_shape(w)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::config(format!("interpolation weight must lie in [0,1], got {alpha}")));
    }
    let n = u.split();
    let mut logs = Vec::with_capacity(u.len());
    for i in 0..u.len() {
        let vi = v.as_slice()[i];
        let wi = w.as_slice()[i];
        if vi <= 0.0 || wi <= 0.0 {
            return Err(Error::domain("entropic prox centers must be strictly positive"));
        }
        logs.push(alpha * vi.ln() + (1.0 - alpha) * wi.ln() - u.as_slice()[i]);
    }
    let xb = normalize_from_log(&logs[..n])?;
    let yb = normalize_from_log(&logs[n..])?;
    Ok(BlockVector::from_parts(&xb, &yb))
}

/// Euclidean three-point prox map: `prox(α v + (1-α) w - u)` with the
/// supplied combined prox.
pub fn euclid_three_point<F>(
    u: &BlockVector,
    v: &BlockVector,
    w: &BlockVector,
    alpha: f64,
    prox: F,
) -> BlockVector
where
    F: FnOnce(&BlockVector) -> BlockVector,
{
    let mut point = BlockVector::lin_comb(alpha, v, 1.0 - alpha, w);
    point.add_scaled(-1.0, u);
    prox(&point)
}

/// Point `w̄` with `∇d(w̄) = (1/K) Σ_j ∇d(x_j)`.
///
/// Euclidean: the arithmetic mean. Entropic: the per-coordinate geometric
/// mean renormalized per block — on the simplex the gradient identity only
/// determines `w̄` up to a per-block constant, and the divergence
/// `D(·, w̄)` restricted to the simplex is insensitive to that constant, so
/// the normalized representative is used.
pub fn mirror_average(geom: GeometryKind, points: &[BlockVector]) -> Result<BlockVector> {
    let first = points
        .first()
        .ok_or_else(|| Error::config("mirror average of an empty point set"))?;
    match geom {
        GeometryKind::Euclidean => {
            let mut acc = BlockVector::zeros(first.dims().0, first.dims().1);
            for p in points {
                acc.add_scaled(1.0, p);
            }
            Ok(acc.scale(1.0 / points.len() as f64))
        }
        GeometryKind::EntropicBlockSimplex => {
            let mut logs = vec![0.0; first.len()];
            for p in points {
                first.check_shape(p)?;
                for (acc, &val) in logs.iter_mut().zip(p.as_slice()) {
                    if val <= 0.0 {
                        return Err(Error::domain("mirror average needs strictly positive points"));
                    }
                    *acc += val.ln();
                }
            }
            let k = points.len() as f64;
            for acc in &mut logs {
                *acc /= k;
            }
            let n = first.split();
            let xb = normalize_from_log(&logs[..n])?;
            let yb = normalize_from_log(&logs[n..])?;
            Ok(BlockVector::from_parts(&xb, &yb))
        }
    }
}
