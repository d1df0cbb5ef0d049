//! Continuous lifts of matrix paths to `Spin4`, and the spin
//! representative of the cell containing a point.

use nalgebra::Matrix4;
use rand::Rng;

use super::classify::{classify_cell, random_upper, DEFAULT_RANK_TOL};
use super::rep::SignedRep;
use crate::error::BruhatError;
use crate::linalg::gram_schmidt;
use crate::spin4::{btilde_group, pi_matrix, spin_preimage, ExactSpin, SpinPoint};

/// Largest accepted quaternion increment per tracking step.
const MAX_STEP: f64 = 0.1;

fn increment(a: SpinPoint, b: SpinPoint) -> f64 {
    (a.left - b.left).norm().max((a.right - b.right).norm())
}

/// Lifts `s ↦ GramSchmidt(path(s))` from `s0` to `s1`, starting at `start`
/// (a preimage of the matrix at `s0`), keeping each step's quaternion
/// increment below 0.1 by bisection.
pub fn track_matrix_path<F>(path: F, s0: f64, s1: f64, start: SpinPoint) -> Result<SpinPoint, BruhatError>
where
    F: Fn(f64) -> Matrix4<f64>,
{
    let lift_at = |s: f64| -> Result<SpinPoint, BruhatError> {
        let q = gram_schmidt(&path(s)).ok_or(BruhatError::StepTooLarge(f64::NAN))?;
        Ok(spin_preimage(&q))
    };
    let mut current = start;
    let mut s = s0;
    let mut h = (s1 - s0) / 8.0;
    let min_step = (s1 - s0).abs() * 1e-12;
    let mut done = s0 == s1;
    while !done {
        let last = (s1 - s).abs() <= h.abs();
        let next = if last { s1 } else { s + h };
        let candidate = lift_at(next)?.nearest_sign(current);
        let inc = increment(candidate, current);
        if inc > MAX_STEP {
            if h.abs() < min_step {
                return Err(BruhatError::StepTooLarge(inc));
            }
            h /= 2.0;
            continue;
        }
        s = next;
        done = last;
        current = candidate;
        if inc < MAX_STEP / 4.0 {
            h *= 2.0;
        }
    }
    Ok(current)
}

/// The representative in `B̃4⁺` of the cell component containing `z`.
pub fn spin_lift_rep(z: SpinPoint) -> Result<SignedRep, BruhatError> {
    spin_lift_rep_with(z, DEFAULT_RANK_TOL)
}

/// As [`spin_lift_rep`] with an explicit rank threshold.
///
/// The factorization `Π(z) = U₀ P U₁` is deformed to `P` through
/// `((1−s)I + sU₀) P ((1−s)I + sU₁)`, which stays in the cell, and the
/// path is lifted starting at `z`.
pub fn spin_lift_rep_with(z: SpinPoint, tol: f64) -> Result<SignedRep, BruhatError> {
    let q = pi_matrix(z).0;
    let cell = classify_cell(&q, tol)?;
    let id = Matrix4::<f64>::identity();
    let path = |s: f64| {
        let a = id * (1.0 - s) + cell.u0 * s;
        let b = id * (1.0 - s) + cell.u1 * s;
        a * cell.p * b
    };
    let end = track_matrix_path(path, 1.0, 0.0, z)?;
    let group = btilde_group();
    let candidates: Vec<_> =
        [false, true].iter().filter_map(|&lift| group.find_signed(cell.rho, cell.signs, lift)).collect();
    let best = candidates
        .into_iter()
        .min_by(|a, b| a.spin.to_f64().dist(end).total_cmp(&b.spin.to_f64().dist(end)))
        .ok_or_else(|| BruhatError::InvalidRep(format!("{:?} {:?}", cell.rho, cell.signs)))?;
    let dist = best.spin.to_f64().dist(end);
    if dist > 0.5 {
        return Err(BruhatError::StepTooLarge(dist));
    }
    Ok(SignedRep::from_element(best))
}

/// A random point in the component `Bru_z` of a representative `z`:
/// the lift, starting at `z`, of the path to `U₀ Π(z) U₁`.
/// `scale` bounds the off-diagonal entries of the random triangulars.
pub fn random_cell_point<R: Rng>(z: &ExactSpin, rng: &mut R, scale: f64) -> Result<SpinPoint, BruhatError> {
    let p = pi_matrix(z.to_f64()).0;
    let u0 = random_upper(rng, scale);
    let u1 = random_upper(rng, scale);
    let id = Matrix4::<f64>::identity();
    let path = |s: f64| {
        let a = id * (1.0 - s) + u0 * s;
        let b = id * (1.0 - s) + u1 * s;
        a * p * b
    };
    track_matrix_path(path, 0.0, 1.0, z.to_f64())
}
