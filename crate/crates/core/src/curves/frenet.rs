//! Frenet frames of sampled curves in `S³`: Gram–Schmidt applied to
//! `(γ, γ′, γ″, γ‴)`, with derivatives from 7-point finite differences.

use nalgebra::{Matrix4, Vector4};

use super::integrate::CurveSample;
use crate::error::CurveError;
use crate::linalg::gram_schmidt;
use crate::spin4::{spin_preimage, SpinPoint};

/// Stencil width for the derivatives.
const STENCIL: usize = 7;

/// Weights of the finite-difference approximations of derivatives
/// `0..=order` at `z` from values at nodes `x` (Fornberg's recursion).
/// Returns `w[d][j]`, the weight of node `j` for derivative `d`.
pub fn fd_weights(z: f64, x: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// The osculating matrices `(γ, γ′, γ″, γ‴)` at every sample of a
/// uniformly sampled curve, with a per-sample error estimate of the
/// determinant (difference between 7-point and 5-point stencils).
fn osculating(samples: &[Vector4<f64>], h: f64) -> Vec<(Matrix4<f64>, f64)> {
    let n = samples.len();
    let build = |k: usize, width: usize| {
        let lo = k.saturating_sub(width / 2).min(n - width);
        let nodes: Vec<f64> = (lo..lo + width).map(|j| (j as f64 - k as f64) * h).collect();
        let w = fd_weights(0.0, &nodes, 3);
        let mut m = Matrix4::zeros();
        m.set_column(0, &samples[k]);
        for d in 1..=3 {
            let mut v = Vector4::zeros();
            for (j, wj) in w[d].iter().enumerate() {
                v += samples[lo + j] * *wj;
            }
            m.set_column(d, &v);
        }
        m
    };
    (0..n)
        .map(|k| {
            let m7 = build(k, STENCIL);
            let m5 = build(k, 5);
            (m7, (m7.determinant() - m5.determinant()).abs())
        })
        .collect()
}

/// Frenet frames of the uniformly sampled curve `γ(t₀ + k h)`, lifted
/// continuously to `Spin4` starting from `start` (default: the canonical
/// preimage of the first frame).
///
/// Fails with `NotLocallyConvex` where `det(γ, γ′, γ″, γ‴) ≤ 0`, and with
/// `Invalid` where the determinant does not exceed ten times its
/// finite-difference error estimate.
pub fn frenet_lift(
    samples: &[Vector4<f64>],
    t0: f64,
    t1: f64,
    start: Option<SpinPoint>,
) -> Result<CurveSample, CurveError> {
    let n = samples.len();
    if n < STENCIL || !(t1 > t0) {
        return Err(CurveError::Invalid(format!("need at least {STENCIL} samples on a nonempty interval")));
    }
    let h = (t1 - t0) / (n - 1) as f64;
    let times: Vec<f64> = (0..n).map(|k| if k + 1 == n { t1 } else { t0 + h * k as f64 }).collect();
    let mut points = Vec::with_capacity(n);
    let mut previous: Option<SpinPoint> = None;
    for (k, (m, err)) in osculating(samples, h).into_iter().enumerate() {
        let det = m.determinant();
        let t = times[k];
        if det <= 0.0 {
            return Err(CurveError::NotLocallyConvex { t, det });
        }
        if det <= 10.0 * err {
            return Err(CurveError::Invalid(format!(
                "grid too coarse at t = {t}: det {det:.3e} vs finite-difference error {err:.3e}"
            )));
        }
        let q = gram_schmidt(&m).ok_or(CurveError::NotLocallyConvex { t, det })?;
        let z = spin_preimage(&q);
        let z = match previous {
            Some(p) => z.nearest_sign(p),
            None => match start {
                Some(s) => z.nearest_sign(s),
                None => super::frame::canonical_sign(z),
            },
        };
        if let Some(p) = previous {
            if z.dist(p) >= 0.2 {
                return Err(CurveError::Invalid(format!("samples too sparse near t = {t}")));
            }
        }
        previous = Some(z);
        points.push(z);
    }
    CurveSample::from_points(times, points)
}
