//! Integration of `Γ(t)⁻¹ Γ′(t) = Σ κⱼ(t) 𝔞ⱼ` by the classical fourth-order
//! Runge–Kutta method on pairs of quaternions.

use serde::Serialize;

use super::frame::FrameCurve;
use super::profile::CurvatureProfile;
use crate::error::CurveError;
use crate::spin4::{Quaternion, SpinPoint, SpinTangent};

/// Largest accepted renormalization drift per step.
const MAX_DRIFT: f64 = 1e-6;

/// Target bound on `h · Σκⱼ` per step, which keeps quaternion increments
/// far below 0.2.
const MAX_ROTATION_PER_STEP: f64 = 0.05;

/// A sampled solution with dense evaluation.
#[derive(Clone, Debug)]
pub struct CurveSample {
    pub times: Vec<f64>,
    pub points: Vec<SpinPoint>,
    /// Order of dense evaluation: 4 for Runge–Kutta output, 1 for
    /// normalized linear interpolation of lifted samples.
    pub order: u32,
    profile: Option<CurvatureProfile>,
}

/// Serializable view of a sample.
#[derive(Clone, Debug, Serialize)]
pub struct CurveSampleRecord {
    pub times: Vec<f64>,
    pub points: Vec<[f64; 8]>,
    pub order: u32,
}

fn velocity(profile: &CurvatureProfile, t: f64) -> SpinTangent {
    SpinTangent::combination(profile.eval(t))
}

fn rhs(z: (Quaternion, Quaternion), v: SpinTangent) -> (Quaternion, Quaternion) {
    (z.0 * v.left, z.1 * v.right)
}

fn axpy(z: (Quaternion, Quaternion), h: f64, d: (Quaternion, Quaternion)) -> (Quaternion, Quaternion) {
    (z.0 + d.0.scale(h), z.1 + d.1.scale(h))
}

/// One RK4 step from `(t, z)` of size `h`, before renormalization.
fn rk4_step(profile: &CurvatureProfile, t: f64, z: SpinPoint, h: f64) -> (Quaternion, Quaternion) {
    let y = (z.left, z.right);
    let k1 = rhs(y, velocity(profile, t));
    let k2 = rhs(axpy(y, h / 2.0, k1), velocity(profile, t + h / 2.0));
    let k3 = rhs(axpy(y, h / 2.0, k2), velocity(profile, t + h / 2.0));
    let k4 = rhs(axpy(y, h, k3), velocity(profile, t + h));
    let l = y.0 + (k1.0 + k2.0.scale(2.0) + k3.0.scale(2.0) + k4.0).scale(h / 6.0);
    let r = y.1 + (k1.1 + k2.1.scale(2.0) + k3.1.scale(2.0) + k4.1).scale(h / 6.0);
    (l, r)
}

/// Integrates the profile with at least `steps` uniform steps (more if
/// the curvature is large), renormalizing after each step.
pub fn integrate(profile: &CurvatureProfile, steps: usize) -> Result<CurveSample, CurveError> {
    let span = profile.end - profile.start;
    let peak = (0..=200)
        .map(|k| profile.eval(profile.start + span * k as f64 / 200.0).iter().sum::<f64>())
        .fold(0.0, f64::max);
    let needed = (peak * span / MAX_ROTATION_PER_STEP).ceil() as usize;
    let n = steps.max(needed).max(1);
    let h = span / n as f64;
    let mut times = Vec::with_capacity(n + 1);
    let mut points = Vec::with_capacity(n + 1);
    let mut z = profile.initial;
    times.push(profile.start);
    points.push(z);
    for k in 0..n {
        let t = profile.start + h * k as f64;
        let (l, r) = rk4_step(profile, t, z, h);
        let drift = (l.norm() - 1.0).abs().max((r.norm() - 1.0).abs());
        if !(drift <= MAX_DRIFT) {
            return Err(CurveError::StepRejected { t, drift });
        }
        z = SpinPoint::new(l, r).normalize();
        times.push(if k + 1 == n { profile.end } else { t + h });
        points.push(z);
    }
    Ok(CurveSample { times, points, order: 4, profile: Some(profile.clone()) })
}

impl CurveSample {
    /// Samples of a curve with no curvature data (dense evaluation by
    /// normalized linear interpolation). Times must increase.
    pub fn from_points(times: Vec<f64>, points: Vec<SpinPoint>) -> Result<Self, CurveError> {
        if times.len() < 2 || times.len() != points.len() || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CurveError::Invalid("sample times must increase and match the points".into()));
        }
        Ok(CurveSample { times, points, order: 1, profile: None })
    }

    pub fn profile(&self) -> Option<&CurvatureProfile> {
        self.profile.as_ref()
    }

    pub fn start(&self) -> SpinPoint {
        self.points[0]
    }

    pub fn end(&self) -> SpinPoint {
        *self.points.last().expect("nonempty sample")
    }

    pub fn record(&self) -> CurveSampleRecord {
        CurveSampleRecord {
            times: self.times.clone(),
            points: self.points.iter().map(|p| p.to_array()).collect(),
            order: self.order,
        }
    }

    fn node_at_or_before(&self, t: f64) -> usize {
        match self.times.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(k) => k,
            Err(0) => 0,
            Err(k) => k - 1,
        }
    }

    /// Largest `|Γ⁻¹Γ′ − Σ κⱼ 𝔞ⱼ|` over `n` interior points, with `Γ′` by
    /// central differences of the dense output.
    pub fn log_derivative_defect(&self, n: usize) -> f64 {
        let Some(profile) = &self.profile else {
            return f64::NAN;
        };
        let (t0, t1) = self.domain();
        let h = 1e-5 * (t1 - t0);
        let mut worst: f64 = 0.0;
        for k in 1..n {
            let t = t0 + (t1 - t0) * k as f64 / n as f64;
            let zp = self.spin_at(t + h);
            let zm = self.spin_at(t - h);
            let z = self.spin_at(t).inverse();
            let dl = z.left * (zp.left - zm.left).scale(0.5 / h);
            let dr = z.right * (zp.right - zm.right).scale(0.5 / h);
            let v = velocity(profile, t);
            worst = worst.max((dl - v.left).norm()).max((dr - v.right).norm());
        }
        worst
    }
}

impl FrameCurve for CurveSample {
    fn domain(&self) -> (f64, f64) {
        (self.times[0], *self.times.last().expect("nonempty sample"))
    }

    /// Dense output: one RK4 step from the nearest node at or before `t`
    /// (or linear interpolation when there is no curvature data).
    fn spin_at(&self, t: f64) -> SpinPoint {
        let k = self.node_at_or_before(t);
        let h = t - self.times[k];
        if h == 0.0 {
            return self.points[k];
        }
        match &self.profile {
            Some(p) => {
                let (l, r) = rk4_step(p, self.times[k], self.points[k], h);
                SpinPoint::new(l, r).normalize()
            }
            None => {
                let k1 = (k + 1).min(self.times.len() - 1);
                if k1 == k {
                    return self.points[k];
                }
                let s = h / (self.times[k1] - self.times[k]);
                let (a, b) = (self.points[k], self.points[k1]);
                SpinPoint::new(a.left.scale(1.0 - s) + b.left.scale(s), a.right.scale(1.0 - s) + b.right.scale(s))
                    .normalize()
            }
        }
    }

    fn grid(&self) -> Vec<f64> {
        self.times.clone()
    }
}
