//! Curves in `Spin4` seen through their frames `Π(Γ(t))`, and curves given
//! by an explicit matrix family whose Gram–Schmidt orthogonalization is
//! the frame.

use std::sync::Arc;

use nalgebra::Matrix4;

use crate::bruhat::track_matrix_path;
use crate::error::CurveError;
use crate::linalg::{gram_schmidt, lower_left_minors};
use crate::spin4::{pi_matrix, spin_preimage, SpinPoint};

/// A curve `Γ: [t₀, t₁] → Spin4` that can be evaluated anywhere.
pub trait FrameCurve: Send + Sync {
    /// The parameter interval `(t₀, t₁)`.
    fn domain(&self) -> (f64, f64);

    /// `Γ(t)`.
    fn spin_at(&self, t: f64) -> SpinPoint;

    /// `Π(Γ(t))`, or any matrix `Π(Γ(t))·R` with `R` upper triangular
    /// with positive diagonal (lower-left minors then keep their signs).
    fn frame_at(&self, t: f64) -> Matrix4<f64> {
        pi_matrix(self.spin_at(t)).0
    }

    /// Sample times used to bracket singular times (increasing, covering
    /// the domain).
    fn grid(&self) -> Vec<f64>;

    /// The three lower-left minors of the orthonormal frame at `t`.
    fn minors_at(&self, t: f64) -> [f64; 3] {
        lower_left_minors(&self.frame_at(t))
    }
}

/// Of `z` and `−z`, the one whose first coordinate of magnitude above
/// `1e−12` is positive.
pub fn canonical_sign(z: SpinPoint) -> SpinPoint {
    let first = z.to_array().into_iter().find(|c| c.abs() > 1e-12).unwrap_or(1.0);
    if first > 0.0 {
        z
    } else {
        -z
    }
}

/// Node-to-node increments below this are lifted without tracking.
const DIRECT_STEP: f64 = 0.05;

type MatrixFn = Arc<dyn Fn(f64) -> Matrix4<f64> + Send + Sync>;

/// A curve whose frame at `t` is the Gram–Schmidt orthogonalization of
/// the columns of `M(t)`, lifted continuously to `Spin4`.
#[derive(Clone)]
pub struct MatrixCurve {
    matrix: MatrixFn,
    times: Vec<f64>,
    lifts: Vec<SpinPoint>,
}

impl MatrixCurve {
    /// Lifts `t ↦ GS(M(t))` on `[t0, t1]` using `samples` equally spaced
    /// nodes. The lift starts at `start` (default: the canonical preimage
    /// of the frame at `t0`).
    pub fn new<F>(m: F, t0: f64, t1: f64, samples: usize, start: Option<SpinPoint>) -> Result<Self, CurveError>
    where
        F: Fn(f64) -> Matrix4<f64> + Send + Sync + 'static,
    {
        if !(t1 > t0) || samples < 2 {
            return Err(CurveError::Invalid(format!("bad interval [{t0}, {t1}] with {samples} samples")));
        }
        let matrix: MatrixFn = Arc::new(m);
        let times: Vec<f64> = (0..samples)
            .map(|k| if k + 1 == samples { t1 } else { t0 + (t1 - t0) * k as f64 / (samples - 1) as f64 })
            .collect();
        let first =
            gram_schmidt(&matrix(t0)).ok_or_else(|| CurveError::Invalid(format!("singular matrix at t = {t0}")))?;
        let base = canonical_sign(spin_preimage(&first));
        let mut current = match start {
            Some(s) => {
                if pi_matrix(s).0.relative_eq(&first, 1e-8, 1e-8) {
                    s
                } else {
                    return Err(CurveError::Invalid("start point does not cover the first frame".into()));
                }
            }
            None => base,
        };
        let mut lifts = Vec::with_capacity(samples);
        lifts.push(current);
        for w in times.windows(2) {
            // Direct sign matching suffices for small increments; larger
            // ones are tracked adaptively.
            let direct = gram_schmidt(&matrix(w[1])).map(|q| spin_preimage(&q).nearest_sign(current));
            current = match direct {
                Some(z) if z.dist(current) < DIRECT_STEP => z,
                _ => {
                    let f = matrix.clone();
                    track_matrix_path(move |s| f(s), w[0], w[1], current)?
                }
            };
            lifts.push(current);
        }
        Ok(MatrixCurve { matrix, times, lifts })
    }

    /// The (non-orthogonal) matrix `M(t)`.
    pub fn matrix_at(&self, t: f64) -> Matrix4<f64> {
        (self.matrix)(t)
    }

    fn nearest_node(&self, t: f64) -> usize {
        let (t0, t1) = self.domain();
        let n = self.times.len() - 1;
        let k = ((t - t0) / (t1 - t0) * n as f64).round();
        (k.max(0.0) as usize).min(n)
    }
}

impl FrameCurve for MatrixCurve {
    fn domain(&self) -> (f64, f64) {
        (self.times[0], *self.times.last().expect("at least two nodes"))
    }

    fn spin_at(&self, t: f64) -> SpinPoint {
        let reference = self.lifts[self.nearest_node(t)];
        match gram_schmidt(&self.matrix_at(t)) {
            Some(q) => spin_preimage(&q).nearest_sign(reference),
            None => reference,
        }
    }

    fn frame_at(&self, t: f64) -> Matrix4<f64> {
        gram_schmidt(&self.matrix_at(t)).unwrap_or_else(|| pi_matrix(self.spin_at(t)).0)
    }

    fn grid(&self) -> Vec<f64> {
        self.times.clone()
    }
}
