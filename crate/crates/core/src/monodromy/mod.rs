//! Monodromy of the periodic linear equation
//! `y⁗ + c₂(t) y″ + c₁(t) y′ + c₀(t) y = 0`: a triple of 1-periodic
//! coefficients is positive when every solution is periodic (`Φ(1) = I`)
//! and negative when every solution is antiperiodic (`Φ(1) = −I`).

mod expr;

use std::fmt;
use std::sync::Arc;

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::MonodromyError;

pub use expr::Expr;

type Coefficient = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Number of sample points of the periodicity check.
const PERIOD_SAMPLES: usize = 64;
/// Largest allowed `|c(t + 1) − c(t)|`.
pub const PERIOD_TOL: f64 = 1e-10;

/// A triple `(c₀, c₁, c₂)` of 1-periodic coefficients.
#[derive(Clone)]
pub struct CoefficientTriple {
    coeffs: [Coefficient; 3],
    labels: [String; 3],
}

impl fmt::Debug for CoefficientTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientTriple").field("labels", &self.labels).finish()
    }
}

impl CoefficientTriple {
    /// Wraps three functions, checking periodicity on sample points.
    pub fn new(coeffs: [Coefficient; 3], labels: [String; 3]) -> Result<Self, MonodromyError> {
        let mut defect: f64 = 0.0;
        for c in &coeffs {
            for k in 0..PERIOD_SAMPLES {
                let t = k as f64 / PERIOD_SAMPLES as f64;
                let (a, b) = (c(t), c(t + 1.0));
                if !a.is_finite() || !b.is_finite() {
                    return Err(MonodromyError::NotPeriodic(f64::INFINITY));
                }
                defect = defect.max((b - a).abs());
            }
        }
        if defect >= PERIOD_TOL {
            return Err(MonodromyError::NotPeriodic(defect));
        }
        Ok(CoefficientTriple { coeffs, labels })
    }

    pub fn constant(c0: f64, c1: f64, c2: f64) -> Self {
        let k = |x: f64| -> Coefficient { Arc::new(move |_| x) };
        CoefficientTriple { coeffs: [k(c0), k(c1), k(c2)], labels: [c0.to_string(), c1.to_string(), c2.to_string()] }
    }

    /// Parses three coefficient expressions (see [`Expr`]).
    pub fn parse(c0: &str, c1: &str, c2: &str) -> Result<Self, MonodromyError> {
        let mut coeffs: Vec<Coefficient> = Vec::with_capacity(3);
        for s in [c0, c1, c2] {
            let e: Expr = s.parse()?;
            coeffs.push(Arc::new(move |t| e.eval(t)));
        }
        let coeffs: [Coefficient; 3] = coeffs.try_into().unwrap_or_else(|_| unreachable!());
        CoefficientTriple::new(coeffs, [c0.to_string(), c1.to_string(), c2.to_string()])
    }

    pub fn labels(&self) -> &[String; 3] {
        &self.labels
    }

    /// The companion matrix of the first-order system in
    /// `(y, y′, y″, y‴)`.
    pub fn companion(&self, t: f64) -> Matrix4<f64> {
        let [c0, c1, c2] = &self.coeffs;
        Matrix4::new(
            0.0,
            1.0,
            0.0,
            0.0, //
            0.0,
            0.0,
            1.0,
            0.0, //
            0.0,
            0.0,
            0.0,
            1.0, //
            -c0(t),
            -c1(t),
            -c2(t),
            0.0,
        )
    }
}

/// Step-size control of the Dormand–Prince integrator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyOptions {
    /// Local error tolerance per step, relative to `1 + |Φ|`.
    pub tol: f64,
    /// Start of the integration window; the window has length `periods`.
    pub start: f64,
    pub periods: usize,
    pub max_steps: usize,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions { tol: 1e-12, start: 0.0, periods: 1, max_steps: 1_000_000 }
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// One Dormand–Prince step of `Φ′ = A(t) Φ`; returns the fifth-order
/// solution and the scaled error estimate.
fn dp_step(triple: &CoefficientTriple, t: f64, y: &Matrix4<f64>, h: f64, tol: f64) -> (Matrix4<f64>, f64) {
    let mut k = [Matrix4::zeros(); 7];
    for s in 0..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            if A[s][j] != 0.0 {
                ys += kj * (h * A[s][j]);
            }
        }
        k[s] = triple.companion(t + C[s] * h) * ys;
    }
    let mut y5 = *y;
    let mut e = Matrix4::zeros();
    for s in 0..7 {
        y5 += k[s] * (h * B5[s]);
        e += k[s] * (h * (B5[s] - B4[s]));
    }
    let err = e
        .iter()
        .zip(y.iter().zip(y5.iter()))
        .fold(0.0f64, |m, (ei, (a, b))| m.max(ei.abs() / (tol * (1.0 + a.abs().max(b.abs())))));
    (y5, err)
}

/// The fundamental solution over the window: `Φ(start + periods)` with
/// `Φ(start) = I`.
pub fn monodromy_matrix(triple: &CoefficientTriple, opts: &MonodromyOptions) -> Result<Matrix4<f64>, MonodromyError> {
    let t_end = opts.start + opts.periods as f64;
    let mut t = opts.start;
    let mut y = Matrix4::identity();
    let mut h = 1e-3;
    let mut steps = 0;
    while t < t_end {
        if steps >= opts.max_steps {
            return Err(MonodromyError::IntegrationFailed { t, reason: format!("more than {} steps", opts.max_steps) });
        }
        steps += 1;
        let last = t + h >= t_end;
        let step = if last { t_end - t } else { h };
        let (y_new, err) = dp_step(triple, t, &y, step, opts.tol);
        if !err.is_finite() || y_new.iter().any(|x| !x.is_finite()) {
            return Err(MonodromyError::IntegrationFailed { t, reason: "non-finite state".into() });
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        if err <= 1.0 {
            t = if last { t_end } else { t + step };
            y = y_new;
            h = step * factor;
        } else {
            h = step * factor;
            if h < 1e-14 * (1.0 + t.abs()) {
                return Err(MonodromyError::IntegrationFailed { t, reason: "step size underflow".into() });
            }
        }
    }
    Ok(y)
}

/// The class of a triple.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleClass {
    Positive,
    Negative,
    Neither,
}

impl fmt::Display for TripleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleClass::Positive => "positive",
            TripleClass::Negative => "negative",
            TripleClass::Neither => "neither",
        })
    }
}

/// A classification with its residuals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub class: TripleClass,
    /// `‖Φ(1) − I‖_F`.
    pub residual_plus: f64,
    /// `‖Φ(1) + I‖_F`.
    pub residual_minus: f64,
    pub det: f64,
    pub monodromy: [[f64; 4]; 4],
}

impl Classification {
    /// The residual of the reported class (the smaller one for
    /// `neither`).
    pub fn residual(&self) -> f64 {
        match self.class {
            TripleClass::Positive => self.residual_plus,
            TripleClass::Negative => self.residual_minus,
            TripleClass::Neither => self.residual_plus.min(self.residual_minus),
        }
    }
}

/// Default Frobenius-norm tolerance of [`classify_triple`].
pub const CLASSIFY_TOL: f64 = 1e-6;

/// Positive iff `‖Φ(1) − I‖ < tol`, negative iff `‖Φ(1) + I‖ < tol`.
pub fn classify_triple(
    triple: &CoefficientTriple,
    tol: f64,
    opts: &MonodromyOptions,
) -> Result<Classification, MonodromyError> {
    let phi = monodromy_matrix(triple, opts)?;
    let id = Matrix4::<f64>::identity();
    let residual_plus = (phi - id).norm();
    let residual_minus = (phi + id).norm();
    let class = if residual_plus < tol {
        TripleClass::Positive
    } else if residual_minus < tol {
        TripleClass::Negative
    } else {
        TripleClass::Neither
    };
    let mut monodromy = [[0.0; 4]; 4];
    for (r, row) in monodromy.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = phi[(r, c)];
        }
    }
    Ok(Classification { class, residual_plus, residual_minus, det: phi.determinant(), monodromy })
}
