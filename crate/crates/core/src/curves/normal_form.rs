//! Normal form of convex curves in `Lo¹` near the stratum of itinerary
//! `η`: the times and corrections `(t₃₁, z₂, z₃)` determined by `x₃₂` and
//! the positive functions `β₁, β₂, β₃` of `Γ′ = ΓΛ`, the submersion
//! `φ = (x₄₃ − z₃, x₄₂ − z₂)`, and curves constructed on the slice
//! `N₂ = {x₂₁ = x₃₁ = x₄₁ = 0}`.

use std::sync::Arc;

use nalgebra::Matrix4;
use serde::Serialize;

use super::frame::MatrixCurve;
use super::profile::Kappa;
use crate::bruhat::{chart_q, LowerUni};
use crate::error::CurveError;

/// Gauss–Legendre nodes and weights on `[−1, 1]` (8 points).
const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Number of panels of the composite rule.
const PANELS: usize = 8;

/// `∫ₐᵇ f` by composite 8-point Gauss–Legendre quadrature.
pub fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let h = (b - a) / PANELS as f64;
    let mut sum = 0.0;
    for p in 0..PANELS {
        let mid = a + h * (p as f64 + 0.5);
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

/// The three positive functions of `Λ(t)`.
#[derive(Clone, Debug)]
pub struct Betas(pub [Kappa; 3]);

impl Betas {
    /// `β₁ = β₂ = β₃ ≡ 1`.
    pub fn ones() -> Self {
        Betas([Kappa::Constant(1.0), Kappa::Constant(1.0), Kappa::Constant(1.0)])
    }

    pub fn eval(&self, j: usize, t: f64) -> f64 {
        self.0[j].eval(t)
    }

    fn constants(&self) -> Option<[f64; 3]> {
        let mut out = [0.0; 3];
        for (slot, k) in out.iter_mut().zip(&self.0) {
            match k {
                Kappa::Constant(c) => *slot = *c,
                _ => return None,
            }
        }
        Some(out)
    }

    /// `Λ(t)`.
    pub fn lambda(&self, t: f64) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for j in 0..3 {
            m[(j + 1, j)] = self.eval(j, t);
        }
        m
    }
}

/// The normal form data at one value of `x₃₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalForm {
    pub x32: f64,
    pub t31: f64,
    pub z2: f64,
    pub z3: f64,
    /// `H = ∫_{t₃₁}^0 β₁(τ) ∫_{t₃₁}^τ β₂`.
    pub h: f64,
}

/// `g₃₂(t) = x₃₂ + ∫₀ᵗ β₂`.
fn g32(b: &Betas, x32: f64, t: f64) -> f64 {
    x32 + quad(|s| b.eval(1, s), 0.0, t)
}

/// `h₃₁(t) = ∫₀¹ β₁(st) g₃₂(st) ds`, which equals `g₃₁(t)/t` on `N₂`.
fn h31(b: &Betas, x32: f64, t: f64) -> f64 {
    quad(|s| b.eval(0, s * t) * g32(b, x32, s * t), 0.0, 1.0)
}

/// The unique zero `t₃₁` of `h₃₁`, by Newton's method safeguarded with
/// bisection inside an expanding bracket on the side `−sign(x₃₂)`.
fn find_t31(b: &Betas, x32: f64) -> Result<f64, CurveError> {
    if x32 == 0.0 {
        return Ok(0.0);
    }
    let dir = -x32.signum();
    let f = |t: f64| h31(b, x32, t);
    let f0 = f(0.0);
    let mut step = x32.abs().max(1e-12);
    let mut far = dir * step;
    while f(far).signum() == f0.signum() {
        step *= 2.0;
        far = dir * step;
        if step > 1e6 {
            return Err(CurveError::RootBracketFailed(format!("h31 keeps its sign up to t = {far:e} (x32 = {x32:e})")));
        }
    }
    let (mut lo, mut hi) = if dir > 0.0 { (0.0, far) } else { (far, 0.0) };
    let flo_sign = f(lo).signum();
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let ft = f(t);
        if ft == 0.0 {
            return Ok(t);
        }
        if ft.signum() == flo_sign {
            lo = t;
        } else {
            hi = t;
        }
        // g₃₁ = t h₃₁, so h₃₁′ = (β₁ g₃₂ − h₃₁)/t.
        let dh = (b.eval(0, t) * g32(b, x32, t) - ft) / t;
        let newton = t - ft / dh;
        let next = if dh.is_finite() && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - t).abs() <= 1e-15 * t.abs().max(1e-300) || hi - lo <= 1e-15 * t.abs() {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}

/// `(t₃₁, z₂, z₃)` for the given `x₃₂` and `β`'s.
pub fn eta_normal_form(b: &Betas, x32: f64) -> Result<NormalForm, CurveError> {
    for (j, k) in b.0.iter().enumerate() {
        for s in -10..=10 {
            let t = s as f64 * 0.1;
            if !(k.eval(t) > 0.0) {
                return Err(CurveError::NonPositiveCurvature { index: j + 1, t });
            }
        }
    }
    let t31 = find_t31(b, x32)?;
    if t31 == 0.0 {
        return Ok(NormalForm { x32, t31, z2: 0.0, z3: 0.0, h: 0.0 });
    }
    let int_b2 = |t: f64| quad(|s| b.eval(1, s), t31, t);
    let g43_0 = |t: f64| quad(|s| b.eval(2, s), 0.0, t);
    let g42_0 = |t: f64| quad(|s| b.eval(1, s) * g43_0(s), t31, t);
    let g41_0_at_0 = quad(|s| b.eval(0, s) * g42_0(s), t31, 0.0);
    let h = quad(|s| b.eval(0, s) * int_b2(s), t31, 0.0);
    let z3 = -g41_0_at_0 / h;
    let z2 = g42_0(0.0) + z3 * int_b2(0.0);
    Ok(NormalForm { x32, t31, z2, z3, h })
}

/// `φ(Γ) = (x₄₃ − z₃, x₄₂ − z₂)` for `Γ(0) = L`.
pub fn phi_map(l: &LowerUni, nf: &NormalForm) -> (f64, f64) {
    let e = l.entries();
    (e[5] - nf.z3, e[4] - nf.z2)
}

/// `v(x₁, x₂, x₃) = (x₁, x₂ + x₃ − |x₂ − x₃|)`.
pub fn v_map(x1: f64, x2: f64, x3: f64) -> (f64, f64) {
    (x1, x2 + x3 - (x2 - x3).abs())
}

/// The initial point `Γ(0) ∈ N₂` with `l₃₂ = x₃₂`, `l₄₂ = x₄₂`,
/// `l₄₃ = x₄₃` and the other strictly lower entries zero.
pub fn n2_initial(x32: f64, x42: f64, x43: f64) -> LowerUni {
    LowerUni::from_entries([0.0, 0.0, x32, 0.0, x42, x43])
}

/// The solution of `Γ′ = ΓΛ`, `Γ(0) = l`, as a function of `t`: exact
/// (`Γ(0) exp(tΛ)`, `Λ` nilpotent) for constant `β`'s, otherwise RK4 on
/// nodes of spacing at most `10⁻³` with a dense RK4 step.
pub fn lower_curve(l: LowerUni, b: &Betas, window: f64) -> Arc<dyn Fn(f64) -> Matrix4<f64> + Send + Sync> {
    let g0 = *l.matrix();
    if let Some(c) = b.constants() {
        let lam = Betas([Kappa::Constant(c[0]), Kappa::Constant(c[1]), Kappa::Constant(c[2])]).lambda(0.0);
        return Arc::new(move |t| {
            let a = lam * t;
            let a2 = a * a;
            g0 * (Matrix4::identity() + a + a2 / 2.0 + a2 * a / 6.0)
        });
    }
    let n = ((window / 1e-3).ceil() as usize).max(1);
    let h = window / n as f64;
    let step = |b: &Betas, t: f64, g: Matrix4<f64>, h: f64| {
        let k1 = g * b.lambda(t);
        let k2 = (g + k1 * (h / 2.0)) * b.lambda(t + h / 2.0);
        let k3 = (g + k2 * (h / 2.0)) * b.lambda(t + h / 2.0);
        let k4 = (g + k3 * h) * b.lambda(t + h);
        g + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
    };
    let mut forward = vec![g0];
    let mut backward = vec![g0];
    for k in 0..n {
        let last = forward[k];
        forward.push(step(b, h * k as f64, last, h));
        let last = backward[k];
        backward.push(step(b, -h * k as f64, last, -h));
    }
    let b = b.clone();
    Arc::new(move |t| {
        let (nodes, sign) = if t >= 0.0 { (&forward, 1.0) } else { (&backward, -1.0) };
        let k = ((t.abs() / h).floor() as usize).min(n);
        let t0 = sign * h * k as f64;
        step(&b, t0, nodes[k], t - t0)
    })
}

/// The curve `t ↦ Q(Γ(t))` on `[−window, window]` through `Γ(0) = l`,
/// lifted from the chart image of `Γ(−window)`.
pub fn n2_curve(l: LowerUni, b: &Betas, window: f64, samples: usize) -> Result<MatrixCurve, CurveError> {
    let g = lower_curve(l, b, window);
    let start = LowerUni::from_matrix(g(-window)).map_err(CurveError::Bruhat)?;
    let z0 = chart_q(&start)?;
    let f = g.clone();
    MatrixCurve::new(move |t| f(t), -window, window, samples, Some(z0))
}
