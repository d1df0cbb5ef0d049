//! Total positivity in the translated chart `z₀ Lo¹`, `z₀ = −á ć`:
//! matrices `Q₀ L_y λ₂(t₁) λ₁(t₂) λ₃(t₃) λ₂(t₄)` with
//! `λ_i(t) = I + t E_{i+1,i}`.

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::BruhatError;
use crate::linalg::is_lower_unitriangular;

/// `Q₀ = Π(−á ć)`.
pub fn q0() -> Matrix4<f64> {
    Matrix4::new(
        0.0, -1.0, 0.0, 0.0, //
        1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, -1.0, //
        0.0, 0.0, 1.0, 0.0,
    )
}

/// `λ_i(t) = I + t E_{i+1,i}` (1-based `i`).
pub fn lambda_gen(i: usize, t: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m[(i, i - 1)] = t;
    m
}

/// `M = [[y₁,−1,0,0],[1,0,0,0],[0,0,y₂,−1],[0,0,1,0]] λ₂(t₁)λ₁(t₂)λ₃(t₃)λ₂(t₄)`.
pub fn pos_generate(y1: f64, y2: f64, t: [f64; 4]) -> Matrix4<f64> {
    let base = Matrix4::new(
        y1, -1.0, 0.0, 0.0, //
        1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, y2, -1.0, //
        0.0, 0.0, 1.0, 0.0,
    );
    base * lambda_gen(2, t[0]) * lambda_gen(1, t[1]) * lambda_gen(3, t[2]) * lambda_gen(2, t[3])
}

/// Result of [`pos_test`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PosClass {
    Pos,
    Neg,
    Neither,
}

/// The recovered parameters of a matrix in `z₀ Lo¹`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct PosFactorization {
    pub y1: f64,
    pub y2: f64,
    pub t: [f64; 4],
}

/// Solves `M = pos_generate(y₁, y₂, t)` for the parameters.
///
/// With `L = Q₀ᵀ M = (I + u E₂₁ + v E₄₃) λ₂(t₁)λ₁(t₂)λ₃(t₃)λ₂(t₄)` and
/// `u = −y₁`, `v = −y₂`, the entries are `l₂₁ = u + t₂`, `l₃₁ = t₁t₂`,
/// `l₃₂ = t₁ + t₄`, `l₄₁ = v t₁t₂`, `l₄₂ = t₃t₄ + v(t₁+t₄)`, `l₄₃ = v + t₃`;
/// they are solved in the order `v, t₃, t₄, t₁, t₂, u`.
pub fn pos_invert(m: &Matrix4<f64>) -> Result<PosFactorization, BruhatError> {
    let l = q0().transpose() * m;
    if !is_lower_unitriangular(&l, 1e-9) {
        return Err(BruhatError::FactorizationFailed(f64::NAN));
    }
    let (l21, l31, l32, l41, l42, l43) = (l[(1, 0)], l[(2, 0)], l[(2, 1)], l[(3, 0)], l[(3, 1)], l[(3, 2)]);
    let guard = |x: f64| -> Result<f64, BruhatError> {
        if x.abs() < 1e-14 {
            Err(BruhatError::FactorizationFailed(x))
        } else {
            Ok(x)
        }
    };
    let v = l41 / guard(l31)?;
    let t3 = l43 - v;
    let t4 = (l42 - v * l32) / guard(t3)?;
    let t1 = l32 - t4;
    let t2 = l31 / guard(t1)?;
    let u = l21 - t2;
    Ok(PosFactorization { y1: -u, y2: -v, t: [t1, t2, t3, t4] })
}

/// `Pos` if the recovered `t` are all positive, `Neg` if all negative.
pub fn pos_test(m: &Matrix4<f64>) -> Result<PosClass, BruhatError> {
    let f = pos_invert(m)?;
    Ok(if f.t.iter().all(|&x| x > 0.0) {
        PosClass::Pos
    } else if f.t.iter().all(|&x| x < 0.0) {
        PosClass::Neg
    } else {
        PosClass::Neither
    })
}
