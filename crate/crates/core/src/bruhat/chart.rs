//! The chart `Q: Lo¹ → U₁` (QR decomposition) and its inverse
//! `L: U₁ → Lo¹` (LU decomposition), and translated charts `z₀ Lo¹`.

use nalgebra::Matrix4;

use super::lift::track_matrix_path;
use crate::error::BruhatError;
use crate::linalg::{is_lower_unitriangular, lu_no_pivot};
use crate::spin4::{pi_matrix, ExactSpin, SpinPoint};

/// A lower triangular matrix with unit diagonal.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LowerUni(Matrix4<f64>);

impl LowerUni {
    /// Builds from the six strictly lower entries
    /// `(l21, l31, l32, l41, l42, l43)`.
    pub fn from_entries(e: [f64; 6]) -> Self {
        let mut m = Matrix4::identity();
        m[(1, 0)] = e[0];
        m[(2, 0)] = e[1];
        m[(2, 1)] = e[2];
        m[(3, 0)] = e[3];
        m[(3, 1)] = e[4];
        m[(3, 2)] = e[5];
        LowerUni(m)
    }

    /// Validates and wraps a matrix; the upper part must vanish exactly
    /// and the diagonal must equal 1.
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self, BruhatError> {
        if !is_lower_unitriangular(&m, 0.0) {
            return Err(BruhatError::InvalidRep("not lower unitriangular".into()));
        }
        Ok(LowerUni(m))
    }

    pub fn identity() -> Self {
        LowerUni(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn entries(&self) -> [f64; 6] {
        let m = &self.0;
        [m[(1, 0)], m[(2, 0)], m[(2, 1)], m[(3, 0)], m[(3, 1)], m[(3, 2)]]
    }

    pub fn max_abs_diff(&self, o: &LowerUni) -> f64 {
        (self.0 - o.0).amax()
    }
}

/// `Q(L)`: the point of `U₁` over the orthogonal factor of `L`, lifted
/// along the straight path from `I` inside `Lo¹`.
pub fn chart_q(l: &LowerUni) -> Result<SpinPoint, BruhatError> {
    let id = Matrix4::<f64>::identity();
    let target = l.0;
    track_matrix_path(|s| id + (target - id) * s, 0.0, 1.0, SpinPoint::IDENTITY)
}

/// `z₀ Q(L)`, the translated chart around `z₀ ∈ B̃4⁺`.
pub fn chart_q_at(z0: &ExactSpin, l: &LowerUni) -> Result<SpinPoint, BruhatError> {
    Ok(z0.to_f64() * chart_q(l)?)
}

/// The matrix `Π(z₀) L ∈ z₀ Lo¹` representing `chart_q_at(z₀, L)`.
pub fn translated_chart_matrix(z0: &ExactSpin, l: &LowerUni) -> Matrix4<f64> {
    pi_matrix(z0.to_f64()).0 * l.0
}

/// `L(z)`: the unit lower triangular factor of `Π(z) = L U` with `U`
/// upper triangular with positive diagonal, provided `z` (not `−z`) is
/// the chart image.
pub fn chart_l(z: SpinPoint) -> Result<LowerUni, BruhatError> {
    let q = pi_matrix(z).0;
    let (l, u) = lu_no_pivot(&q, 1e-12).ok_or(BruhatError::OutsideChart)?;
    if (0..4).any(|i| u[(i, i)] <= 0.0) {
        return Err(BruhatError::OutsideChart);
    }
    let mut l = l;
    for i in 0..4 {
        l[(i, i)] = 1.0;
        for j in i + 1..4 {
            l[(i, j)] = 0.0;
        }
    }
    let l = LowerUni(l);
    let back = chart_q(&l)?;
    if back.dist(z) > back.dist(-z) {
        return Err(BruhatError::OutsideChart);
    }
    Ok(l)
}
