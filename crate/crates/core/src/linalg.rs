//! Small dense linear algebra helpers on 4×4 matrices.

use nalgebra::{DMatrix, Matrix4};

/// `M = Q R` with `R` upper triangular with positive diagonal.
///
/// Returns `None` if `M` is singular (a diagonal entry of `R` below
/// `1e-300`).
pub fn qr_positive(m: &Matrix4<f64>) -> Option<(Matrix4<f64>, Matrix4<f64>)> {
    let qr = m.qr();
    let mut q = qr.q();
    let mut r = qr.r();
    for i in 0..4 {
        let d = r[(i, i)];
        if d.abs() < 1e-300 || !d.is_finite() {
            return None;
        }
        if d < 0.0 {
            for k in 0..4 {
                q[(k, i)] = -q[(k, i)];
                r[(i, k)] = -r[(i, k)];
            }
        }
    }
    Some((q, r))
}

/// The orthogonal factor of [`qr_positive`], i.e. Gram–Schmidt applied to
/// the columns of `M`.
pub fn gram_schmidt(m: &Matrix4<f64>) -> Option<Matrix4<f64>> {
    qr_positive(m).map(|(q, _)| q)
}

/// Determinant of the lower-left `j × j` block (rows `4−j..4`,
/// columns `0..j`), `j ∈ {1,2,3}`.
pub fn lower_left_minor(m: &Matrix4<f64>, j: usize) -> f64 {
    let block = lower_left_block(m, 4 - j, j);
    block.determinant()
}

/// The three lower-left minors `(m₁, m₂, m₃)`.
pub fn lower_left_minors(m: &Matrix4<f64>) -> [f64; 3] {
    [lower_left_minor(m, 1), lower_left_minor(m, 2), lower_left_minor(m, 3)]
}

/// Rows `row0..4`, columns `0..cols` (0-based) as a dynamic matrix.
pub fn lower_left_block(m: &Matrix4<f64>, row0: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(4 - row0, cols, |r, c| m[(row0 + r, c)])
}

/// Singular values of a dynamic matrix in decreasing order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// `M = L U` without pivoting, `L` unit lower triangular. `None` if a
/// pivot vanishes (below `tol` in absolute value).
pub fn lu_no_pivot(m: &Matrix4<f64>, tol: f64) -> Option<(Matrix4<f64>, Matrix4<f64>)> {
    let mut u = *m;
    let mut l = Matrix4::identity();
    for k in 0..4 {
        let p = u[(k, k)];
        if p.abs() < tol {
            return None;
        }
        for i in k + 1..4 {
            let f = u[(i, k)] / p;
            l[(i, k)] = f;
            for j in 0..4 {
                u[(i, j)] -= f * u[(k, j)];
            }
            u[(i, k)] = 0.0;
        }
    }
    Some((l, u))
}

/// Whether `m` is lower triangular with unit diagonal, to `tol`.
pub fn is_lower_unitriangular(m: &Matrix4<f64>, tol: f64) -> bool {
    (0..4).all(|i| (m[(i, i)] - 1.0).abs() <= tol && (i + 1..4).all(|j| m[(i, j)].abs() <= tol))
}
