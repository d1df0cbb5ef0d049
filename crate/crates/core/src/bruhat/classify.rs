//! Classification of `SO4` matrices into Bruhat cells by the rank pattern
//! of lower-left blocks, and the signed factorization `Q = U₀ P U₁`.

use nalgebra::Matrix4;
use rand::Rng;

use crate::error::BruhatError;
use crate::linalg::{gram_schmidt, lower_left_block, singular_values};
use crate::spin4::{acute_of, pi_matrix};
use crate::weyl::Permutation;

/// Default numerical rank threshold.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// The cell of a matrix together with its factorization.
#[derive(Clone, Debug)]
pub struct CellClass {
    /// The permutation `ρ` with `Q ∈ Bru_ρ`.
    pub rho: Permutation,
    /// Signs of the signed permutation `P` in `Q = U₀ P U₁`.
    pub signs: [i8; 4],
    /// Confidence of the rank decisions: the smallest ratio between a
    /// decisive singular value and the threshold (kept values divided by
    /// `tol`, dropped values dividing `tol`).
    pub margin: f64,
    /// Upper triangular with positive diagonal.
    pub u0: Matrix4<f64>,
    /// Upper unitriangular.
    pub u1: Matrix4<f64>,
    /// The signed permutation matrix `P`.
    pub p: Matrix4<f64>,
}

/// Classifies `q` (orthogonal, determinant 1) into its Bruhat cell.
///
/// The rank of rows `i..4` × columns `1..j` equals `#{k ≥ i : k^ρ ≤ j}`.
/// Every singular value must lie outside the guard band `(tol/10, 10·tol)`.
pub fn classify_cell(q: &Matrix4<f64>, tol: f64) -> Result<CellClass, BruhatError> {
    // rank[i][j]: rows i..4, columns 0..j.
    let mut rank = [[0usize; 5]; 5];
    let mut margin = f64::INFINITY;
    for i in 0..4 {
        for j in 1..=4 {
            let sv = singular_values(&lower_left_block(q, i, j));
            let mut r = 0;
            for s in sv {
                if s > tol / 10.0 && s < tol * 10.0 {
                    return Err(BruhatError::RankAmbiguous { value: s, tol });
                }
                if s >= tol * 10.0 {
                    r += 1;
                    margin = margin.min(s / tol);
                } else {
                    margin = margin.min(tol / s.max(f64::MIN_POSITIVE));
                }
            }
            rank[i][j] = r;
        }
    }
    let mut one_line = [0u8; 4];
    for k in 0..4 {
        let mut found = None;
        for c in 0..4 {
            let d = rank[k][c + 1] as i64 - rank[k][c] as i64 - rank[k + 1][c + 1] as i64 + rank[k + 1][c] as i64;
            match d {
                0 => {}
                1 if found.is_none() => found = Some(c),
                _ => return Err(BruhatError::InvalidRankPattern),
            }
        }
        one_line[k] = found.ok_or(BruhatError::InvalidRankPattern)? as u8 + 1;
    }
    let rho = Permutation::from_one_line(one_line).ok_or(BruhatError::InvalidRankPattern)?;
    let (signs, u0, u1, p) = signed_factorization(q, &rho)?;
    Ok(CellClass { rho, signs, margin, u0, u1, p })
}

type Factorization = ([i8; 4], Matrix4<f64>, Matrix4<f64>, Matrix4<f64>);

/// Eliminates `q` to a signed permutation using the known pivots
/// `(k, k^ρ)`, bottom row first: columns to the right of each pivot are
/// cleared by column operations, entries above it by row operations.
fn signed_factorization(q: &Matrix4<f64>, rho: &Permutation) -> Result<Factorization, BruhatError> {
    let mut a = *q;
    let mut el = Matrix4::<f64>::identity();
    let mut er = Matrix4::<f64>::identity();
    for k in (0..4).rev() {
        let p = rho.apply(k);
        let piv = a[(k, p)];
        if piv.abs() < 1e-14 {
            return Err(BruhatError::InvalidRankPattern);
        }
        for l in p + 1..4 {
            let f = a[(k, l)] / piv;
            if f != 0.0 {
                for r in 0..4 {
                    a[(r, l)] -= f * a[(r, p)];
                    er[(r, l)] -= f * er[(r, p)];
                }
            }
        }
        for r in 0..k {
            let f = a[(r, p)] / piv;
            if f != 0.0 {
                for c in 0..4 {
                    a[(r, c)] -= f * a[(k, c)];
                    el[(r, c)] -= f * el[(k, c)];
                }
            }
        }
    }
    let mut signs = [0i8; 4];
    let mut pmat = Matrix4::zeros();
    let mut d = Matrix4::zeros();
    for k in 0..4 {
        let v = a[(k, rho.apply(k))];
        signs[k] = if v > 0.0 { 1 } else { -1 };
        pmat[(k, rho.apply(k))] = signs[k] as f64;
        d[(k, k)] = v.abs();
    }
    let el_inv = el.try_inverse().ok_or(BruhatError::InvalidRankPattern)?;
    let er_inv = er.try_inverse().ok_or(BruhatError::InvalidRankPattern)?;
    Ok((signs, el_inv * d, er_inv, pmat))
}

/// A random upper triangular matrix with diagonal in `[0.5, 2]` and
/// off-diagonal entries in `[-scale, scale]`.
pub fn random_upper<R: Rng>(rng: &mut R, scale: f64) -> Matrix4<f64> {
    let mut u = Matrix4::zeros();
    for i in 0..4 {
        u[(i, i)] = rng.gen_range(0.5..2.0);
        for j in i + 1..4 {
            u[(i, j)] = if scale > 0.0 { rng.gen_range(-scale..scale) } else { 0.0 };
        }
    }
    u
}

/// A random point of `Bru_ρ ⊂ SO4`: Gram–Schmidt of `U₀ Π(acute ρ) U₁`.
pub fn random_cell_matrix<R: Rng>(rho: &Permutation, rng: &mut R) -> Matrix4<f64> {
    let p = pi_matrix(acute_of(rho).to_f64()).0;
    let u0 = random_upper(rng, 1.0);
    let u1 = random_upper(rng, 1.0);
    gram_schmidt(&(u0 * p * u1)).expect("product of invertible matrices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin4::{acute_generator, ExactSpin};
    use crate::weyl::Generator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_is_in_the_trivial_cell() {
        let c = classify_cell(&Matrix4::identity(), DEFAULT_RANK_TOL).unwrap();
        assert!(c.rho.is_identity());
        assert_eq!(c.signs, [1, 1, 1, 1]);
    }

    #[test]
    fn q0_is_in_cell_ac() {
        let z0: ExactSpin = -(acute_generator(Generator::A) * acute_generator(Generator::C));
        let q0 = pi_matrix(z0.to_f64()).0;
        let expected = Matrix4::new(
            0.0, -1.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0,
        );
        assert!((q0 - expected).amax() < 1e-15);
        let c = classify_cell(&q0, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(c.rho.name(), "ac");
    }

    #[test]
    fn acute_representatives_classify_to_themselves() {
        for sigma in Permutation::all() {
            let q = pi_matrix(acute_of(sigma).to_f64()).0;
            assert_eq!(classify_cell(&q, DEFAULT_RANK_TOL).unwrap().rho, *sigma);
        }
    }

    #[test]
    fn construct_then_classify_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for rho in Permutation::all() {
            for _ in 0..20 {
                let q = random_cell_matrix(rho, &mut rng);
                let c = classify_cell(&q, DEFAULT_RANK_TOL).unwrap();
                assert_eq!(c.rho, *rho);
                assert!((c.u0 * c.p * c.u1 - q).amax() < 1e-10);
                for i in 0..4 {
                    assert!(c.u0[(i, i)] > 0.0);
                    assert!((c.u1[(i, i)] - 1.0).abs() < 1e-12);
                    for j in 0..i {
                        assert!(c.u0[(i, j)].abs() < 1e-10 && c.u1[(i, j)].abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn guard_band_is_reported() {
        let mut q = Matrix4::identity();
        let s = 3e-8f64;
        let c = (1.0 - s * s).sqrt();
        q[(2, 2)] = c;
        q[(2, 3)] = -s;
        q[(3, 2)] = s;
        q[(3, 3)] = c;
        assert!(matches!(classify_cell(&q, DEFAULT_RANK_TOL), Err(BruhatError::RankAmbiguous { .. })));
    }
}
