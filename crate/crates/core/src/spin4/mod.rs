//! `Spin4 = S³ × S³` as pairs of unit quaternions, the covering map
//! `Π(z_l, z_r) w = z_l w z_r⁻¹` onto `SO4`, and the one-parameter
//! subgroups `α_j(θ) = exp(θ 𝔞_j)`.

mod exact;
mod groups;

pub use exact::{ExactQuat, ExactSpin, Surd};
pub use groups::{
    acute_generator, acute_of, acute_of_word, btilde_group, central_element, grave_of, hat_generator, hat_of,
    quat4_group, signed_permutation, BtildeElement, BtildeGroup, Quat4Group,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Matrix4, Vector4};
use serde::{Deserialize, Serialize};

/// A real quaternion `w + x i + y j + z k`.
#[derive(Copy, Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.w, self.x, self.y, self.z)
    }

    /// Pure imaginary quaternion `x i + y j + z k`.
    pub fn imaginary(x: f64, y: f64, z: f64) -> Self {
        Quaternion::new(0.0, x, y, z)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn dot(self, o: Quaternion) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn normalize(self) -> Self {
        self.scale(1.0 / self.norm())
    }

    pub fn inverse(self) -> Self {
        self.conj().scale(1.0 / self.norm_sqr())
    }

    /// Exponential of a pure imaginary quaternion (the real part is ignored).
    pub fn exp_imaginary(self) -> Self {
        let v = Quaternion::imaginary(self.x, self.y, self.z);
        let theta = v.norm();
        if theta < 1e-300 {
            return Quaternion::ONE;
        }
        let s = theta.sin() / theta;
        Quaternion::new(theta.cos(), v.x * s, v.y * s, v.z * s)
    }

    pub fn is_imaginary(self) -> bool {
        self.w == 0.0
    }

    pub fn max_abs_diff(self, o: Quaternion) -> f64 {
        (self - o).to_array().iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12}, {:.12}, {:.12}, {:.12})", self.w, self.x, self.y, self.z)
    }
}

/// A point `(z_l, z_r)` of `Spin4 = S³ × S³`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinPoint {
    pub left: Quaternion,
    pub right: Quaternion,
}

impl SpinPoint {
    pub const IDENTITY: SpinPoint = SpinPoint { left: Quaternion::ONE, right: Quaternion::ONE };

    pub fn new(left: Quaternion, right: Quaternion) -> Self {
        SpinPoint { left, right }
    }

    pub fn normalize(self) -> Self {
        SpinPoint::new(self.left.normalize(), self.right.normalize())
    }

    pub fn inverse(self) -> Self {
        SpinPoint::new(self.left.conj(), self.right.conj())
    }

    /// Largest deviation of the component norms from 1.
    pub fn unit_defect(self) -> f64 {
        (self.left.norm() - 1.0).abs().max((self.right.norm() - 1.0).abs())
    }

    /// Euclidean distance in `H × H`.
    pub fn dist(self, o: SpinPoint) -> f64 {
        ((self.left - o.left).norm_sqr() + (self.right - o.right).norm_sqr()).sqrt()
    }

    pub fn max_abs_diff(self, o: SpinPoint) -> f64 {
        self.left.max_abs_diff(o.left).max(self.right.max_abs_diff(o.right))
    }

    /// From `[l.w, l.x, l.y, l.z, r.w, r.x, r.y, r.z]`.
    pub fn from_array(a: [f64; 8]) -> Self {
        SpinPoint::new(Quaternion::new(a[0], a[1], a[2], a[3]), Quaternion::new(a[4], a[5], a[6], a[7]))
    }

    pub fn to_array(self) -> [f64; 8] {
        let l = self.left.to_array();
        let r = self.right.to_array();
        [l[0], l[1], l[2], l[3], r[0], r[1], r[2], r[3]]
    }

    /// Of `self` and `-self`, the one closer to `reference`.
    pub fn nearest_sign(self, reference: SpinPoint) -> SpinPoint {
        if self.dist(reference) <= (-self).dist(reference) {
            self
        } else {
            -self
        }
    }
}

impl Mul for SpinPoint {
    type Output = SpinPoint;

    /// Componentwise product, renormalized.
    fn mul(self, o: SpinPoint) -> SpinPoint {
        spin_mul(self, o)
    }
}

impl Neg for SpinPoint {
    type Output = SpinPoint;

    fn neg(self) -> SpinPoint {
        SpinPoint::new(-self.left, -self.right)
    }
}

impl fmt::Display for SpinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

/// Group law of `Spin4`: componentwise quaternion product, renormalized.
pub fn spin_mul(a: SpinPoint, b: SpinPoint) -> SpinPoint {
    SpinPoint::new(a.left * b.left, a.right * b.right).normalize()
}

/// An element `(u_l, u_r)` of the Lie algebra `spin4`: a pair of pure
/// imaginary quaternions.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinTangent {
    pub left: Quaternion,
    pub right: Quaternion,
}

impl SpinTangent {
    /// `𝔞₁ = ½(i, −i)`.
    pub const A1: SpinTangent =
        SpinTangent { left: Quaternion::new(0.0, 0.5, 0.0, 0.0), right: Quaternion::new(0.0, -0.5, 0.0, 0.0) };
    /// `𝔞₂ = ½(k, k)`: the sign making `dΠ(𝔞₂) = e₃e₂ᵀ − e₂e₃ᵀ` and
    /// `Π(b̂) = diag(1, −1, −1, 1)`.
    pub const A2: SpinTangent =
        SpinTangent { left: Quaternion::new(0.0, 0.0, 0.0, 0.5), right: Quaternion::new(0.0, 0.0, 0.0, 0.5) };
    /// `𝔞₃ = ½(i, i)`.
    pub const A3: SpinTangent =
        SpinTangent { left: Quaternion::new(0.0, 0.5, 0.0, 0.0), right: Quaternion::new(0.0, 0.5, 0.0, 0.0) };
    pub const ZERO: SpinTangent = SpinTangent { left: Quaternion::ZERO, right: Quaternion::ZERO };

    /// Builds a tangent vector, dropping the real parts.
    pub fn new(left: Quaternion, right: Quaternion) -> Self {
        SpinTangent {
            left: Quaternion::imaginary(left.x, left.y, left.z),
            right: Quaternion::imaginary(right.x, right.y, right.z),
        }
    }

    /// `𝔞_j` for `j ∈ {1,2,3}`.
    pub fn generator(j: usize) -> SpinTangent {
        match j {
            1 => Self::A1,
            2 => Self::A2,
            3 => Self::A3,
            _ => panic!("generator index {j} outside 1..=3"),
        }
    }

    /// `Λ = 𝔞₁ + 𝔞₂ + 𝔞₃`.
    pub fn lambda() -> SpinTangent {
        Self::combination([1.0, 1.0, 1.0])
    }

    /// `Σ κ_j 𝔞_j`.
    pub fn combination(kappa: [f64; 3]) -> SpinTangent {
        let mut left = Quaternion::ZERO;
        let mut right = Quaternion::ZERO;
        for (j, k) in kappa.iter().enumerate() {
            let g = Self::generator(j + 1);
            left = left + g.left.scale(*k);
            right = right + g.right.scale(*k);
        }
        SpinTangent { left, right }
    }

    pub fn scale(self, s: f64) -> Self {
        SpinTangent { left: self.left.scale(s), right: self.right.scale(s) }
    }

    /// The derivative `dΠ(v)`: `w ↦ u_l w − w u_r`.
    pub fn d_pi(self) -> Matrix4<f64> {
        let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        let mut m = Matrix4::zeros();
        for (c, e) in basis.iter().enumerate() {
            let col = (self.left * *e - *e * self.right).to_array();
            for r in 0..4 {
                m[(r, c)] = col[r];
            }
        }
        m
    }
}

/// A matrix in `SO4`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Rotation4(pub Matrix4<f64>);

impl Rotation4 {
    pub fn identity() -> Self {
        Rotation4(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Largest entry of `QᵀQ − I`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.0.transpose() * self.0 - Matrix4::identity()).amax()
    }

    pub fn is_rotation(&self, tol: f64) -> bool {
        self.orthogonality_defect() < tol && (self.0.determinant() - 1.0).abs() < tol
    }

    /// One of the two preimages under `Π`; the other is its negative.
    pub fn spin_preimage(&self) -> SpinPoint {
        spin_preimage(&self.0)
    }
}

impl Mul for Rotation4 {
    type Output = Rotation4;

    fn mul(self, o: Rotation4) -> Rotation4 {
        Rotation4(self.0 * o.0)
    }
}

/// Matrix of `w ↦ z_l w z_r⁻¹` in the basis `(1, i, j, k)`.
pub fn pi_matrix(z: SpinPoint) -> Rotation4 {
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let rinv = z.right.inverse();
    let mut m = Matrix4::zeros();
    for (c, e) in basis.iter().enumerate() {
        let col = (z.left * *e * rinv).to_array();
        for r in 0..4 {
            m[(r, c)] = col[r];
        }
    }
    Rotation4(m)
}

/// `α_j(θ) = exp(θ 𝔞_j)` in closed form.
pub fn alpha(j: usize, theta: f64) -> SpinPoint {
    exp_tangent(SpinTangent::generator(j), theta)
}

/// Componentwise exponential `exp(t v)`.
pub fn exp_tangent(v: SpinTangent, t: f64) -> SpinPoint {
    SpinPoint::new(v.left.scale(t).exp_imaginary(), v.right.scale(t).exp_imaginary())
}

/// Preimage under `Π` of a matrix close to `SO4`.
///
/// With `p = R·1`, the map `w ↦ R(w) p̄` is conjugation by `z_l`, from which
/// `z_l` is read off; then `z_r = p̄ z_l`.
pub fn spin_preimage(r: &Matrix4<f64>) -> SpinPoint {
    let col = |c: usize| Quaternion::new(r[(0, c)], r[(1, c)], r[(2, c)], r[(3, c)]);
    let p = col(0).normalize();
    let pbar = p.conj();
    let mut m = Matrix3::zeros();
    for c in 0..3 {
        let q = col(c + 1) * pbar;
        m[(0, c)] = q.x;
        m[(1, c)] = q.y;
        m[(2, c)] = q.z;
    }
    let left = quaternion_from_rotation3(&m).normalize();
    let right = (pbar * left).normalize();
    SpinPoint::new(left, right)
}

/// Shepperd's method: the unit quaternion `q` (up to sign) whose
/// conjugation `v ↦ q v q̄` has matrix `m`.
fn quaternion_from_rotation3(m: &Matrix3<f64>) -> Quaternion {
    let tr = m[(0, 0)] + m[(1, 1)] + m[(2, 2)];
    let diag = [m[(0, 0)], m[(1, 1)], m[(2, 2)]];
    let (best, _) =
        [tr, diag[0], diag[1], diag[2]]
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    match best {
        0 => {
            let w = (1.0 + tr).max(0.0).sqrt() / 2.0;
            let f = 4.0 * w;
            Quaternion::new(w, (m[(2, 1)] - m[(1, 2)]) / f, (m[(0, 2)] - m[(2, 0)]) / f, (m[(1, 0)] - m[(0, 1)]) / f)
        }
        1 => {
            let x = (1.0 + m[(0, 0)] - m[(1, 1)] - m[(2, 2)]).max(0.0).sqrt() / 2.0;
            let f = 4.0 * x;
            Quaternion::new((m[(2, 1)] - m[(1, 2)]) / f, x, (m[(0, 1)] + m[(1, 0)]) / f, (m[(0, 2)] + m[(2, 0)]) / f)
        }
        2 => {
            let y = (1.0 - m[(0, 0)] + m[(1, 1)] - m[(2, 2)]).max(0.0).sqrt() / 2.0;
            let f = 4.0 * y;
            Quaternion::new((m[(0, 2)] - m[(2, 0)]) / f, (m[(0, 1)] + m[(1, 0)]) / f, y, (m[(1, 2)] + m[(2, 1)]) / f)
        }
        _ => {
            let z = (1.0 - m[(0, 0)] - m[(1, 1)] + m[(2, 2)]).max(0.0).sqrt() / 2.0;
            let f = 4.0 * z;
            Quaternion::new((m[(1, 0)] - m[(0, 1)]) / f, (m[(0, 2)] + m[(2, 0)]) / f, (m[(1, 2)] + m[(2, 1)]) / f, z)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_unit(rng: &mut ChaCha8Rng) -> Quaternion {
        loop {
            let q = Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if q.norm() > 0.1 {
                return q.normalize();
            }
        }
    }

    fn random_spin(rng: &mut ChaCha8Rng) -> SpinPoint {
        SpinPoint::new(random_unit(rng), random_unit(rng))
    }

    /// Scaling-and-squaring matrix exponential, used as an independent oracle.
    fn expm(a: &Matrix4<f64>) -> Matrix4<f64> {
        let norm = a.amax() * 4.0;
        let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let b = a / 2f64.powi(s);
        let mut term = Matrix4::identity();
        let mut sum = Matrix4::identity();
        for k in 1..30 {
            term = term * b / k as f64;
            sum += term;
        }
        for _ in 0..s {
            sum = sum * sum;
        }
        sum
    }

    #[test]
    fn centre_products() {
        let one = SpinPoint::IDENTITY;
        let minus = -one;
        assert_eq!(spin_mul(one, minus), minus);
        let ahat = SpinPoint::new(Quaternion::I, -Quaternion::I);
        let chat = SpinPoint::new(Quaternion::I, Quaternion::I);
        let ac = spin_mul(ahat, chat);
        assert!(ac.max_abs_diff(SpinPoint::new(-Quaternion::ONE, Quaternion::ONE)) < 1e-15);
        assert!(spin_mul(ahat, ahat).max_abs_diff(minus) < 1e-15);
    }

    #[test]
    fn pi_of_hats() {
        let ahat = SpinPoint::new(Quaternion::I, -Quaternion::I);
        let d = pi_matrix(ahat).0;
        assert!((d - Matrix4::from_diagonal(&Vector4::new(-1.0, -1.0, 1.0, 1.0))).amax() < 1e-15);
        let bhat = alpha(2, PI);
        let d = pi_matrix(bhat).0;
        assert!((d - Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, 1.0))).amax() < 1e-15);
        assert!((pi_matrix(SpinPoint::IDENTITY).0 - Matrix4::identity()).amax() == 0.0);
    }

    #[test]
    fn d_pi_of_generators_are_elementary_rotations() {
        for j in 1..=3 {
            let m = SpinTangent::generator(j).d_pi();
            let mut expected = Matrix4::zeros();
            expected[(j, j - 1)] = 1.0;
            expected[(j - 1, j)] = -1.0;
            assert!((m - expected).amax() < 1e-15, "generator {j}: {m}");
        }
    }

    #[test]
    fn alpha_values() {
        let ahat = alpha(1, PI);
        assert!(ahat.max_abs_diff(SpinPoint::new(Quaternion::I, -Quaternion::I)) < 1e-15);
        for j in 1..=3 {
            assert_eq!(alpha(j, 0.0), SpinPoint::IDENTITY);
            let acute = alpha(j, PI / 2.0);
            assert!(spin_mul(acute, acute).max_abs_diff(alpha(j, PI)) < 1e-15);
        }
    }

    #[test]
    fn alpha_is_a_one_parameter_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let j = rng.gen_range(1..=3);
            let a = rng.gen_range(-10.0..10.0);
            let b = rng.gen_range(-10.0..10.0);
            let lhs = alpha(j, a + b);
            let rhs = spin_mul(alpha(j, a), alpha(j, b));
            assert!(lhs.max_abs_diff(rhs) < 1e-12);
        }
    }

    #[test]
    fn exp_tangent_matches_matrix_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let v = SpinTangent::new(
                Quaternion::imaginary(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                Quaternion::imaginary(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
            let t = rng.gen_range(-3.0..3.0);
            let lhs = pi_matrix(exp_tangent(v, t)).0;
            let rhs = expm(&(v.d_pi() * t));
            assert!((lhs - rhs).amax() < 1e-10);
        }
        assert_eq!(exp_tangent(SpinTangent::ZERO, 3.0), SpinPoint::IDENTITY);
        assert!(exp_tangent(SpinTangent::A1, PI).max_abs_diff(alpha(1, PI)) < 1e-15);
    }

    #[test]
    fn pi_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = random_spin(&mut rng);
            let b = random_spin(&mut rng);
            let lhs = pi_matrix(spin_mul(a, b)).0;
            let rhs = pi_matrix(a).0 * pi_matrix(b).0;
            assert!((lhs - rhs).amax() < 1e-10);
        }
    }

    #[test]
    fn preimage_inverts_pi() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let z = random_spin(&mut rng);
            let p = pi_matrix(z).spin_preimage();
            let p = p.nearest_sign(z);
            assert!(p.max_abs_diff(z) < 1e-12, "{z} vs {p}");
            assert!(pi_matrix(z).is_rotation(1e-10));
        }
    }
}
