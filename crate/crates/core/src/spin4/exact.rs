//! Exact arithmetic in `Q(√2)`, enough for the coordinates of the finite
//! groups `Quat4` and `B̃4⁺` (all in `{0, ±1/2, ±1/√2, ±1}`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use super::{Quaternion, SpinPoint};

/// The number `a + b√2` with rational `a`, `b`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Surd {
    pub a: Rational64,
    pub b: Rational64,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn int(n: i64) -> Self {
        Surd { a: Rational64::from_integer(n), b: Rational64::zero() }
    }

    /// `√2 / 2 = 1/√2`.
    pub fn inv_sqrt2() -> Self {
        Surd { a: Rational64::zero(), b: Rational64::new(1, 2) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let a = *self.a.numer() as f64 / *self.a.denom() as f64;
        let b = *self.b.numer() as f64 / *self.b.denom() as f64;
        a + b * std::f64::consts::SQRT_2
    }

    /// Sign of the real number, exact.
    pub fn signum(&self) -> i32 {
        // a + b√2 > 0  ⟺  compare a against -b√2 by squaring when signs differ.
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa >= 0 && sb >= 0 {
            return if sa == 0 && sb == 0 { 0 } else { 1 };
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        let a2 = self.a * self.a;
        let b2 = self.b * self.b * Rational64::from_integer(2);
        if a2 > b2 {
            sa
        } else if a2 < b2 {
            sb
        } else {
            0
        }
    }
}

fn sign_of(r: &Rational64) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for Surd {
    type Output = Surd;

    fn add(self, o: Surd) -> Surd {
        Surd { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Surd {
    type Output = Surd;

    fn sub(self, o: Surd) -> Surd {
        Surd { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b }
    }
}

impl Mul for Surd {
    type Output = Surd;

    fn mul(self, o: Surd) -> Surd {
        let two = Rational64::from_integer(2);
        Surd { a: self.a * o.a + two * self.b * o.b, b: self.a * o.b + self.b * o.a }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rat = |r: &Rational64| {
            if *r.denom() == 1 {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => f.write_str(&rat(&self.a)),
            (a_zero, false) => {
                let coef = self.b.abs();
                let sign = if self.b.is_negative() { "-" } else { "" };
                let body = if coef == Rational64::from_integer(1) {
                    "√2".to_string()
                } else if *coef.numer() == 1 {
                    format!("√2/{}", coef.denom())
                } else {
                    format!("{}√2", rat(&coef))
                };
                if a_zero {
                    write!(f, "{sign}{body}")
                } else {
                    let sep = if self.b.is_negative() { "-" } else { "+" };
                    write!(f, "{}{sep}{body}", rat(&self.a))
                }
            }
        }
    }
}

/// A quaternion with coordinates in `Q(√2)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactQuat {
    pub w: Surd,
    pub x: Surd,
    pub y: Surd,
    pub z: Surd,
}

impl ExactQuat {
    pub fn new(w: Surd, x: Surd, y: Surd, z: Surd) -> Self {
        ExactQuat { w, x, y, z }
    }

    pub fn one() -> Self {
        ExactQuat::new(Surd::int(1), Surd::zero(), Surd::zero(), Surd::zero())
    }

    pub fn coords(&self) -> [Surd; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_coords(c: [Surd; 4]) -> Self {
        ExactQuat::new(c[0], c[1], c[2], c[3])
    }

    pub fn conj(&self) -> Self {
        ExactQuat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn to_f64(&self) -> Quaternion {
        Quaternion::new(self.w.to_f64(), self.x.to_f64(), self.y.to_f64(), self.z.to_f64())
    }
}

impl Mul for ExactQuat {
    type Output = ExactQuat;

    fn mul(self, o: ExactQuat) -> ExactQuat {
        ExactQuat::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Neg for ExactQuat {
    type Output = ExactQuat;

    fn neg(self) -> ExactQuat {
        ExactQuat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for ExactQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

/// A pair of unit quaternions with exact coordinates.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactSpin {
    pub left: ExactQuat,
    pub right: ExactQuat,
}

impl ExactSpin {
    pub fn new(left: ExactQuat, right: ExactQuat) -> Self {
        ExactSpin { left, right }
    }

    pub fn one() -> Self {
        ExactSpin::new(ExactQuat::one(), ExactQuat::one())
    }

    pub fn inverse(&self) -> Self {
        ExactSpin::new(self.left.conj(), self.right.conj())
    }

    pub fn to_f64(&self) -> SpinPoint {
        SpinPoint::new(self.left.to_f64(), self.right.to_f64())
    }

    /// The eight coordinates `(l.w, l.x, l.y, l.z, r.w, r.x, r.y, r.z)`.
    pub fn coords(&self) -> [Surd; 8] {
        let l = self.left.coords();
        let r = self.right.coords();
        [l[0], l[1], l[2], l[3], r[0], r[1], r[2], r[3]]
    }

    /// Whether the first nonzero coordinate is negative; selects one of
    /// the two preimages `±z` of a rotation.
    pub fn lift_bit(&self) -> bool {
        self.coords().iter().find(|c| !c.is_zero()).map(|c| c.signum() < 0).unwrap_or(false)
    }

    /// Exact matrix of `Π(z)`, entries indexed `[row][col]`.
    pub fn pi_matrix(&self) -> [[Surd; 4]; 4] {
        let basis = [
            ExactQuat::one(),
            ExactQuat::new(Surd::zero(), Surd::int(1), Surd::zero(), Surd::zero()),
            ExactQuat::new(Surd::zero(), Surd::zero(), Surd::int(1), Surd::zero()),
            ExactQuat::new(Surd::zero(), Surd::zero(), Surd::zero(), Surd::int(1)),
        ];
        let rinv = self.right.conj();
        let mut m = [[Surd::zero(); 4]; 4];
        for (c, e) in basis.iter().enumerate() {
            let col = (self.left * *e * rinv).coords();
            for r in 0..4 {
                m[r][c] = col[r];
            }
        }
        m
    }
}

impl Mul for ExactSpin {
    type Output = ExactSpin;

    fn mul(self, o: ExactSpin) -> ExactSpin {
        ExactSpin::new(self.left * o.left, self.right * o.right)
    }
}

impl Neg for ExactSpin {
    type Output = ExactSpin;

    fn neg(self) -> ExactSpin {
        ExactSpin::new(-self.left, -self.right)
    }
}

impl fmt::Display for ExactSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}
