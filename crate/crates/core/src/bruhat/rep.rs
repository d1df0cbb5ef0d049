//! Signed permutation representatives `(σ, signs, lift)` of `B̃4⁺`.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::BruhatError;
use crate::spin4::{btilde_group, BtildeElement, ExactSpin, SpinPoint};
use crate::weyl::Permutation;

/// An element of `B̃4⁺`: the signed permutation matrix `Q` with
/// `e_iᵀ Q = signs[i] e_(i^perm)ᵀ` and the bit choosing one of its two
/// preimages in `Spin4` (`false` when the first nonzero coordinate of
/// `(z_l, z_r)` is positive).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRep {
    pub perm: Permutation,
    pub signs: [i8; 4],
    pub lift: bool,
}

impl SignedRep {
    pub fn new(perm: Permutation, signs: [i8; 4], lift: bool) -> Result<Self, BruhatError> {
        let rep = SignedRep { perm, signs, lift };
        rep.validate()?;
        Ok(rep)
    }

    fn validate(&self) -> Result<(), BruhatError> {
        if self.signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(BruhatError::InvalidRep(format!("signs {:?}", self.signs)));
        }
        let sign_product: i32 = self.signs.iter().map(|s| *s as i32).product();
        let parity = if self.perm.inv().is_multiple_of(2) { 1 } else { -1 };
        if sign_product * parity != 1 {
            return Err(BruhatError::InvalidRep(format!("{self} has determinant -1")));
        }
        Ok(())
    }

    pub fn from_element(e: &BtildeElement) -> Self {
        SignedRep { perm: e.perm, signs: e.signs, lift: e.lift }
    }

    pub fn from_exact(z: &ExactSpin) -> Result<Self, BruhatError> {
        btilde_group().find(z).map(SignedRep::from_element).ok_or_else(|| BruhatError::InvalidRep(z.to_string()))
    }

    /// The group element this representative names.
    pub fn element(&self) -> &'static BtildeElement {
        btilde_group().find_signed(self.perm, self.signs, self.lift).expect("validated representatives are in B̃4⁺")
    }

    pub fn spin(&self) -> ExactSpin {
        self.element().spin
    }

    pub fn spin_point(&self) -> SpinPoint {
        self.spin().to_f64()
    }

    /// The signed permutation matrix `Π(z)`.
    pub fn matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            m[(i, self.perm.apply(i))] = self.signs[i] as f64;
        }
        m
    }

    /// Whether the representative labels an open cell (`perm = η`).
    pub fn is_open(&self) -> bool {
        self.perm == Permutation::ETA
    }

    /// The other preimage of the same signed permutation.
    pub fn negate(&self) -> Self {
        SignedRep { lift: !self.lift, ..*self }
    }

    /// Group product in `B̃4⁺`.
    pub fn mul(&self, other: &SignedRep) -> SignedRep {
        let p = self.spin() * other.spin();
        SignedRep::from_exact(&p).expect("B̃4⁺ is closed")
    }

    /// All 384 representatives.
    pub fn all() -> Vec<SignedRep> {
        btilde_group().elements().iter().map(SignedRep::from_element).collect()
    }
}

impl fmt::Display for SignedRep {
    /// Formats as `3412:+-+-:0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ol = self.perm.one_line();
        let signs: String = self.signs.iter().map(|s| if *s > 0 { '+' } else { '-' }).collect();
        write!(f, "{}{}{}{}:{}:{}", ol[0], ol[1], ol[2], ol[3], signs, u8::from(self.lift))
    }
}

impl FromStr for SignedRep {
    type Err = BruhatError;

    fn from_str(s: &str) -> Result<Self, BruhatError> {
        let bad = || BruhatError::InvalidRep(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 || parts[0].len() != 4 || parts[1].chars().count() != 4 {
            return Err(bad());
        }
        let mut one_line = [0u8; 4];
        for (slot, c) in one_line.iter_mut().zip(parts[0].chars()) {
            *slot = c.to_digit(10).ok_or_else(bad)? as u8;
        }
        let perm = Permutation::from_one_line(one_line).ok_or_else(bad)?;
        let mut signs = [0i8; 4];
        for (slot, c) in signs.iter_mut().zip(parts[1].chars()) {
            *slot = match c {
                '+' => 1,
                '-' => -1,
                _ => return Err(bad()),
            };
        }
        let lift = match parts[2] {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        SignedRep::new(perm, signs, lift)
    }
}

impl Serialize for SignedRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignedRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
