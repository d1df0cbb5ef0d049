//! The open cells `chop(z)` and `adv(z)` occupied by a convex germ just
//! before and just after it crosses the cell of `z`.

use super::lift::spin_lift_rep_with;
use super::rep::SignedRep;
use crate::error::BruhatError;
use crate::spin4::{exp_tangent, SpinPoint, SpinTangent};

/// Probe parameters: the germ `z exp(±εΛ)` is classified at `ε` and
/// `ε/10`, which must agree.
#[derive(Clone, Debug)]
pub struct ChopAdvOptions {
    pub epsilon: f64,
    pub rank_tol: f64,
}

impl Default for ChopAdvOptions {
    fn default() -> Self {
        ChopAdvOptions { epsilon: 0.1, rank_tol: 1e-12 }
    }
}

fn probe(z: SpinPoint, t: f64, tol: f64) -> Result<SignedRep, BruhatError> {
    let p = z * exp_tangent(SpinTangent::lambda(), t);
    let rep = spin_lift_rep_with(p, tol)?;
    if !rep.is_open() {
        return Err(BruhatError::NotOpenCell(rep.to_string()));
    }
    Ok(rep)
}

/// `(chop, adv)` of the germ through an arbitrary point `z` of a cell.
pub fn chop_adv_at(z: SpinPoint, opts: &ChopAdvOptions) -> Result<(SignedRep, SignedRep), BruhatError> {
    let mut out = [None, None];
    for (slot, sign) in out.iter_mut().zip([-1.0, 1.0]) {
        let coarse = probe(z, sign * opts.epsilon, opts.rank_tol)?;
        let fine = probe(z, sign * opts.epsilon / 10.0, opts.rank_tol)?;
        if coarse != fine {
            return Err(BruhatError::NotConvergent(coarse.to_string(), fine.to_string()));
        }
        *slot = Some(coarse);
    }
    Ok((out[0].expect("probed"), out[1].expect("probed")))
}

/// `(chop(z), adv(z))` for a representative `z ∈ B̃4⁺`.
pub fn chop_adv(z: &SignedRep) -> Result<(SignedRep, SignedRep), BruhatError> {
    chop_adv_at(z.spin_point(), &ChopAdvOptions::default())
}

pub fn chop(z: &SignedRep) -> Result<SignedRep, BruhatError> {
    chop_adv(z).map(|p| p.0)
}

pub fn adv(z: &SignedRep) -> Result<SignedRep, BruhatError> {
    chop_adv(z).map(|p| p.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin4::{acute_generator, acute_of, quat4_group, ExactSpin};
    use crate::weyl::{Generator, Permutation};

    fn acute(g: Generator) -> ExactSpin {
        acute_generator(g)
    }

    #[test]
    fn bacb_family_representatives() {
        let (a, b, c) = (acute(Generator::A), acute(Generator::B), acute(Generator::C));
        let eta = SignedRep::from_exact(&acute_of(&Permutation::ETA)).unwrap();
        for z in [-(a * c), -(a * b * c), -(c * b * a)] {
            let rep = SignedRep::from_exact(&z).unwrap();
            let (ch, ad) = chop_adv(&rep).unwrap();
            assert_eq!(ch, eta, "chop of {rep}");
            assert_eq!(ad, eta.negate(), "adv of {rep}");
        }
    }

    #[test]
    fn deck_equivariance_on_a_sample() {
        let centre = quat4_group().center();
        let rep = SignedRep::from_exact(&acute_of(&Permutation::from_word_str("aba").unwrap())).unwrap();
        let (ch, ad) = chop_adv(&rep).unwrap();
        for q in centre {
            let qr = SignedRep::from_exact(&q).unwrap();
            let (ch2, ad2) = chop_adv(&qr.mul(&rep)).unwrap();
            assert_eq!(ch2, qr.mul(&ch));
            assert_eq!(ad2, qr.mul(&ad));
        }
    }
}
