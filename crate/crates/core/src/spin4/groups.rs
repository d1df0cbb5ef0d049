//! The finite groups `Quat4 = ⟨â, b̂, ĉ⟩` (order 16) and
//! `B̃4⁺ = Π⁻¹[B4⁺] = ⟨á, b́, ć⟩` (order 384), with exact coordinates.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;

use super::exact::{ExactQuat, ExactSpin, Surd};
use super::SpinPoint;
use crate::error::GroupError;
use crate::weyl::{Generator, Permutation};

/// `á_j = α_j(π/2)`, exact.
pub fn acute_generator(g: Generator) -> ExactSpin {
    let h = Surd::inv_sqrt2();
    let z = Surd::zero();
    match g {
        Generator::A => ExactSpin::new(ExactQuat::new(h, h, z, z), ExactQuat::new(h, -h, z, z)),
        Generator::B => ExactSpin::new(ExactQuat::new(h, z, z, h), ExactQuat::new(h, z, z, h)),
        Generator::C => ExactSpin::new(ExactQuat::new(h, h, z, z), ExactQuat::new(h, h, z, z)),
    }
}

/// `â_j = (á_j)²`, exact.
pub fn hat_generator(g: Generator) -> ExactSpin {
    let a = acute_generator(g);
    a * a
}

/// `acute σ = á_{i1} ⋯ á_{iℓ}` for the canonical reduced word of `σ`.
pub fn acute_of(sigma: &Permutation) -> ExactSpin {
    let word = sigma.reduced_words().swap_remove(0);
    acute_of_word(&word)
}

/// Product of acute generators along an arbitrary generator sequence.
pub fn acute_of_word(word: &[Generator]) -> ExactSpin {
    word.iter().fold(ExactSpin::one(), |acc, g| acc * acute_generator(*g))
}

/// `grave σ = à_{i1} ⋯ à_{iℓ} = (acute σ⁻¹)⁻¹`.
pub fn grave_of(sigma: &Permutation) -> ExactSpin {
    acute_of(&sigma.inverse()).inverse()
}

/// `hat σ = acute σ · (grave σ)⁻¹`.
pub fn hat_of(sigma: &Permutation) -> ExactSpin {
    acute_of(sigma) * grave_of(sigma).inverse()
}

/// Breadth-first closure of `generators` under right multiplication.
fn closure(generators: &[ExactSpin]) -> Vec<ExactSpin> {
    let mut seen: HashMap<ExactSpin, ()> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let one = ExactSpin::one();
    seen.insert(one, ());
    order.push(one);
    queue.push_back(one);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x * *g;
            if seen.insert(y, ()).is_none() {
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    order
}

/// The group `Quat4`.
#[derive(Debug, Clone)]
pub struct Quat4Group {
    elements: Vec<ExactSpin>,
}

impl Quat4Group {
    pub fn build() -> Result<Self, GroupError> {
        let gens: Vec<ExactSpin> = Generator::ALL.iter().map(|g| hat_generator(*g)).collect();
        let elements = closure(&gens);
        if elements.len() != 16 {
            return Err(GroupError::ClosureSize { expected: 16, found: elements.len() });
        }
        Ok(Quat4Group { elements })
    }

    pub fn elements(&self) -> &[ExactSpin] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, z: &ExactSpin) -> bool {
        self.elements.contains(z)
    }

    /// Elements commuting with every element of the group.
    pub fn center(&self) -> Vec<ExactSpin> {
        self.elements.iter().filter(|x| self.elements.iter().all(|y| **x * *y == *y * **x)).copied().collect()
    }
}

/// `1`, `−1`, `âĉ = (−1, 1)` and `−âĉ = (1, −1)`.
pub fn central_element(left_sign: i64, right_sign: i64) -> ExactSpin {
    let q = |s: i64| ExactQuat::new(Surd::int(s), Surd::zero(), Surd::zero(), Surd::zero());
    ExactSpin::new(q(left_sign), q(right_sign))
}

/// An element of `B̃4⁺` together with its signed permutation data:
/// `e_iᵀ Π(z) = signs[i] · e_(i^perm)ᵀ`.
#[derive(Debug, Clone, Serialize)]
pub struct BtildeElement {
    pub id: usize,
    #[serde(serialize_with = "serialize_exact")]
    pub spin: ExactSpin,
    #[serde(serialize_with = "serialize_perm")]
    pub perm: Permutation,
    pub signs: [i8; 4],
    pub lift: bool,
}

fn serialize_exact<S: serde::Serializer>(z: &ExactSpin, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&z.to_string())
}

fn serialize_perm<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    let ol = p.one_line();
    s.serialize_str(&format!("{}{}{}{}", ol[0], ol[1], ol[2], ol[3]))
}

/// The group `B̃4⁺`.
#[derive(Debug, Clone)]
pub struct BtildeGroup {
    elements: Vec<BtildeElement>,
    index: HashMap<ExactSpin, usize>,
    by_signed: HashMap<(Permutation, [i8; 4], bool), usize>,
}

impl BtildeGroup {
    pub fn build() -> Result<Self, GroupError> {
        let gens: Vec<ExactSpin> = Generator::ALL.iter().map(|g| acute_generator(*g)).collect();
        let spins = closure(&gens);
        if spins.len() != 384 {
            return Err(GroupError::ClosureSize { expected: 384, found: spins.len() });
        }
        let mut elements = Vec::with_capacity(spins.len());
        let mut index = HashMap::new();
        let mut by_signed = HashMap::new();
        for (id, spin) in spins.into_iter().enumerate() {
            let (perm, signs) = signed_permutation(&spin).ok_or_else(|| GroupError::NotInGroup(spin.to_string()))?;
            let lift = spin.lift_bit();
            index.insert(spin, id);
            by_signed.insert((perm, signs, lift), id);
            elements.push(BtildeElement { id, spin, perm, signs, lift });
        }
        Ok(BtildeGroup { elements, index, by_signed })
    }

    pub fn elements(&self) -> &[BtildeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, id: usize) -> &BtildeElement {
        &self.elements[id]
    }

    pub fn find(&self, z: &ExactSpin) -> Option<&BtildeElement> {
        self.index.get(z).map(|&i| &self.elements[i])
    }

    pub fn find_signed(&self, perm: Permutation, signs: [i8; 4], lift: bool) -> Option<&BtildeElement> {
        self.by_signed.get(&(perm, signs, lift)).map(|&i| &self.elements[i])
    }

    /// The element within `tol` (max-norm) of a floating point, if any.
    pub fn nearest(&self, z: SpinPoint, tol: f64) -> Option<&BtildeElement> {
        self.elements
            .iter()
            .map(|e| (e, e.spin.to_f64().max_abs_diff(z)))
            .filter(|(_, d)| *d < tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(e, _)| e)
    }

    pub fn mul(&self, a: usize, b: usize) -> &BtildeElement {
        let p = self.elements[a].spin * self.elements[b].spin;
        &self.elements[self.index[&p]]
    }
}

/// Reads the signed permutation of `Π(z)`; `None` if `Π(z)` is not a signed
/// permutation matrix.
pub fn signed_permutation(z: &ExactSpin) -> Option<(Permutation, [i8; 4])> {
    let m = z.pi_matrix();
    let mut one_line = [0u8; 4];
    let mut signs = [0i8; 4];
    let one = Surd::int(1);
    for (i, row) in m.iter().enumerate() {
        let nonzero: Vec<usize> = (0..4).filter(|&j| !row[j].is_zero()).collect();
        if nonzero.len() != 1 {
            return None;
        }
        let j = nonzero[0];
        let v = row[j];
        if v == one {
            signs[i] = 1;
        } else if v == -one {
            signs[i] = -1;
        } else {
            return None;
        }
        one_line[i] = j as u8 + 1;
    }
    Permutation::from_one_line(one_line).map(|p| (p, signs))
}

/// Cached `Quat4`.
pub fn quat4_group() -> &'static Quat4Group {
    static GROUP: OnceLock<Quat4Group> = OnceLock::new();
    GROUP.get_or_init(|| Quat4Group::build().expect("Quat4 closure has 16 elements"))
}

/// Cached `B̃4⁺`.
pub fn btilde_group() -> &'static BtildeGroup {
    static GROUP: OnceLock<BtildeGroup> = OnceLock::new();
    GROUP.get_or_init(|| BtildeGroup::build().expect("B̃4⁺ closure has 384 elements"))
}
