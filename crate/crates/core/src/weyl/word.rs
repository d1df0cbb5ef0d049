//! Itinerary words, the set `M = {aba, bacb, bcb, cba, η}`, the grading
//! `μ` and the endpoint class it forces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::{Generator, Permutation};
use crate::error::WeylError;
use crate::spin4::{central_element, hat_generator, ExactSpin};

/// A finite word in the alphabet `S4 ∖ {e}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Permutation>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Permutation>) -> Result<Self, WeylError> {
        if let Some(pos) = letters.iter().position(|p| p.is_identity()) {
            return Err(WeylError::Parse {
                input: format!("letter {pos}"),
                reason: "the identity is not a letter".into(),
            });
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Permutation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn single(letter: Permutation) -> Word {
        Word(vec![letter])
    }

    /// Sub-word `letters[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Canonical names of the letters (`η` is named `abacba`).
    pub fn letter_names(&self) -> Vec<String> {
        self.0.iter().map(|p| p.name()).collect()
    }

    /// Whether every letter lies in `M`.
    pub fn in_m_star(&self) -> bool {
        self.0.iter().all(|p| m_letters().contains(p))
    }

    /// Number of letters equal to `aba`.
    pub fn count(&self, letter: &Permutation) -> usize {
        self.0.iter().filter(|p| *p == letter).count()
    }
}

fn letter_display(p: &Permutation) -> String {
    if *p == Permutation::ETA {
        "η".to_string()
    } else if p.inv() == 1 {
        p.name()
    } else {
        format!("[{}]", p.name())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for p in &self.0 {
            f.write_str(&letter_display(p))?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WeylError;

    /// Parses words such as `bc[aba]cb`, `[aba][cba]η[aba]`, `eta` or `()`.
    /// Bracketed groups are single letters given by a reduced word.
    fn from_str(s: &str) -> Result<Self, WeylError> {
        let err = |reason: &str| WeylError::Parse { input: s.to_string(), reason: reason.to_string() };
        let trimmed: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if trimmed.is_empty() || trimmed == "()" {
            return Ok(Word::empty());
        }
        let chars: Vec<char> = trimmed.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == 'η' {
                letters.push(Permutation::ETA);
                i += 1;
            } else if trimmed[char_offset(&chars, i)..].starts_with("eta") {
                letters.push(Permutation::ETA);
                i += 3;
            } else if c == '[' {
                let close = chars[i..].iter().position(|&d| d == ']').ok_or_else(|| err("unclosed bracket"))? + i;
                let inner: String = chars[i + 1..close].iter().collect();
                let letter = parse_reduced(&inner).ok_or_else(|| err("bracket is not a reduced word"))?;
                letters.push(letter);
                i = close + 1;
            } else if let Some(g) = Generator::from_symbol(c) {
                letters.push(g.perm());
                i += 1;
            } else {
                return Err(err(&format!("unexpected character {c:?}")));
            }
        }
        Ok(Word(letters))
    }
}

fn char_offset(chars: &[char], i: usize) -> usize {
    chars[..i].iter().map(|c| c.len_utf8()).sum()
}

fn parse_reduced(inner: &str) -> Option<Permutation> {
    if inner == "η" || inner == "eta" {
        return Some(Permutation::ETA);
    }
    let gens: Option<Vec<Generator>> = inner.chars().map(Generator::from_symbol).collect();
    let gens = gens?;
    if gens.is_empty() {
        return None;
    }
    let p = Permutation::from_generators(&gens);
    (p.inv() == gens.len()).then_some(p)
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The grading `μ(w) = (μ₀, μ₁) ∈ ℕ²`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct MuVector {
    pub mu0: usize,
    pub mu1: usize,
}

impl MuVector {
    pub fn new(mu0: usize, mu1: usize) -> Self {
        MuVector { mu0, mu1 }
    }
}

impl std::ops::Add for MuVector {
    type Output = MuVector;

    fn add(self, o: MuVector) -> MuVector {
        MuVector::new(self.mu0 + o.mu0, self.mu1 + o.mu1)
    }
}

impl fmt::Display for MuVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.mu0, self.mu1)
    }
}

fn perm(s: &str) -> Permutation {
    Permutation::from_word_str(s).expect("valid generator string")
}

/// `M = {aba, bacb, bcb, cba, η}`.
pub fn m_letters() -> [Permutation; 5] {
    [perm("aba"), perm("bacb"), perm("bcb"), perm("cba"), Permutation::ETA]
}

/// `M• = {aba, cba, η}`.
pub fn m_bullet_letters() -> [Permutation; 3] {
    [perm("aba"), perm("cba"), Permutation::ETA]
}

/// `μ` of a single letter of `M`.
pub fn mu_of_letter(p: &Permutation) -> Result<MuVector, WeylError> {
    let name = p.name();
    match name.as_str() {
        "aba" | "bacb" | "bcb" => Ok(MuVector::new(1, 0)),
        "cba" => Ok(MuVector::new(0, 1)),
        "abacba" => Ok(MuVector::new(1, 1)),
        _ => Err(WeylError::NotInM(name)),
    }
}

/// Letterwise sum of `μ`.
pub fn mu(w: &Word) -> Result<MuVector, WeylError> {
    w.letters().iter().try_fold(MuVector::default(), |acc, p| Ok(acc + mu_of_letter(p)?))
}

/// `dim(w) = Σ (inv(σ_k) − 1)`.
pub fn dim_word(w: &Word) -> usize {
    w.letters().iter().map(|p| p.inv() - 1).sum()
}

/// All words over `M` with grading `mu`, sorted.
pub fn m_star_words(target: MuVector) -> Vec<Word> {
    let letters = m_letters();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: MuVector, letters: &[Permutation; 5], current: &mut Vec<Permutation>, out: &mut Vec<Word>) {
        if remaining == MuVector::default() {
            out.push(Word(current.clone()));
            return;
        }
        for p in letters {
            let m = mu_of_letter(p).expect("letters of M");
            if m.mu0 <= remaining.mu0 && m.mu1 <= remaining.mu1 {
                current.push(*p);
                rec(MuVector::new(remaining.mu0 - m.mu0, remaining.mu1 - m.mu1), letters, current, out);
                current.pop();
            }
        }
    }
    rec(target, &letters, &mut current, &mut out);
    out.sort();
    out
}

/// All words obtained from `w` by replacing each `aba` by one of
/// `aba`, `bacb`, `bcb` (the class of `w` under `∼`).
pub fn similar_words(w: &Word) -> Vec<Word> {
    let family = [perm("aba"), perm("bacb"), perm("bcb")];
    let mut out = vec![Vec::new()];
    for p in w.letters() {
        let choices: Vec<Permutation> = if *p == family[0] { family.to_vec() } else { vec![*p] };
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Permutation>| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(*c);
                    v
                })
            })
            .collect();
    }
    let mut words: Vec<Word> = out.into_iter().map(Word).collect();
    words.sort();
    words
}

/// The endpoint `z₁ = (−1)^(μ₀+1) (âĉ)^(μ₁+1)` forced on curves of
/// `M_{μ₀,μ₁}`, computed by exact multiplication in `Quat4`.
pub fn endpoint_class(m: MuVector) -> ExactSpin {
    let minus_one = central_element(-1, -1);
    let ac = hat_generator(Generator::A) * hat_generator(Generator::C);
    let mut z = ExactSpin::one();
    for _ in 0..(m.mu0 + 1) {
        z = z * minus_one;
    }
    for _ in 0..(m.mu1 + 1) {
        z = z * ac;
    }
    z
}
