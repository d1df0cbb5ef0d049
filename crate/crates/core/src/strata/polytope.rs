//! Points of `T_{μ0,μ1}`, their words over `M• = {aba, cba, η}` and the
//! strata of the hyperplane arrangement.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::StrataError;
use crate::weyl::{m_bullet_letters, Permutation, Word};

/// A point `((t_{0,1} < ⋯ < t_{0,μ0}), (t_{1,1} < ⋯ < t_{1,μ1}))` of
/// `T_{μ0,μ1} ⊂ (0,1)^{μ0+μ1}`, with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoint {
    t0: Vec<BigRational>,
    t1: Vec<BigRational>,
}

impl TPoint {
    pub fn new(t0: Vec<BigRational>, t1: Vec<BigRational>) -> Result<Self, StrataError> {
        for (name, t) in [("t0", &t0), ("t1", &t1)] {
            if let Some(x) = t.iter().find(|x| !x.is_positive() || **x >= BigRational::one()) {
                return Err(StrataError::InvalidPoint(format!("{name} coordinate {x} outside (0,1)")));
            }
            if t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(StrataError::InvalidPoint(format!("{name} is not strictly increasing")));
            }
        }
        Ok(TPoint { t0, t1 })
    }

    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn from_fractions(t0: &[(i64, i64)], t1: &[(i64, i64)]) -> Result<Self, StrataError> {
        let conv = |v: &[(i64, i64)]| -> Result<Vec<BigRational>, StrataError> {
            v.iter()
                .map(|&(n, d)| {
                    if d == 0 {
                        Err(StrataError::InvalidPoint(format!("{n}/0")))
                    } else {
                        Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
                    }
                })
                .collect()
        };
        TPoint::new(conv(t0)?, conv(t1)?)
    }

    pub fn t0(&self) -> &[BigRational] {
        &self.t0
    }

    pub fn t1(&self) -> &[BigRational] {
        &self.t1
    }

    pub fn mu(&self) -> (usize, usize) {
        (self.t0.len(), self.t1.len())
    }
}

trait Positive {
    fn is_positive(&self) -> bool;
}

impl Positive for BigRational {
    fn is_positive(&self) -> bool {
        *self > BigRational::zero()
    }
}

fn parse_tuple(s: &str) -> Result<Vec<BigRational>, StrataError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            let x = x.trim();
            if let Ok(q) = x.parse::<BigRational>() {
                return Ok(q);
            }
            let f: f64 = x.parse().map_err(|_| StrataError::InvalidPoint(format!("cannot parse `{x}`")))?;
            BigRational::from_float(f).ok_or_else(|| StrataError::InvalidPoint(format!("non-finite `{x}`")))
        })
        .collect()
}

/// Parses `t0;t1` with comma-separated entries, each a fraction `p/q` or a
/// decimal, e.g. `1/9,4/9,5/9;2/9,4/9,7/9`.
impl FromStr for TPoint {
    type Err = StrataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) =
            s.split_once(';').ok_or_else(|| StrataError::InvalidPoint(format!("expected `t0;t1`, got `{s}`")))?;
        TPoint::new(parse_tuple(a)?, parse_tuple(b)?)
    }
}

impl fmt::Display for TPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.t0), join(&self.t1))
    }
}

/// Merges the two sorted tuples, labelling each value by `aba` (from
/// `t0`), `cba` (from `t1`) or `η` (a value present in both).
pub fn point_to_word(p: &TPoint) -> Word {
    let [aba, cba, eta] = m_bullet_letters();
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(p.t0.len() + p.t1.len());
    while i < p.t0.len() || j < p.t1.len() {
        let ord = match (p.t0.get(i), p.t1.get(j)) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(aba);
                i += 1;
            }
            Ordering::Greater => {
                out.push(cba);
                j += 1;
            }
            Ordering::Equal => {
                out.push(eta);
                i += 1;
                j += 1;
            }
        }
    }
    Word(out)
}

/// The rational point of the stratum labelled `w` that places the `k`-th
/// letter at time `(k+1)/(ℓ+1)`.
pub fn sample_point(w: &Word) -> Result<TPoint, StrataError> {
    let [aba, cba, eta] = m_bullet_letters();
    let denom = BigInt::from(w.len() + 1);
    let (mut t0, mut t1) = (Vec::new(), Vec::new());
    for (k, p) in w.letters().iter().enumerate() {
        let t = BigRational::new(BigInt::from(k + 1), denom.clone());
        if *p == aba || *p == eta {
            t0.push(t.clone());
        }
        if *p == cba || *p == eta {
            t1.push(t);
        }
        if *p != aba && *p != cba && *p != eta {
            return Err(StrataError::InvalidPoint(format!("letter {} is not in M•", p.name())));
        }
    }
    TPoint::new(t0, t1)
}

/// Signs of `t_{0,i} − t_{1,j}`, row-major in `(i, j)`.
pub fn sign_vector(p: &TPoint) -> Vec<i8> {
    let mut out = Vec::with_capacity(p.t0.len() * p.t1.len());
    for a in &p.t0 {
        for b in &p.t1 {
            out.push(match a.cmp(b) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            });
        }
    }
    out
}

/// A stratum `T_{μ0,μ1}[w]` with its codimension `N_η`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Stratum {
    pub word: Word,
    pub n_eta: usize,
}

/// All words over `M•` with grading `(μ0, μ1)`, sorted by codimension and
/// then by word.
pub fn strata_enumerate(mu0: usize, mu1: usize) -> Vec<Stratum> {
    let [aba, cba, eta] = m_bullet_letters();
    let mut out = Vec::new();
    fn rec(r0: usize, r1: usize, cur: &mut Vec<Permutation>, letters: [Permutation; 3], out: &mut Vec<Stratum>) {
        if r0 == 0 && r1 == 0 {
            let n_eta = cur.iter().filter(|p| **p == letters[2]).count();
            out.push(Stratum { word: Word(cur.clone()), n_eta });
            return;
        }
        let steps = [(1, 0), (0, 1), (1, 1)];
        for (p, (d0, d1)) in letters.iter().zip(steps) {
            if d0 <= r0 && d1 <= r1 {
                cur.push(*p);
                rec(r0 - d0, r1 - d1, cur, letters, out);
                cur.pop();
            }
        }
    }
    rec(mu0, mu1, &mut Vec::new(), [aba, cba, eta], &mut out);
    out.sort_by(|a, b| (a.n_eta, &a.word).cmp(&(b.n_eta, &b.word)));
    out
}

/// Which of `A_{k,+}`, `A_{k,0}`, `A_{k,−}` to apply.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Substitution {
    Plus,
    Zero,
    Minus,
}

impl FromStr for Substitution {
    type Err = StrataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Substitution::Plus),
            "0" | "zero" => Ok(Substitution::Zero),
            "-" | "−" | "minus" => Ok(Substitution::Minus),
            _ => Err(StrataError::InvalidPoint(format!("unknown substitution `{s}`"))),
        }
    }
}

/// `A_{k,±}(w)`: the `k`-th letter of `w` among `{aba, bacb, bcb}`
/// (counting from 1) must be `aba`; it is kept (`+`), replaced by `bacb`
/// (`0`) or by `bcb` (`−`).
pub fn substitute(w: &Word, k: usize, which: Substitution) -> Result<Word, StrataError> {
    let [aba, _, _] = m_bullet_letters();
    let bacb = Permutation::from_word_str("bacb").expect("valid");
    let bcb = Permutation::from_word_str("bcb").expect("valid");
    let family = [aba, bacb, bcb];
    let pos = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, p)| family.contains(p))
        .nth(k.checked_sub(1).ok_or(StrataError::IndexOutOfRange(k))?)
        .map(|(i, _)| i)
        .ok_or(StrataError::IndexOutOfRange(k))?;
    if w.letters()[pos] != aba {
        return Err(StrataError::IndexOutOfRange(k));
    }
    let mut letters = w.letters().to_vec();
    letters[pos] = match which {
        Substitution::Plus => aba,
        Substitution::Zero => bacb,
        Substitution::Minus => bcb,
    };
    Ok(Word(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let p = TPoint::from_fractions(&[(1, 9), (4, 9), (5, 9)], &[(2, 9), (4, 9), (7, 9)]).unwrap();
        assert_eq!(point_to_word(&p), w("[aba][cba]η[aba][cba]"));
        let q: TPoint = "1/9,4/9,5/9;2/9,4/9,7/9".parse().unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_string(), "1/9,4/9,5/9;2/9,4/9,7/9");
    }

    #[test]
    fn trivial_points() {
        assert!(point_to_word(&TPoint::new(vec![], vec![]).unwrap()).is_empty());
        assert_eq!(point_to_word(&"0.5;0.5".parse().unwrap()), w("η"));
        assert_eq!(point_to_word(&"0.25;".parse().unwrap()), w("[aba]"));
    }

    #[test]
    fn invalid_points_are_rejected() {
        assert!("0.5,0.5;".parse::<TPoint>().is_err());
        assert!("0;0.5".parse::<TPoint>().is_err());
        assert!("0.5;1".parse::<TPoint>().is_err());
        assert!("0.5".parse::<TPoint>().is_err());
        assert!("x;".parse::<TPoint>().is_err());
    }

    #[test]
    fn one_one_strata() {
        let s = strata_enumerate(1, 1);
        let mut words: Vec<(String, usize)> = s.iter().map(|s| (s.word.to_string(), s.n_eta)).collect();
        words.sort();
        let expected = [("[aba][cba]", 0), ("[cba][aba]", 0), ("η", 1)];
        assert_eq!(words, expected.map(|(a, b)| (a.to_string(), b)).to_vec());
        assert_eq!(strata_enumerate(1, 0).len(), 1);
        assert_eq!(strata_enumerate(0, 0).len(), 1);
    }

    #[test]
    fn sample_points_land_in_their_strata() {
        for m0 in 0..=3 {
            for m1 in 0..=3 {
                for s in strata_enumerate(m0, m1) {
                    let p = sample_point(&s.word).unwrap();
                    assert_eq!(p.mu(), (m0, m1));
                    assert_eq!(point_to_word(&p), s.word);
                    assert_eq!(sign_vector(&p).iter().filter(|x| **x == 0).count(), s.n_eta);
                }
            }
        }
    }

    #[test]
    fn substitutions() {
        let x = w("[aba][cba]η[aba][bacb]η");
        assert_eq!(substitute(&x, 2, Substitution::Zero).unwrap(), w("[aba][cba]η[bacb][bacb]η"));
        assert_eq!(substitute(&x, 2, Substitution::Minus).unwrap(), w("[aba][cba]η[bcb][bacb]η"));
        assert_eq!(substitute(&x, 2, Substitution::Plus).unwrap(), x);
        assert_eq!(substitute(&x, 1, Substitution::Zero).unwrap(), w("[bacb][cba]η[aba][bacb]η"));
        assert!(matches!(substitute(&x, 3, Substitution::Zero), Err(StrataError::IndexOutOfRange(3))));
        assert!(matches!(substitute(&x, 4, Substitution::Zero), Err(StrataError::IndexOutOfRange(4))));
        assert!(matches!(substitute(&x, 0, Substitution::Zero), Err(StrataError::IndexOutOfRange(0))));
    }
}
