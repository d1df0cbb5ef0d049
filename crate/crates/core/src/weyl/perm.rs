//! Permutations of `{1,2,3,4}` with the right-action convention
//! `j^(στ) = (j^σ)^τ`, so that `P_σ P_τ = P_(στ)` for the permutation
//! matrices `e_jᵀ P_σ = e_(j^σ)ᵀ`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// Number of points permuted.
pub const N: usize = 4;

/// A permutation in one-line notation, stored 0-based.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: [u8; N],
}

/// The Coxeter generators `a = (12)`, `b = (23)`, `c = (34)`, by index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    C,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A, Generator::B, Generator::C];

    /// 1-based index `j` such that this generator is `a_j`.
    pub fn index(self) -> usize {
        match self {
            Generator::A => 1,
            Generator::B => 2,
            Generator::C => 3,
        }
    }

    pub fn from_index(j: usize) -> Option<Self> {
        match j {
            1 => Some(Generator::A),
            2 => Some(Generator::B),
            3 => Some(Generator::C),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Generator::A => 'a',
            Generator::B => 'b',
            Generator::C => 'c',
        }
    }

    pub fn from_symbol(ch: char) -> Option<Self> {
        match ch {
            'a' => Some(Generator::A),
            'b' => Some(Generator::B),
            'c' => Some(Generator::C),
            _ => None,
        }
    }

    pub fn perm(self) -> Permutation {
        let k = self.index() - 1;
        let mut images = [0, 1, 2, 3];
        images.swap(k, k + 1);
        Permutation { images }
    }
}

impl Permutation {
    pub const IDENTITY: Permutation = Permutation { images: [0, 1, 2, 3] };
    /// The top permutation `η = abacba`, `k^η = 5 - k`.
    pub const ETA: Permutation = Permutation { images: [3, 2, 1, 0] };

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(one_line: [u8; N]) -> Option<Self> {
        let mut seen = [false; N];
        let mut images = [0u8; N];
        for (slot, &v) in images.iter_mut().zip(one_line.iter()) {
            if v == 0 || v as usize > N || seen[v as usize - 1] {
                return None;
            }
            seen[v as usize - 1] = true;
            *slot = v - 1;
        }
        Some(Permutation { images })
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> [u8; N] {
        self.images.map(|v| v + 1)
    }

    /// `j^σ` for 0-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0u8; N];
        for (j, &v) in self.images.iter().enumerate() {
            images[v as usize] = j as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Number of inversions.
    pub fn inv(&self) -> usize {
        let mut count = 0;
        for i in 0..N {
            for j in i + 1..N {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Product of a sequence of generators, read left to right.
    pub fn from_generators(gens: &[Generator]) -> Self {
        gens.iter().fold(Self::IDENTITY, |acc, g| acc * g.perm())
    }

    /// Parses a string over `{a,b,c}` (or `e`) as a product of generators.
    pub fn from_word_str(s: &str) -> Option<Self> {
        if s == "e" {
            return Some(Self::IDENTITY);
        }
        if s == "η" || s == "eta" {
            return Some(Self::ETA);
        }
        let gens: Option<Vec<Generator>> = s.chars().map(Generator::from_symbol).collect();
        gens.map(|g| Self::from_generators(&g))
    }

    pub fn all() -> &'static [Permutation] {
        static ALL: OnceLock<Vec<Permutation>> = OnceLock::new();
        ALL.get_or_init(|| {
            let mut out = Vec::with_capacity(24);
            let mut p = [0u8, 1, 2, 3];
            heap_permutations(&mut p, N, &mut out);
            out.sort();
            out
        })
    }

    /// Right descents: generators `s` with `inv(σ s) < inv(σ)`. Under the
    /// right action `σ s` swaps the values `k`, `k+1` of the one-line
    /// notation, so `s` is a descent when `k+1` precedes `k`.
    pub fn right_descents(&self) -> Vec<Generator> {
        let pos = self.inverse();
        Generator::ALL
            .into_iter()
            .filter(|g| {
                let k = g.index() - 1;
                pos.images[k] > pos.images[k + 1]
            })
            .collect()
    }

    /// All reduced words, as generator sequences, sorted lexicographically.
    pub fn reduced_words(&self) -> Vec<Vec<Generator>> {
        reduced_word_table().get(self).cloned().unwrap_or_default()
    }

    /// The lexicographically smallest reduced word, used as the display name.
    pub fn name(&self) -> String {
        if self.is_identity() {
            return "e".to_string();
        }
        let words = self.reduced_words();
        words[0].iter().map(|g| g.symbol()).collect()
    }

    /// Strong Bruhat order, decided by the subword criterion on the
    /// canonical reduced word of `other`.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        if self.inv() > other.inv() {
            return false;
        }
        let word = other.reduced_words().swap_remove(0);
        let len = word.len();
        (0u32..(1 << len)).any(|mask| {
            let sub: Vec<Generator> = (0..len).filter(|k| mask & (1 << k) != 0).map(|k| word[k]).collect();
            Permutation::from_generators(&sub) == *self
        })
    }

    /// Number of inversions `(i, k)` with `i ≤ cut < k` (1-based cut in 1..=3):
    /// the number of pairs straddling the cut.
    pub fn cut_crossings(&self, cut: usize) -> usize {
        let mut count = 0;
        for i in 0..cut {
            for k in cut..N {
                if self.images[i] > self.images[k] {
                    count += 1;
                }
            }
        }
        count
    }
}

fn heap_permutations(p: &mut [u8; N], k: usize, out: &mut Vec<Permutation>) {
    if k == 1 {
        out.push(Permutation { images: *p });
        return;
    }
    for i in 0..k {
        heap_permutations(p, k - 1, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

fn reduced_word_table() -> &'static HashMap<Permutation, Vec<Vec<Generator>>> {
    static TABLE: OnceLock<HashMap<Permutation, Vec<Vec<Generator>>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut by_len: Vec<&Permutation> = Permutation::all().iter().collect();
        by_len.sort_by_key(|p| p.inv());
        let mut table: HashMap<Permutation, Vec<Vec<Generator>>> = HashMap::new();
        for sigma in by_len {
            if sigma.is_identity() {
                table.insert(*sigma, vec![Vec::new()]);
                continue;
            }
            let mut words = BTreeSet::new();
            for g in sigma.right_descents() {
                let shorter = *sigma * g.perm();
                for w in &table[&shorter] {
                    let mut w = w.clone();
                    w.push(g);
                    words.insert(w);
                }
            }
            table.insert(*sigma, words.into_iter().collect());
        }
        table
    })
}

impl Mul for Permutation {
    type Output = Permutation;

    /// `(στ)`: apply `σ` first, then `τ`.
    fn mul(self, rhs: Permutation) -> Permutation {
        let mut images = [0u8; N];
        for (j, slot) in images.iter_mut().enumerate() {
            *slot = rhs.images[self.images[j] as usize];
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ol = self.one_line();
        write!(f, "{}({}{}{}{})", self.name(), ol[0], ol[1], ol[2], ol[3])
    }
}
