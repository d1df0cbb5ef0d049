//! The refinement relation `w ⊑ σ` on the letters `S_PA ∖ {e} =
//! M ∪ {ac, abc}`, extended to words by block factorization.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use super::multiplicity::{combinatorial_multiplicity, word_multiplicity};
use super::perm::Permutation;
use super::word::{dim_word, m_letters, mu, Word};
use crate::error::WeylError;
use crate::spin4::{hat_of, ExactSpin};

/// Words refining one letter.
#[derive(Clone, Debug, Serialize)]
pub struct RefinementEntry {
    pub letter: String,
    /// Entries printed in full (`false`) or derived by symmetry, cell
    /// adjacency or screening (`true`).
    pub provisional: bool,
    /// The entries that are known exactly.
    pub words: Vec<Word>,
    /// Additional screened candidates outside `M*` (only for `bacb`, `η`).
    pub candidates: Vec<Word>,
}

/// Letter → list of words `w ⊑ σ`.
#[derive(Clone, Debug, Serialize)]
pub struct RefinementTable {
    pub entries: BTreeMap<String, RefinementEntry>,
    #[serde(skip)]
    by_letter: HashMap<Permutation, usize>,
    #[serde(skip)]
    order: Vec<Permutation>,
    #[serde(skip)]
    reverse: HashMap<Word, Vec<Permutation>>,
}

/// Maximum length of screened candidate words.
pub const CANDIDATE_MAX_LEN: usize = 4;

fn words(list: &[&str]) -> Vec<Word> {
    list.iter().map(|s| s.parse().expect("table entries parse")).collect()
}

fn perm(s: &str) -> Permutation {
    Permutation::from_word_str(s).expect("valid generator string")
}

/// Swaps the generators `a` and `c` in every letter (conjugation by `η`).
fn swap_ac(w: &Word) -> Word {
    Word(w.letters().iter().map(|p| Permutation::ETA * *p * Permutation::ETA).collect())
}

/// Product of `hat` over the letters of a word.
pub fn word_hat(w: &Word) -> ExactSpin {
    w.letters().iter().fold(ExactSpin::one(), |acc, p| acc * hat_of(p))
}

/// Words outside `M*`, of length at most [`CANDIDATE_MAX_LEN`], whose
/// letter multiplicities fit under those of `sigma` with even excess, with
/// the same `hat` and smaller dimension.
fn screened_candidates(sigma: &Permutation, known: &[Word]) -> Vec<Word> {
    let target = combinatorial_multiplicity(sigma);
    let target_hat = hat_of(sigma);
    let target_dim = sigma.inv() - 1;
    let letters: Vec<Permutation> = Permutation::all().iter().filter(|p| !p.is_identity()).copied().collect();
    let mut out = Vec::new();
    let mut current: Vec<Permutation> = Vec::new();
    fn rec(
        letters: &[Permutation],
        current: &mut Vec<Permutation>,
        used: [usize; 3],
        target: [usize; 3],
        out: &mut Vec<Word>,
    ) {
        if !current.is_empty() {
            out.push(Word(current.clone()));
        }
        if current.len() == CANDIDATE_MAX_LEN {
            return;
        }
        for p in letters {
            let m = combinatorial_multiplicity(p);
            let next = [used[0] + m[0], used[1] + m[1], used[2] + m[2]];
            if (0..3).all(|k| next[k] <= target[k]) {
                current.push(*p);
                rec(letters, current, next, target, out);
                current.pop();
            }
        }
    }
    rec(&letters, &mut current, [0; 3], target, &mut out);
    out.into_iter()
        .filter(|w| !w.in_m_star())
        .filter(|w| dim_word(w) < target_dim)
        .filter(|w| {
            let m = word_multiplicity(w);
            (0..3).all(|k| (target[k] - m[k]).is_multiple_of(2))
        })
        .filter(|w| word_hat(w) == target_hat)
        .filter(|w| !known.contains(w))
        .collect()
}

impl RefinementTable {
    fn build() -> Self {
        let aba = words(&["[aba]", "aa", "a[ba]", "abab", "[ab]b", "bb", "b[ab]", "baba", "[ba]a"]);
        let cba = words(&[
            "[cba]", "ac", "[ac]", "ca", "c[ba]", "cbab", "cba[cb]", "cbacbc", "cb[ac]bc", "cbcabc", "[cb]abc", "babc",
            "[ba]c",
        ]);
        let bcb: Vec<Word> = aba.iter().map(swap_ac).collect();
        let abc: Vec<Word> = cba.iter().map(swap_ac).collect();
        let ac = words(&["[ac]", "ac", "ca"]);
        let bacb = words(&["[bacb]", "[aba]", "[bcb]"]);
        let eta = words(&["η", "[aba][cba]", "[cba][aba]"]);

        let mut raw: Vec<(Permutation, bool, Vec<Word>, bool)> = vec![
            (perm("aba"), false, aba, false),
            (perm("bcb"), true, bcb, false),
            (perm("cba"), false, cba, false),
            (perm("abc"), true, abc, false),
            (perm("ac"), true, ac, false),
            (perm("bacb"), true, bacb, true),
            (Permutation::ETA, true, eta, true),
        ];
        raw.sort_by_key(|r| r.0);

        let mut entries = BTreeMap::new();
        let mut by_letter = HashMap::new();
        let mut order = Vec::new();
        let mut reverse: HashMap<Word, Vec<Permutation>> = HashMap::new();
        for (idx, (letter, provisional, list, screen)) in raw.into_iter().enumerate() {
            let candidates = if screen { screened_candidates(&letter, &list) } else { Vec::new() };
            for w in list.iter().chain(candidates.iter()) {
                reverse.entry(w.clone()).or_default().push(letter);
            }
            by_letter.insert(letter, idx);
            order.push(letter);
            entries
                .insert(letter.name(), RefinementEntry { letter: letter.name(), provisional, words: list, candidates });
        }
        RefinementTable { entries, by_letter, order, reverse }
    }

    /// Tabulated letters `M ∪ {ac, abc}`.
    pub fn letters(&self) -> &[Permutation] {
        &self.order
    }

    pub fn entry(&self, sigma: &Permutation) -> Result<&RefinementEntry, WeylError> {
        if !self.by_letter.contains_key(sigma) {
            return Err(WeylError::UnsupportedLetter(sigma.name()));
        }
        Ok(&self.entries[&sigma.name()])
    }

    /// Tabulated letters `σ` with `w ⊑ σ`.
    pub fn letters_above(&self, w: &Word) -> &[Permutation] {
        self.reverse.get(w).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.entries).expect("table serializes")
    }
}

/// The cached refinement table.
pub fn refinement_table() -> &'static RefinementTable {
    static TABLE: OnceLock<RefinementTable> = OnceLock::new();
    TABLE.get_or_init(RefinementTable::build)
}

/// `w ⊑ σ` by table lookup.
pub fn refines_letter(w: &Word, sigma: &Permutation) -> Result<bool, WeylError> {
    let entry = refinement_table().entry(sigma)?;
    Ok(entry.words.contains(w) || entry.candidates.contains(w))
}

/// `w₀ ⊑ w₁`: `w₀` splits into consecutive nonempty blocks, the `k`-th
/// refining the `k`-th letter of `w₁`.
pub fn refines_word(w0: &Word, w1: &Word) -> Result<bool, WeylError> {
    let table = refinement_table();
    for sigma in w1.letters() {
        table.entry(sigma)?;
    }
    let n = w0.len();
    let m = w1.len();
    // reach[k][i]: the first k letters of w1 are refined by w0[..i].
    let mut reach = vec![vec![false; n + 1]; m + 1];
    reach[0][0] = true;
    for k in 0..m {
        for i in 0..=n {
            if !reach[k][i] {
                continue;
            }
            for j in i + 1..=n {
                if refines_letter(&w0.slice(i, j), &w1.letters()[k])? {
                    reach[k + 1][j] = true;
                }
            }
        }
    }
    Ok(reach[m][n])
}

/// All words `w₁` over tabulated letters with `w₀ ⊑ w₁`.
pub fn coarsenings(w0: &Word) -> Vec<Word> {
    let table = refinement_table();
    let n = w0.len();
    let mut results: Vec<Vec<Vec<Permutation>>> = vec![Vec::new(); n + 1];
    results[0].push(Vec::new());
    for j in 1..=n {
        let mut here = Vec::new();
        for i in 0..j {
            let above = table.letters_above(&w0.slice(i, j));
            if above.is_empty() {
                continue;
            }
            for prefix in &results[i] {
                for sigma in above {
                    let mut v = prefix.clone();
                    v.push(*sigma);
                    here.push(v);
                }
            }
        }
        results[j] = here;
    }
    let mut out: Vec<Word> = results[n].iter().cloned().map(Word).collect();
    out.sort();
    out.dedup();
    out
}

/// The pairs `(w, σ)` with `w ∈ M*`, `w ⊑ σ` and `w ≠ σ`, sorted.
pub fn nontrivial_m_star_pairs() -> Vec<(Word, Permutation)> {
    let t = refinement_table();
    let mut pairs = Vec::new();
    for sigma in t.letters() {
        let e = &t.entries[&sigma.name()];
        for word in e.words.iter().chain(e.candidates.iter()) {
            if word.in_m_star() && *word != Word::single(*sigma) {
                pairs.push((word.clone(), *sigma));
            }
        }
    }
    pairs.sort();
    pairs.dedup();
    pairs
}

/// Outcome of checking that coarsening preserves `M*` and `μ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureReport {
    pub max_len: usize,
    pub words_checked: usize,
    pub coarsenings_checked: usize,
    /// `(w₀, w₁)` with `w₀ ⊑ w₁` and `w₁ ∉ M*` or `μ(w₁) ≠ μ(w₀)`.
    pub violations: Vec<(Word, Word)>,
}

/// For every `w₀ ∈ M*` with `|w₀| ≤ max_len` and every `w₁ ⊒ w₀`,
/// checks `w₁ ∈ M*` and `μ(w₁) = μ(w₀)`.
pub fn check_m_star_closure(max_len: usize) -> ClosureReport {
    let letters = m_letters();
    let mut layer = vec![Word::empty()];
    let mut report = ClosureReport { max_len, words_checked: 0, coarsenings_checked: 0, violations: Vec::new() };
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |p| w.concat(&Word::single(*p)))).collect();
        for w0 in &layer {
            report.words_checked += 1;
            let m0 = mu(w0).expect("words over M have a grading");
            for w1 in coarsenings(w0) {
                report.coarsenings_checked += 1;
                if !w1.in_m_star() || mu(&w1).ok() != Some(m0) {
                    report.violations.push((w0.clone(), w1));
                }
            }
        }
    }
    report
}

/// Whether a word has a letter in `Y₂ = {a, b, c, ba, ab, bc}`.
pub fn in_y2(w: &Word) -> bool {
    let y2 = ["a", "b", "c", "ba", "ab", "bc"].map(perm);
    w.letters().iter().any(|p| y2.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::word::{m_star_words, mu, MuVector};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn printed_entries() {
        let t = refinement_table();
        assert_eq!(t.entry(&perm("aba")).unwrap().words.len(), 9);
        assert_eq!(t.entry(&perm("cba")).unwrap().words.len(), 13);
        assert!(refines_letter(&w("[aba]"), &perm("bacb")).unwrap());
        assert!(refines_letter(&w("[aba][cba]"), &Permutation::ETA).unwrap());
        assert!(refines_letter(&w("[ac]"), &perm("cba")).unwrap());
        assert!(!w("[ac]").in_m_star());
        assert!(matches!(refines_letter(&w("a"), &perm("ab")), Err(WeylError::UnsupportedLetter(_))));
    }

    #[test]
    fn each_letter_refines_itself() {
        let t = refinement_table();
        for sigma in t.letters() {
            assert!(refines_letter(&Word::single(*sigma), sigma).unwrap());
        }
    }

    #[test]
    fn printed_entries_preserve_hat() {
        let t = refinement_table();
        for sigma in t.letters() {
            let e = t.entry(sigma).unwrap();
            for word in &e.words {
                assert_eq!(word_hat(word), hat_of(sigma), "{word} ⊑ {sigma}");
            }
        }
    }

    #[test]
    fn printed_entries_fit_under_multiplicity() {
        let t = refinement_table();
        for sigma in t.letters() {
            let target = combinatorial_multiplicity(sigma);
            for word in &t.entry(sigma).unwrap().words {
                let m = word_multiplicity(word);
                for k in 0..3 {
                    assert!(m[k] <= target[k] && (target[k] - m[k]).is_multiple_of(2), "{word} ⊑ {sigma}");
                }
            }
        }
    }

    #[test]
    fn word_refinement() {
        let ww = w("[aba][cba]");
        assert!(refines_word(&ww, &ww).unwrap());
        assert!(refines_word(&w("[aba][cba][aba][cba]"), &w("ηη")).unwrap());
        assert!(!refines_word(&w("[aba][aba]"), &w("η")).unwrap());
    }

    #[test]
    fn lemma_pairs() {
        let pairs: Vec<(String, String)> =
            nontrivial_m_star_pairs().into_iter().map(|(w, p)| (w.to_string(), p.name())).collect();
        let mut expected = vec![
            ("[aba]".to_string(), "bacb".to_string()),
            ("[bcb]".to_string(), "bacb".to_string()),
            ("[aba][cba]".to_string(), "abacba".to_string()),
            ("[cba][aba]".to_string(), "abacba".to_string()),
        ];
        expected.sort();
        let mut pairs = pairs;
        pairs.sort();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn short_words_coarsen_inside_m_star() {
        let r = check_m_star_closure(3);
        assert_eq!(r.words_checked, 5 + 25 + 125);
        assert!(r.coarsenings_checked >= r.words_checked);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn coarsenings_preserve_mu() {
        for m in [MuVector::new(1, 1), MuVector::new(2, 1)] {
            for w0 in m_star_words(m) {
                for w1 in coarsenings(&w0) {
                    assert!(w1.in_m_star());
                    assert_eq!(mu(&w1).unwrap(), m);
                    assert!(refines_word(&w0, &w1).unwrap());
                }
            }
        }
    }

    #[test]
    fn y2_predicate() {
        assert!(in_y2(&w("a[ba]")));
        assert!(!in_y2(&w("[aba][cba]")));
    }
}
