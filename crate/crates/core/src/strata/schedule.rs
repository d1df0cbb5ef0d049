//! `I`-equivalence of strata and the schedule of triple merges obtained
//! by removing the hyperplanes `H_{i,j}` one at a time.

use std::collections::BTreeMap;

use serde::Serialize;

use super::polytope::{sample_point, sign_vector, strata_enumerate};
use crate::error::StrataError;
use crate::weyl::Word;

/// Sign vectors of every stratum, computed on exact sample points.
fn signed_strata(mu0: usize, mu1: usize) -> Vec<(Word, Vec<i8>)> {
    strata_enumerate(mu0, mu1)
        .into_iter()
        .map(|s| {
            let p = sample_point(&s.word).expect("enumerated words are over M•");
            (s.word, sign_vector(&p))
        })
        .collect()
}

fn check_index_set(set: &[(usize, usize)], mu0: usize, mu1: usize) -> Result<(), StrataError> {
    match set.iter().find(|&&(i, j)| i == 0 || j == 0 || i > mu0 || j > mu1) {
        Some(&(i, j)) => Err(StrataError::InvalidIndexSet(i, j)),
        None => Ok(()),
    }
}

/// Groups the strata by their signs on the retained hyperplanes.
fn classes_of(strata: &[(Word, Vec<i8>)], retained: &[(usize, usize)], mu1: usize) -> BTreeMap<Vec<i8>, Vec<Word>> {
    let mut out: BTreeMap<Vec<i8>, Vec<Word>> = BTreeMap::new();
    for (w, s) in strata {
        let key = retained.iter().map(|&(i, j)| s[(i - 1) * mu1 + (j - 1)]).collect();
        out.entry(key).or_default().push(w.clone());
    }
    out
}

/// The partition of the strata of `T_{μ0,μ1}` into `I`-equivalence
/// classes: two strata are equivalent when no hyperplane `H_{i,j}` with
/// `(i, j) ∈ I` (1-based) separates them. Classes are sorted.
pub fn i_equivalence(set: &[(usize, usize)], mu0: usize, mu1: usize) -> Result<Vec<Vec<Word>>, StrataError> {
    check_index_set(set, mu0, mu1)?;
    let mut retained = set.to_vec();
    retained.sort();
    retained.dedup();
    let mut classes: Vec<Vec<Word>> = classes_of(&signed_strata(mu0, mu1), &retained, mu1)
        .into_values()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    classes.sort();
    Ok(classes)
}

/// The removal of one hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeEvent {
    /// The removed hyperplane `(i, j)`, 1-based.
    pub removed: (usize, usize),
    /// Classes glued along the hyperplane, as `(W⁻, W⁰, W⁺)`.
    pub triples: Vec<[Vec<Word>; 3]>,
    pub classes_before: usize,
    pub classes_after: usize,
}

/// The full event log of a contraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Schedule {
    pub mu: (usize, usize),
    pub strata: usize,
    pub events: Vec<MergeEvent>,
    pub final_classes: usize,
}

/// Starting from the finest stratification, removes the hyperplanes in
/// lexicographic order. Each class of the coarser stratification is
/// either a class of the finer one or the union of exactly three classes
/// `W⁻ ⊔ W⁰ ⊔ W⁺`, with `W⁰` on the removed hyperplane; anything else is
/// reported as `NonTripleMerge`.
pub fn contraction_schedule(mu0: usize, mu1: usize) -> Result<Schedule, StrataError> {
    let strata = signed_strata(mu0, mu1);
    let mut retained: Vec<(usize, usize)> = (1..=mu0).flat_map(|i| (1..=mu1).map(move |j| (i, j))).collect();
    let mut events = Vec::new();
    let mut before = classes_of(&strata, &retained, mu1).len();
    while !retained.is_empty() {
        let removed = retained.remove(0);
        // With `removed` placed last, dropping the final sign of a key
        // gives the key of the coarser class.
        let mut keyed = retained.clone();
        keyed.push(removed);
        let fine = classes_of(&strata, &keyed, mu1);
        let mut coarse: BTreeMap<Vec<i8>, Vec<(i8, Vec<Word>)>> = BTreeMap::new();
        for (key, words) in fine {
            let (side, rest) = key.split_last().expect("key contains the removed sign");
            coarse.entry(rest.to_vec()).or_default().push((*side, words));
        }
        let mut triples = Vec::new();
        for parts in coarse.values() {
            match parts.len() {
                1 => {}
                3 => {
                    let mut sides = [Vec::new(), Vec::new(), Vec::new()];
                    for (s, words) in parts {
                        sides[(s + 1) as usize] = words.clone();
                    }
                    if sides.iter().any(|s| s.is_empty()) {
                        return Err(StrataError::NonTripleMerge(parts.len()));
                    }
                    triples.push(sides);
                }
                n => return Err(StrataError::NonTripleMerge(n)),
            }
        }
        let after = coarse.len();
        events.push(MergeEvent { removed, triples, classes_before: before, classes_after: after });
        before = after;
    }
    Ok(Schedule { mu: (mu0, mu1), strata: strata.len(), events, final_classes: before })
}
