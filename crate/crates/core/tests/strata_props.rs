use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use spincurve::strata::{bouquet, parse_central, point_to_word, sample_point, strata_enumerate, TPoint};
use spincurve::weyl::{m_star_words, similar_words, MuVector, Word};

/// Every word reachable by placing the times on the grid `k/(n+1)`.
fn grid_words(mu0: usize, mu1: usize, n: usize) -> BTreeSet<Word> {
    fn increasing(len: usize, lo: usize, n: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![vec![]];
        }
        (lo..=n)
            .flat_map(|k| {
                increasing(len - 1, k + 1, n).into_iter().map(move |mut rest| {
                    rest.insert(0, k);
                    rest
                })
            })
            .collect()
    }
    let q = |v: &[usize]| v.iter().map(|&k| BigRational::new(BigInt::from(k), BigInt::from(n + 1))).collect();
    let mut out = BTreeSet::new();
    for a in increasing(mu0, 1, n) {
        for b in increasing(mu1, 1, n) {
            out.insert(point_to_word(&TPoint::new(q(&a), q(&b)).unwrap()));
        }
    }
    out
}

#[test]
fn enumeration_matches_grid_brute_force() {
    for m0 in 0..=3 {
        for m1 in 0..=3 {
            let listed: BTreeSet<Word> = strata_enumerate(m0, m1).into_iter().map(|s| s.word).collect();
            assert_eq!(listed, grid_words(m0, m1, m0 + m1), "({m0},{m1})");
        }
    }
    assert_eq!(strata_enumerate(2, 2).len(), 13);
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn open_strata_are_the_interleavings() {
    for m0 in 0..=4 {
        for m1 in 0..=4 {
            let open = strata_enumerate(m0, m1).iter().filter(|s| s.n_eta == 0).count();
            assert_eq!(open, binomial(m0 + m1, m0));
        }
    }
}

#[test]
fn similar_expansion_reproduces_m_star() {
    let aba: Word = "[aba]".parse().unwrap();
    for m0 in 0..=3 {
        for m1 in 0..=3 {
            let mut all = Vec::new();
            for s in strata_enumerate(m0, m1) {
                let class = similar_words(&s.word);
                assert_eq!(class.len(), 3usize.pow(s.word.count(&aba.letters()[0]) as u32));
                all.extend(class);
            }
            all.sort();
            assert_eq!(all, m_star_words(MuVector::new(m0, m1)));
        }
    }
}

#[test]
fn bouquet_multiplicities_grow_by_one() {
    for (z, k) in [("1", 4), ("-1", 2), ("ac", 2), ("-ac", 0)] {
        let spheres = bouquet(&parse_central(z).unwrap(), 40).unwrap().spheres;
        let mut j = 0;
        while k + 4 * j <= 40 {
            let d = k + 4 * j;
            assert_eq!(spheres.iter().filter(|&&x| x == d).count(), j + 1, "z1 = {z}, dim {d}");
            j += 1;
        }
        assert!(spheres.iter().all(|d| d % 2 == 0 && *d >= k && (d - k) % 4 == 0));
    }
}

fn tpoint() -> impl Strategy<Value = TPoint> {
    let tuple = || proptest::collection::btree_set(1u32..12, 0..=3);
    (tuple(), tuple()).prop_map(|(a, b)| {
        let q = |s: BTreeSet<u32>| s.into_iter().map(|k| BigRational::new(BigInt::from(k), BigInt::from(12))).collect();
        TPoint::new(q(a), q(b)).unwrap()
    })
}

proptest! {
    #[test]
    fn word_is_constant_on_the_stratum(p in tpoint()) {
        let w = point_to_word(&p);
        let s = sample_point(&w).unwrap();
        prop_assert_eq!(point_to_word(&s), w.clone());
        prop_assert_eq!(
            spincurve::strata::sign_vector(&s),
            spincurve::strata::sign_vector(&p)
        );
        let (m0, m1) = p.mu();
        prop_assert!(strata_enumerate(m0, m1).iter().any(|st| st.word == w));
    }
}
