//! Vanishing orders of the lower-left minors along a convex germ through
//! a Bruhat cell.
//!
//! For `σ ∈ S4 ∖ {e}` pick a generic `z ∈ Bru_{acute(ησ)}` and follow
//! `Γ(t) = z exp(tΛ)`. The minors `m₁, m₂, m₃` of `Π(Γ(t))` vanish at
//! `t = 0` to orders that depend only on `σ`; they are measured here by a
//! log-log fit over decreasing scales.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;
use super::word::Word;
use crate::bruhat::random_cell_matrix;
use crate::error::WeylError;
use crate::linalg::lower_left_minors;
use crate::spin4::{exp_tangent, pi_matrix, SpinTangent};

/// Parameters of the numerical order fit.
#[derive(Clone, Debug)]
pub struct MultiplicityOptions {
    /// Number of random cell points; all must agree.
    pub points: usize,
    pub seed: u64,
    /// Germ scales `t_k = 10^(−2 − 0.2 k)`, `k = 0..scales`.
    pub scales: usize,
    /// Maximum deviation of the fitted slope from an integer.
    pub slope_tol: f64,
}

impl Default for MultiplicityOptions {
    fn default() -> Self {
        MultiplicityOptions { points: 10, seed: 0x5eed, scales: 6, slope_tol: 0.1 }
    }
}

/// Numerically fitted vanishing orders of `(m₁, m₂, m₃)` for the letter `σ`.
pub fn letter_multiplicity(sigma: &Permutation) -> Result<[usize; 3], WeylError> {
    letter_multiplicity_with(sigma, &MultiplicityOptions::default())
}

pub fn letter_multiplicity_with(sigma: &Permutation, opts: &MultiplicityOptions) -> Result<[usize; 3], WeylError> {
    if sigma.is_identity() {
        return Err(WeylError::Parse { input: "e".into(), reason: "the identity is not a letter".into() });
    }
    let rho = Permutation::ETA * *sigma;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let lambda = SpinTangent::lambda();
    let scales: Vec<f64> = (0..opts.scales).map(|k| 10f64.powf(-2.0 - 0.2 * k as f64)).collect();
    let germ: Vec<_> = scales.iter().map(|&t| pi_matrix(exp_tangent(lambda, t)).0).collect();
    let mut result: Option<[usize; 3]> = None;
    for _ in 0..opts.points.max(1) {
        let q = random_cell_matrix(&rho, &mut rng);
        let mut orders = [0usize; 3];
        for (j, order) in orders.iter_mut().enumerate() {
            let pts: Vec<(f64, f64)> = scales
                .iter()
                .zip(germ.iter())
                .map(|(&t, g)| (t.ln(), lower_left_minors(&(q * g))[j].abs().max(1e-300).ln()))
                .collect();
            let slope = fit_slope(&pts);
            let rounded = slope.round();
            if (slope - rounded).abs() > opts.slope_tol || rounded < 0.0 {
                return Err(WeylError::AmbiguousOrder { letter: sigma.name(), minor: j + 1, slope });
            }
            *order = rounded as usize;
        }
        match result {
            None => result = Some(orders),
            Some(prev) if prev != orders => return Err(WeylError::InconsistentOrder(sigma.name())),
            _ => {}
        }
    }
    Ok(result.expect("at least one point"))
}

fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Closed form of the letter multiplicity: the order of minor `j` is the
/// number of inversions of `σ` straddling the cut between positions `j`
/// and `j+1`.
pub fn combinatorial_multiplicity(sigma: &Permutation) -> [usize; 3] {
    [sigma.cut_crossings(1), sigma.cut_crossings(2), sigma.cut_crossings(3)]
}

/// Componentwise sum of the letter multiplicities of a word.
pub fn word_multiplicity(w: &Word) -> [usize; 3] {
    w.letters().iter().fold([0; 3], |acc, p| {
        let m = combinatorial_multiplicity(p);
        [acc[0] + m[0], acc[1] + m[1], acc[2] + m[2]]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::from_word_str(s).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(combinatorial_multiplicity(&p("bacb")), [2, 4, 2]);
        assert_eq!(combinatorial_multiplicity(&p("a")), [1, 0, 0]);
        assert_eq!(combinatorial_multiplicity(&Permutation::ETA), [3, 4, 3]);
        assert_eq!(combinatorial_multiplicity(&p("cba")), [1, 2, 3]);
    }

    #[test]
    fn numeric_orders_for_named_letters() {
        assert_eq!(letter_multiplicity(&p("bacb")).unwrap(), [2, 4, 2]);
        assert_eq!(letter_multiplicity(&p("a")).unwrap(), [1, 0, 0]);
        assert_eq!(letter_multiplicity(&p("aba")).unwrap(), [2, 2, 0]);
    }

    #[test]
    fn numeric_orders_match_closed_form_for_all_letters() {
        let opts = MultiplicityOptions { points: 3, ..Default::default() };
        for sigma in Permutation::all().iter().filter(|s| !s.is_identity()) {
            assert_eq!(letter_multiplicity_with(sigma, &opts).unwrap(), combinatorial_multiplicity(sigma), "{sigma:?}");
        }
    }
}
