//! Itineraries: the word of letters `σⱼ` recorded at the singular times
//! `tⱼ`, where `Γ(tⱼ)` lies in the cell labelled `ρⱼ = η σⱼ`, together
//! with the open-cell components visited in between.

use serde::Serialize;

use super::frame::FrameCurve;
use super::singular::{singular_set, SingularOptions, SingularTime};
use crate::bruhat::{chop_adv, spin_lift_rep_with, SignedRep};
use crate::error::{BruhatError, CurveError};
use crate::spin4::SpinPoint;
use crate::weyl::{mu, Permutation, Word};

/// Tolerances of the itinerary computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItineraryOptions {
    pub singular: SingularOptions,
    /// Rank thresholds tried in order when classifying a singular frame;
    /// the first unambiguous classification wins.
    pub rank_tols: Vec<f64>,
    /// Rank thresholds tried in order when classifying the open-cell
    /// components; decreasing, since an open frame has full rank.
    pub open_tols: Vec<f64>,
}

impl Default for ItineraryOptions {
    fn default() -> Self {
        ItineraryOptions {
            singular: SingularOptions::default(),
            rank_tols: vec![1e-8, 1e-7, 1e-6, 1e-5],
            open_tols: vec![1e-8, 1e-10, 1e-12],
        }
    }
}

/// The itinerary of a curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Itinerary {
    pub word: Word,
    /// Singular times `t₁ < ⋯ < t_ℓ`.
    pub times: Vec<f64>,
    /// The representative `zⱼ ∈ B̃4⁺` of the cell component at `tⱼ`.
    pub cells: Vec<SignedRep>,
    /// Minor data at each singular time.
    pub singular: Vec<SingularTime>,
    /// The `ℓ + 1` open-cell components visited before, between and
    /// after the singular times.
    pub components: Vec<SignedRep>,
    pub endpoint: SpinPoint,
}

/// The JSON form of an itinerary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItineraryRecord {
    pub word: Vec<String>,
    pub times: Vec<f64>,
    pub cells: Vec<String>,
    pub endpoint: [f64; 8],
    pub mu: Option<[usize; 2]>,
}

/// A failure of the chain condition between cells and components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDefect {
    /// Index of the singular time.
    pub index: usize,
    /// `(chop(zⱼ), adv(zⱼ))`.
    pub predicted: (SignedRep, SignedRep),
    /// The components classified before and after `tⱼ`.
    pub observed: (SignedRep, SignedRep),
}

/// Classifies `Γ(t)` trying each rank threshold in turn.
fn classify_with_ladder(z: SpinPoint, tols: &[f64]) -> Result<SignedRep, BruhatError> {
    let mut last = BruhatError::RankAmbiguous { value: f64::NAN, tol: f64::NAN };
    for &tol in tols {
        match spin_lift_rep_with(z, tol) {
            Ok(rep) => return Ok(rep),
            Err(e @ BruhatError::RankAmbiguous { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// The itinerary of `curve`.
///
/// Each singular time is classified from the frame itself (the minors
/// only locate it); a singular time whose frame classifies into the open
/// cell is reported as `SpuriousSingularity`.
pub fn itinerary<C: FrameCurve + ?Sized>(curve: &C, opts: &ItineraryOptions) -> Result<Itinerary, CurveError> {
    let singular = singular_set(curve, &opts.singular)?;
    let mut letters = Vec::with_capacity(singular.len());
    let mut cells = Vec::with_capacity(singular.len());
    for s in &singular {
        let rep = classify_with_ladder(curve.spin_at(s.t), &opts.rank_tols)?;
        if rep.is_open() {
            let value = curve.minors_at(s.t).iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
            return Err(CurveError::SpuriousSingularity { t: s.t, value });
        }
        letters.push(Permutation::ETA * rep.perm);
        cells.push(rep);
    }
    let (t0, t1) = curve.domain();
    let mut bounds = vec![t0];
    bounds.extend(singular.iter().map(|s| s.t));
    bounds.push(t1);
    let components = bounds
        .windows(2)
        .map(|w| {
            let rep = classify_with_ladder(curve.spin_at(0.5 * (w[0] + w[1])), &opts.open_tols)?;
            if rep.is_open() {
                Ok(rep)
            } else {
                Err(CurveError::Bruhat(BruhatError::NotOpenCell(rep.to_string())))
            }
        })
        .collect::<Result<Vec<_>, CurveError>>()?;
    Ok(Itinerary {
        word: Word(letters),
        times: singular.iter().map(|s| s.t).collect(),
        cells,
        singular,
        components,
        endpoint: curve.spin_at(t1),
    })
}

/// Whether the curve has an empty itinerary.
pub fn is_convex<C: FrameCurve + ?Sized>(curve: &C) -> Result<bool, CurveError> {
    Ok(singular_set(curve, &SingularOptions::default())?.is_empty())
}

impl Itinerary {
    /// Checks `chop(zⱼ) = cⱼ` and `adv(zⱼ) = cⱼ₊₁` for every singular
    /// time, returning the defects.
    pub fn chain_defects(&self) -> Result<Vec<ChainDefect>, CurveError> {
        let mut out = Vec::new();
        for (j, z) in self.cells.iter().enumerate() {
            let predicted = chop_adv(z)?;
            let observed = (self.components[j], self.components[j + 1]);
            if predicted != observed {
                out.push(ChainDefect { index: j, predicted, observed });
            }
        }
        Ok(out)
    }

    pub fn record(&self) -> ItineraryRecord {
        ItineraryRecord {
            word: self.word.letter_names(),
            times: self.times.clone(),
            cells: self.cells.iter().map(|c| c.to_string()).collect(),
            endpoint: self.endpoint.to_array(),
            mu: mu(&self.word).ok().map(|m| [m.mu0, m.mu1]),
        }
    }
}
