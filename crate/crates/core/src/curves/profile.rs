//! Curvature data `κ₁, κ₂, κ₃ > 0` on `[0, 1]` and the initial point of the
//! curve they determine.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::CurveError;
use crate::spin4::SpinPoint;

/// One polynomial piece `Σ cₖ (t − start)^k` on `[start, end]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyPiece {
    pub start: f64,
    pub end: f64,
    pub coeffs: Vec<f64>,
}

/// `c₀ + Σ_k (aₖ cos 2πkt + bₖ sin 2πkt)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    pub c0: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPoly {
    pub fn eval(&self, t: f64) -> f64 {
        let w = 2.0 * std::f64::consts::PI * t;
        let mut v = self.c0;
        for (k, a) in self.cos.iter().enumerate() {
            v += a * (w * (k + 1) as f64).cos();
        }
        for (k, b) in self.sin.iter().enumerate() {
            v += b * (w * (k + 1) as f64).sin();
        }
        v
    }
}

/// A single curvature function.
#[derive(Clone)]
pub enum Kappa {
    Constant(f64),
    Trig(TrigPoly),
    /// Pieces must cover the evaluation range; the last piece containing
    /// `t` wins at breakpoints.
    Pieces(Vec<PolyPiece>),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Constant(c) => write!(f, "Constant({c})"),
            Kappa::Trig(p) => write!(f, "{p:?}"),
            Kappa::Pieces(p) => write!(f, "Pieces({} pieces)", p.len()),
            Kappa::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl Kappa {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Kappa::Constant(c) => *c,
            Kappa::Trig(p) => p.eval(t),
            Kappa::Pieces(pieces) => {
                let piece = pieces.iter().rev().find(|p| t >= p.start && t <= p.end).or_else(|| {
                    if t < pieces[0].start {
                        pieces.first()
                    } else {
                        pieces.last()
                    }
                });
                match piece {
                    Some(p) => p.coeffs.iter().rev().fold(0.0, |acc, c| acc * (t - p.start) + c),
                    None => f64::NAN,
                }
            }
            Kappa::Custom(f) => f(t),
        }
    }
}

/// The serializable forms of [`Kappa`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KappaSpec {
    Constant { value: f64 },
    Trig(TrigPoly),
    Pieces { pieces: Vec<PolyPiece> },
}

impl From<KappaSpec> for Kappa {
    fn from(s: KappaSpec) -> Self {
        match s {
            KappaSpec::Constant { value } => Kappa::Constant(value),
            KappaSpec::Trig(p) => Kappa::Trig(p),
            KappaSpec::Pieces { pieces } => Kappa::Pieces(pieces),
        }
    }
}

/// Profile input as read from JSON: three curvature functions, an
/// optional initial point `[l.w, l.x, l.y, l.z, r.w, r.x, r.y, r.z]` and
/// an optional interval (default `[0, 1]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub kappa: [KappaSpec; 3],
    #[serde(default)]
    pub initial: Option<[f64; 8]>,
    #[serde(default)]
    pub interval: Option<[f64; 2]>,
}

/// Three positive curvature functions on an interval and the initial
/// point `Γ(start)`.
#[derive(Clone, Debug)]
pub struct CurvatureProfile {
    pub kappa: [Kappa; 3],
    pub initial: SpinPoint,
    pub start: f64,
    pub end: f64,
}

/// Number of grid points used to check positivity.
const POSITIVITY_GRID: usize = 1000;

impl CurvatureProfile {
    /// Builds a profile on `[0, 1]` starting at the identity.
    pub fn new(kappa: [Kappa; 3]) -> Result<Self, CurveError> {
        Self::with_initial(kappa, SpinPoint::IDENTITY, 0.0, 1.0)
    }

    pub fn with_initial(kappa: [Kappa; 3], initial: SpinPoint, start: f64, end: f64) -> Result<Self, CurveError> {
        if !(end > start) {
            return Err(CurveError::Invalid(format!("empty interval [{start}, {end}]")));
        }
        if (initial.unit_defect()) > 1e-9 {
            return Err(CurveError::Invalid("initial point is not a unit pair".into()));
        }
        let p = CurvatureProfile { kappa, initial: initial.normalize(), start, end };
        p.check_positive()?;
        Ok(p)
    }

    /// Constant curvatures.
    pub fn constant(k: [f64; 3]) -> Result<Self, CurveError> {
        Self::new(k.map(Kappa::Constant))
    }

    pub fn from_spec(spec: ProfileSpec) -> Result<Self, CurveError> {
        let [a, b, c] = spec.kappa;
        let initial = match spec.initial {
            Some(v) => SpinPoint::from_array(v),
            None => SpinPoint::IDENTITY,
        };
        let [s, e] = spec.interval.unwrap_or([0.0, 1.0]);
        Self::with_initial([a.into(), b.into(), c.into()], initial, s, e)
    }

    fn check_positive(&self) -> Result<(), CurveError> {
        for k in 0..=POSITIVITY_GRID {
            let t = self.start + (self.end - self.start) * k as f64 / POSITIVITY_GRID as f64;
            for (index, kappa) in self.kappa.iter().enumerate() {
                let v = kappa.eval(t);
                if !(v > 0.0) {
                    return Err(CurveError::NonPositiveCurvature { index: index + 1, t });
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> [f64; 3] {
        [self.kappa[0].eval(t), self.kappa[1].eval(t), self.kappa[2].eval(t)]
    }

    /// The profile of the reparametrized curve `s ↦ Γ(φ(s))` for an
    /// increasing `φ: [s₀, s₁] → [start, end]` with derivative `dφ`.
    pub fn reparametrize<F, G>(&self, phi: F, dphi: G, s0: f64, s1: f64) -> Result<Self, CurveError>
    where
        F: Fn(f64) -> f64 + Send + Sync + Clone + 'static,
        G: Fn(f64) -> f64 + Send + Sync + Clone + 'static,
    {
        let kappa = std::array::from_fn(|j| {
            let k = self.kappa[j].clone();
            let (phi, dphi) = (phi.clone(), dphi.clone());
            Kappa::Custom(Arc::new(move |s| k.eval(phi(s)) * dphi(s)))
        });
        Self::with_initial(kappa, self.initial, s0, s1)
    }
}

/// Parameters of the random profile distribution: each `κⱼ` is a
/// trigonometric polynomial `c₀ + Σ_{k ≤ K} (aₖ cos 2πkt + bₖ sin 2πkt)`
/// with `c₀` uniform in `[mean_min, mean_max]` and `(aₖ, bₖ)` uniform in
/// a box scaled so that `Σ |aₖ| + |bₖ| ≤ ripple · c₀`, which keeps
/// `κⱼ ≥ (1 − ripple) c₀ > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomProfileOptions {
    pub harmonics: usize,
    pub mean_min: f64,
    pub mean_max: f64,
    pub ripple: f64,
}

impl Default for RandomProfileOptions {
    fn default() -> Self {
        RandomProfileOptions { harmonics: 3, mean_min: 4.0, mean_max: 12.0, ripple: 0.6 }
    }
}

/// A seeded random profile on `[0, 1]` starting at the identity.
pub fn random_profile(seed: u64, opts: &RandomProfileOptions) -> CurvatureProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kappa = std::array::from_fn(|_| Kappa::Trig(random_trig(&mut rng, opts)));
    CurvatureProfile::new(kappa).expect("random profiles are positive by construction")
}

fn random_trig<R: Rng>(rng: &mut R, opts: &RandomProfileOptions) -> TrigPoly {
    let c0 = rng.gen_range(opts.mean_min..=opts.mean_max);
    let n = opts.harmonics;
    let bound = if n == 0 { 0.0 } else { opts.ripple * c0 / (2 * n) as f64 };
    let cos = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    let sin = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    TrigPoly { c0, cos, sin }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_evaluate_as_shifted_polynomials() {
        let k = Kappa::Pieces(vec![
            PolyPiece { start: 0.0, end: 0.5, coeffs: vec![1.0, 2.0] },
            PolyPiece { start: 0.5, end: 1.0, coeffs: vec![2.0, 0.0, 4.0] },
        ]);
        assert_eq!(k.eval(0.25), 1.5);
        assert_eq!(k.eval(0.75), 2.0 + 4.0 * 0.0625);
    }

    #[test]
    fn random_profiles_are_positive_and_reproducible() {
        let opts = RandomProfileOptions::default();
        for seed in 0..50 {
            let p = random_profile(seed, &opts);
            let q = random_profile(seed, &opts);
            for t in [0.0, 0.3, 0.77, 1.0] {
                assert_eq!(p.eval(t), q.eval(t));
                assert!(p.eval(t).iter().all(|v| *v > 0.0));
            }
        }
    }

    #[test]
    fn nonpositive_profile_rejected() {
        let r = CurvatureProfile::new([Kappa::Constant(1.0), Kappa::Constant(-1.0), Kappa::Constant(1.0)]);
        assert!(matches!(r, Err(CurveError::NonPositiveCurvature { index: 2, .. })));
    }

    #[test]
    fn spec_round_trip() {
        let json = r#"{"kappa":[{"kind":"constant","value":1.0},
            {"kind":"trig","c0":2.0,"cos":[0.5],"sin":[]},
            {"kind":"pieces","pieces":[{"start":0.0,"end":1.0,"coeffs":[1.0,1.0]}]}]}"#;
        let spec: ProfileSpec = serde_json::from_str(json).unwrap();
        let p = CurvatureProfile::from_spec(spec).unwrap();
        assert_eq!(p.eval(0.0), [1.0, 2.5, 1.0]);
    }
}
