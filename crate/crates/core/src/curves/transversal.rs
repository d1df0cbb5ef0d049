//! The three-parameter family of curves transversal to the stratum of
//! itinerary `[bacb]`: the frame at time `t` is the Gram–Schmidt
//! orthogonalization of the osculating matrix
//!
//! ```text
//! ⎛ t                  1          0  0 ⎞
//! ⎜ 1                  0          0  0 ⎟
//! ⎜ t³/6 + x₂t + x₁    t²/2 + x₂  t  1 ⎟
//! ⎝ t²/2 + x₃          t          1  0 ⎠
//! ```
//!
//! whose lower-left minors `m_a, m_b, m_c` and the polynomials
//! `q_[ab], q_[ba], q_[ac], q_[bc], q_[cb]` cut the parameter sphere into
//! regions of constant itinerary.

use std::collections::BTreeMap;

use nalgebra::Matrix4;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::frame::MatrixCurve;
use super::itinerary::{itinerary, Itinerary, ItineraryOptions};
use super::poly::{determinant, discriminant, rat, resultant, Poly, T, X1, X2, X3};
use crate::error::CurveError;
use crate::weyl::{dim_word, Word};

/// Half-length of the default time window; it contains every real root
/// of the minors for parameters in the closed unit ball.
pub const DEFAULT_WINDOW: f64 = 4.0;

/// Default number of lift nodes on the time window.
pub const DEFAULT_SAMPLES: usize = 801;

/// A parameter point `(x₁, x₂, x₃)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalPoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl TransversalPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        TransversalPoint { x1, x2, x3 }
    }

    pub fn origin() -> Self {
        TransversalPoint::new(0.0, 0.0, 0.0)
    }

    pub fn norm(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn neg(&self) -> Self {
        TransversalPoint::new(-self.x1, -self.x2, -self.x3)
    }

    /// The point `r (cos θ, sin θ cos φ, −sin θ sin φ)`: `θ` is measured
    /// from `e₁` and `φ` runs along the equator through `e₂, −e₃, −e₂, e₃`.
    pub fn on_sphere(r: f64, theta: f64, phi: f64) -> Self {
        TransversalPoint::new(r * theta.cos(), r * theta.sin() * phi.cos(), -r * theta.sin() * phi.sin())
    }
}

/// The osculating matrix `M(t)` of the family.
pub fn transversal_matrix(p: TransversalPoint, t: f64) -> Matrix4<f64> {
    let TransversalPoint { x1, x2, x3 } = p;
    Matrix4::new(
        t,
        1.0,
        0.0,
        0.0, //
        1.0,
        0.0,
        0.0,
        0.0, //
        t * t * t / 6.0 + x2 * t + x1,
        t * t / 2.0 + x2,
        t,
        1.0, //
        t * t / 2.0 + x3,
        t,
        1.0,
        0.0,
    )
}

/// The time window `[−w, w]` used for a parameter of norm `r`.
pub fn window_for(r: f64) -> f64 {
    DEFAULT_WINDOW * r.sqrt().max(1.0)
}

/// The lifted curve of the family on `[−window, window]`, starting at the
/// canonical preimage of its first frame.
pub fn transversal_curve(p: TransversalPoint, window: f64, samples: usize) -> Result<MatrixCurve, CurveError> {
    MatrixCurve::new(move |t| transversal_matrix(p, t), -window, window, samples, None)
}

/// The closed forms `(m_a, m_b, m_c)` at `(p, t)`.
pub fn transversal_minors(p: TransversalPoint, t: f64) -> [f64; 3] {
    let TransversalPoint { x1, x2, x3 } = p;
    let t2 = t * t;
    [t2 / 2.0 + x3, -t2 * t2 / 12.0 + (x2 - x3) * t2 / 2.0 + x1 * t - x2 * x3, -t2 / 2.0 + x2]
}

fn v(i: usize) -> Poly {
    Poly::var(i)
}

fn c(n: i64, d: i64) -> Poly {
    Poly::constant(rat(n, d))
}

/// `M(t)` with polynomial entries.
pub fn transversal_matrix_poly() -> Vec<Vec<Poly>> {
    let t = v(T);
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    vec![
        vec![t.clone(), c(1, 1), c(0, 1), c(0, 1)],
        vec![c(1, 1), c(0, 1), c(0, 1), c(0, 1)],
        vec![&(&t3.scale(&rat(1, 6)) + &(&v(X2) * &t)) + &v(X1), &t2.scale(&rat(1, 2)) + &v(X2), t.clone(), c(1, 1)],
        vec![&t2.scale(&rat(1, 2)) + &v(X3), t.clone(), c(1, 1), c(0, 1)],
    ]
}

/// The closed forms of `m_a, m_b, m_c` as polynomials.
pub fn minor_polys() -> [Poly; 3] {
    let t2 = &v(T) * &v(T);
    let t4 = &t2 * &t2;
    let ma = &t2.scale(&rat(1, 2)) + &v(X3);
    let mb = &(&(&t4.scale(&rat(-1, 12)) + &(&(&v(X2) - &v(X3)) * &t2).scale(&rat(1, 2))) + &(&v(X1) * &v(T)))
        - &(&v(X2) * &v(X3));
    let mc = &t2.scale(&rat(-1, 2)) + &v(X2);
    [ma, mb, mc]
}

/// Lower-left minors of orders 1, 2, 3 of the polynomial matrix `M(t)`,
/// expanded by cofactors.
pub fn expanded_minor_polys() -> [Poly; 3] {
    let m = transversal_matrix_poly();
    std::array::from_fn(|k| {
        let size = k + 1;
        let block: Vec<Vec<Poly>> = (4 - size..4).map(|i| m[i][..size].to_vec()).collect();
        determinant(&block)
    })
}

/// Names of the five `q` polynomials, in the order used everywhere.
pub const Q_NAMES: [&str; 5] = ["ab", "ba", "ac", "bc", "cb"];

/// `q_[ab], q_[ba], q_[ac], q_[bc], q_[cb]` as polynomials.
pub fn q_polys() -> [Poly; 5] {
    let (x1, x2, x3) = (v(X1), v(X2), v(X3));
    let nine_x1_sq = (&x1 * &x1).scale(&rat(9, 1));
    // Both are weighted-homogeneous of degree 6 when x₂, x₃ have weight 2
    // and x₁ weight 3, like the resultants they divide.
    let q_ba = &(&(&(&(&x2 * &x2) * &x3).scale(&rat(18, 1)) - &(&x2 * &(&x3 * &x3)).scale(&rat(12, 1)))
        + &x3.pow(3).scale(&rat(2, 1)))
        + &nine_x1_sq;
    let q_bc = &(&(&(&(&x3 * &x3) * &x2).scale(&rat(18, 1)) - &(&(&x2 * &x2) * &x3).scale(&rat(12, 1)))
        + &x2.pow(3).scale(&rat(2, 1)))
        - &nine_x1_sq;
    let sum = &x2 + &x3;
    [x3.clone(), q_ba, &sum * &sum, q_bc, x2]
}

/// The five `q` values at `p`.
pub fn q_polynomials(p: TransversalPoint) -> [f64; 5] {
    let TransversalPoint { x1, x2, x3 } = p;
    let nine = 9.0 * x1 * x1;
    [
        x3,
        18.0 * x2 * x2 * x3 - 12.0 * x2 * x3 * x3 + 2.0 * x3.powi(3) + nine,
        (x2 + x3).powi(2),
        18.0 * x2 * x3 * x3 - 12.0 * x2 * x2 * x3 + 2.0 * x2.powi(3) - nine,
        x2,
    ]
}

/// Signs of `q_[ab], q_[ba], x₂ + x₃, q_[bc], q_[cb]`: the square
/// `q_[ac]` is replaced by its signed root, whose sign separates the
/// regions on either side of its zero set.
pub fn region_signs(p: TransversalPoint) -> [i8; 5] {
    let q = q_polynomials(p);
    let s = |x: f64| {
        if x > 0.0 {
            1
        } else if x < 0.0 {
            -1
        } else {
            0
        }
    };
    [s(q[0]), s(q[1]), s(p.x2 + p.x3), s(q[3]), s(q[4])]
}

/// One resultant or discriminant identity in `t`.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: &'static str,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The six identities expressing resultants and discriminants of the
/// minors through the `q` polynomials, with both sides expanded exactly.
pub fn identities() -> Vec<Identity> {
    let [ma, mb, mc] = minor_polys();
    let [q_ab, q_ba, q_ac, q_bc, q_cb] = q_polys();
    let disc = |f: &Poly| discriminant(f, T).expect("minors have constant leading coefficients");
    vec![
        Identity { name: "res(m_a, m_b)", lhs: resultant(&ma, &mb, T), rhs: (&q_ab * &q_ba).scale(&rat(1, 72)) },
        Identity { name: "res(m_b, m_c)", lhs: resultant(&mb, &mc, T), rhs: (&q_bc * &q_cb).scale(&rat(1, 72)) },
        Identity { name: "disc(m_a)", lhs: disc(&ma), rhs: q_ab.scale(&rat(-2, 1)) },
        Identity { name: "disc(m_c)", lhs: disc(&mc), rhs: q_cb.scale(&rat(2, 1)) },
        Identity { name: "res(m_a, m_c)", lhs: resultant(&ma, &mc, T), rhs: q_ac.scale(&rat(1, 4)) },
        Identity { name: "disc(m_b)", lhs: disc(&mb), rhs: (&q_ba * &q_bc).scale(&rat(1, 432)) },
    ]
}

/// The points of the sphere of radius `r` where the zero set of a linear
/// `q` (`q_[ab] = x₃` or `q_[cb] = x₂`) is tangent to that of its partner
/// (`q_[ba]` or `q_[bc]`): on the plane of the linear factor the partner
/// restricts to `±9x₁²`, a double zero at `x₁ = 0`. Returns
/// `[(ab/ba pair), (cb/bc pair)]`, each as the two antipodal points.
pub fn tangency_points(r: f64) -> Result<[[TransversalPoint; 2]; 2], CurveError> {
    let q = q_polys();
    let zero = BigRational::zero();
    let x1_sq = &v(X1) * &v(X1);
    for (partner, var) in [(&q[1], X3), (&q[3], X2)] {
        let restricted = partner.substitute(var, &zero);
        let is_double_zero = restricted.degree_in(X2) == 0
            && restricted.degree_in(X3) == 0
            && restricted.coeff_in(X1, 2).as_constant().is_some_and(|c| !c.is_zero())
            && restricted == (&x1_sq * &restricted.coeff_in(X1, 2));
        if !is_double_zero {
            return Err(CurveError::Invalid(format!("restriction {restricted} is not a double zero")));
        }
    }
    Ok([
        [TransversalPoint::new(0.0, r, 0.0), TransversalPoint::new(0.0, -r, 0.0)],
        [TransversalPoint::new(0.0, 0.0, r), TransversalPoint::new(0.0, 0.0, -r)],
    ])
}

/// The itinerary of the family at `p` on the default window.
pub fn transversal_itinerary(p: TransversalPoint, samples: usize) -> Result<Itinerary, CurveError> {
    let curve = transversal_curve(p, window_for(p.norm()), samples)?;
    itinerary(&curve, &ItineraryOptions::default())
}

/// Parameters of a scan over the sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub radius: f64,
    /// Number of longitudes; `(longitudes + 1) / 2` latitudes are used,
    /// poles included.
    pub longitudes: usize,
    pub samples: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { radius: 1.0, longitudes: 201, samples: DEFAULT_SAMPLES }
    }
}

/// One scanned parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub lat: usize,
    pub lon: usize,
    pub point: TransversalPoint,
    /// The itinerary word, or the error message.
    pub itinerary: Result<Word, String>,
    pub q: [f64; 5],
    pub signs: [i8; 5],
}

impl ScanRow {
    pub fn word_string(&self) -> String {
        match &self.itinerary {
            Ok(w) => w.to_string(),
            Err(e) => format!("error: {e}"),
        }
    }
}

/// Scans the sphere on a latitude/longitude grid, in parallel with
/// deterministic output order (latitude-major).
pub fn scan_sphere(opts: &ScanOptions) -> Vec<ScanRow> {
    let nlon = opts.longitudes.max(1);
    let nlat = nlon.div_ceil(2);
    let jobs: Vec<(usize, usize)> = (0..nlat).flat_map(|i| (0..nlon).map(move |j| (i, j))).collect();
    jobs.par_iter()
        .map(|&(i, j)| {
            let theta = if nlat > 1 { std::f64::consts::PI * i as f64 / (nlat - 1) as f64 } else { 0.0 };
            let phi = 2.0 * std::f64::consts::PI * j as f64 / nlon as f64;
            let point = TransversalPoint::on_sphere(opts.radius, theta, phi);
            let itinerary = transversal_itinerary(point, opts.samples).map(|it| it.word).map_err(|e| e.to_string());
            ScanRow { lat: i, lon: j, point, itinerary, q: q_polynomials(point), signs: region_signs(point) }
        })
        .collect()
}

/// Result of checking that itineraries are constant on sign regions.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RegionReport {
    /// Grid points farther than the margin from every zero set.
    pub interior_points: usize,
    /// Connected components of interior points with equal sign vectors.
    pub regions: usize,
    /// Components containing more than one word, with the words seen.
    pub inconsistent: Vec<(Vec<i8>, Vec<String>)>,
    /// Interior points whose word has positive dimension.
    pub positive_dimension: usize,
    /// Scan points whose itinerary failed.
    pub failures: usize,
}

/// Groups the interior scan points (every `|q|`, and `|x₂ + x₃|`,
/// exceeding `margin`) into connected components of the grid graph
/// (longitudes wrap around) with a common sign vector, and reports the
/// components on which the itinerary is not constant.
pub fn check_regions(rows: &[ScanRow], longitudes: usize, margin: f64) -> RegionReport {
    let index: BTreeMap<(usize, usize), usize> = rows.iter().enumerate().map(|(k, r)| ((r.lat, r.lon), k)).collect();
    let interior = |r: &ScanRow| {
        r.itinerary.is_ok()
            && [r.q[0], r.q[1], r.point.x2 + r.point.x3, r.q[3], r.q[4]].iter().all(|q| q.abs() > margin)
    };
    let mut report =
        RegionReport { failures: rows.iter().filter(|r| r.itinerary.is_err()).count(), ..Default::default() };
    let mut seen = vec![false; rows.len()];
    for start in 0..rows.len() {
        if seen[start] || !interior(&rows[start]) {
            continue;
        }
        report.regions += 1;
        let signs = rows[start].signs;
        let mut words = std::collections::BTreeSet::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(k) = stack.pop() {
            let r = &rows[k];
            report.interior_points += 1;
            if let Ok(w) = &r.itinerary {
                words.insert(w.to_string());
                if dim_word(w) != 0 {
                    report.positive_dimension += 1;
                }
            }
            let (i, j) = (r.lat, r.lon);
            let mut nbrs = vec![(i, (j + 1) % longitudes), (i, (j + longitudes - 1) % longitudes), (i + 1, j)];
            if i > 0 {
                nbrs.push((i - 1, j));
            }
            for n in nbrs {
                if let Some(&m) = index.get(&n) {
                    if !seen[m] && interior(&rows[m]) && rows[m].signs == signs {
                        seen[m] = true;
                        stack.push(m);
                    }
                }
            }
        }
        if words.len() > 1 {
            report.inconsistent.push((signs.to_vec(), words.into_iter().collect()));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::singular::{singular_set, SingularOptions};

    #[test]
    fn minors_at_the_origin() {
        assert_eq!(transversal_minors(TransversalPoint::origin(), 1.0), [0.5, -1.0 / 12.0, -0.5]);
        let p = TransversalPoint::new(0.3, -0.7, 0.2);
        assert!((transversal_minors(p, 0.0)[1] - 0.7 * 0.2).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_match_the_printed_matrix() {
        assert_eq!(expanded_minor_polys(), minor_polys());
    }

    #[test]
    fn the_six_identities_hold_exactly() {
        for id in identities() {
            assert!(id.holds(), "{}: {} vs {}", id.name, id.lhs, id.rhs);
        }
    }

    #[test]
    fn closed_forms_match_numerical_minors() {
        let p = TransversalPoint::new(0.21, -0.4, 0.77);
        let polys = minor_polys();
        for t in [-2.0, -0.3, 0.0, 1.1] {
            let m = transversal_matrix(p, t);
            let numeric = crate::linalg::lower_left_minors(&m);
            let closed = transversal_minors(p, t);
            for k in 0..3 {
                assert!((numeric[k] - closed[k]).abs() < 1e-12);
                assert!((polys[k].eval([p.x1, p.x2, p.x3, t]) - closed[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn q_values_match_their_polynomials() {
        let q = q_polys();
        for p in [TransversalPoint::new(0.3, -0.2, 0.9), TransversalPoint::new(-1.1, 0.4, 0.25)] {
            let values = q_polynomials(p);
            for k in 0..5 {
                assert!((q[k].eval([p.x1, p.x2, p.x3, 0.0]) - values[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn non_homogeneous_variant_fails_the_resultant_identity() {
        // 18x₂²x₃ − 12x₂x₃³ + 2x₃ + 9x₁² mixes weighted degrees and cannot
        // divide the resultant.
        let (x1, x2, x3) = (v(X1), v(X2), v(X3));
        let variant = &(&(&(&(&x2 * &x2) * &x3).scale(&rat(18, 1)) - &(&x2 * &x3.pow(3)).scale(&rat(12, 1)))
            + &x3.scale(&rat(2, 1)))
            + &(&x1 * &x1).scale(&rat(9, 1));
        let [ma, mb, _] = minor_polys();
        assert_ne!(resultant(&ma, &mb, T), (&x3 * &variant).scale(&rat(1, 72)));
    }

    #[test]
    fn q_ac_is_a_nonnegative_square() {
        let p = TransversalPoint::new(0.5, 0.25, -0.75);
        assert_eq!(q_polynomials(p)[2], 0.25);
        assert_eq!(q_polys()[2].eval([0.5, 0.25, -0.75, 0.0]), 0.25);
    }

    #[test]
    fn origin_is_bacb_with_orders_2_4_2() {
        let curve = transversal_curve(TransversalPoint::origin(), DEFAULT_WINDOW, DEFAULT_SAMPLES).unwrap();
        let s = singular_set(&curve, &SingularOptions::default()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].t.abs() < 1e-9);
        assert_eq!(s[0].orders, [2, 4, 2]);
        let it = transversal_itinerary(TransversalPoint::origin(), DEFAULT_SAMPLES).unwrap();
        assert_eq!(it.word.to_string(), "[bacb]");
        assert!(it.chain_defects().unwrap().is_empty());
    }

    #[test]
    fn tangency_points_and_their_antipodes() {
        let [ab, cb] = tangency_points(1.0).unwrap();
        let words: Vec<String> = ab
            .iter()
            .chain(cb.iter())
            .map(|p| transversal_itinerary(*p, DEFAULT_SAMPLES).unwrap().word.to_string())
            .collect();
        assert_eq!(words, ["bc[aba]cb", "[aba]", "[bcb]", "ba[bcb]ab"]);
    }

    #[test]
    fn sphere_parametrization() {
        let p = TransversalPoint::on_sphere(1.0, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
        assert!((p.x3 + 1.0).abs() < 1e-15 && p.x1.abs() < 1e-15);
    }
}
