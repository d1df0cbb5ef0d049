//! The singular set `{t : Γ(t) ∉ Bru_η}`: zeros of the lower-left minors
//! `m₁, m₂, m₃` of the frame, found by sign-change bracketing and by
//! screening local extrema for even-order zeros.

use nalgebra::Matrix4;
use serde::Serialize;

use super::frame::FrameCurve;
use crate::error::CurveError;

/// Tolerances of the singular-set search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularOptions {
    /// Extrema of a minor with `|m| <` this are treated as even-order zeros.
    pub dip_tol: f64,
    /// Bisection stops when the bracket is shorter than this.
    pub root_tol: f64,
    /// Zeros closer than this are one singular time.
    pub merge_radius: f64,
    /// A zero's uncertainty interval is where `|m|` stays below this level;
    /// zeros whose intervals overlap are merged.
    pub zero_band: f64,
    /// Each grid cell of the curve is subdivided into this many cells.
    pub subdivide: usize,
}

impl Default for SingularOptions {
    fn default() -> Self {
        SingularOptions { dip_tol: 1e-8, root_tol: 1e-11, merge_radius: 1e-9, zero_band: 1e-12, subdivide: 1 }
    }
}

/// One singular time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularTime {
    pub t: f64,
    /// Which of `m₁, m₂, m₃` vanish here.
    pub vanishing: [bool; 3],
    /// Estimated orders of vanishing (0 for nonvanishing minors).
    pub orders: [u32; 3],
    /// Half-width of the merged uncertainty interval.
    pub width: f64,
}

#[derive(Clone, Copy, Debug)]
struct Zero {
    t: f64,
    minor: usize,
    width: f64,
}

/// Whether a frame is (numerically) a diagonal sign matrix, i.e. the
/// image of an element of `Quat4`.
pub fn is_quat4_frame(f: &Matrix4<f64>) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| {
            let v = f[(i, j)];
            if i == j {
                (v.abs() - 1.0).abs() < 1e-9
            } else {
                v.abs() < 1e-9
            }
        })
    })
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn minor<C: FrameCurve + ?Sized>(c: &C, j: usize, t: f64) -> f64 {
    c.minors_at(t)[j]
}

/// Half-width of the interval around `r` on which `|m_j| ≤ band`.
fn zero_width<C: FrameCurve + ?Sized>(c: &C, j: usize, r: f64, band: f64, cap: f64) -> f64 {
    let mut d = 1e-12_f64.max(r.abs() * 1e-15);
    while d < cap {
        if minor(c, j, r + d).abs() > band && minor(c, j, r - d).abs() > band {
            return d;
        }
        d *= 2.0;
    }
    cap
}

/// The sign of `m_j′(t)` from a symmetric difference.
fn slope<C: FrameCurve + ?Sized>(c: &C, j: usize, t: f64) -> f64 {
    let h = 1e-7 * t.abs().max(1.0);
    minor(c, j, t + h) - minor(c, j, t - h)
}

/// Location of the extremum of `m_j` in `[a, b]`.
fn extremum<C: FrameCurve + ?Sized>(c: &C, j: usize, a: f64, b: f64, tol: f64) -> f64 {
    let (sa, sb) = (slope(c, j, a), slope(c, j, b));
    if sa * sb < 0.0 {
        return bisect(|t| slope(c, j, t), a, b, tol);
    }
    // Golden-section search on |m| as a fallback.
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (a, b);
    while hi - lo > tol {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if minor(c, j, x1).abs() < minor(c, j, x2).abs() {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    0.5 * (lo + hi)
}

/// Order of vanishing of `m_j` at `t` from the decay between offsets
/// `10⁻²` and `10⁻³`.
fn order_at<C: FrameCurve + ?Sized>(c: &C, j: usize, t: f64) -> u32 {
    let size = |h: f64| minor(c, j, t + h).abs() + minor(c, j, t - h).abs();
    let (a, b) = (size(1e-2), size(1e-3));
    if b <= 0.0 || a <= 0.0 {
        return 0;
    }
    ((a / b).log10()).round().max(1.0) as u32
}

/// All singular times of `curve` in the interior of its domain.
///
/// An endpoint at which some minor is below `dip_tol` is accepted (and the
/// search starts just inside it) only when the frame there is a diagonal
/// sign matrix, i.e. the curve starts or ends in `Quat4`; otherwise the
/// result is `BoundarySingular`.
pub fn singular_set<C: FrameCurve + ?Sized>(
    curve: &C,
    opts: &SingularOptions,
) -> Result<Vec<SingularTime>, CurveError> {
    let base = curve.grid();
    let mut grid = Vec::with_capacity(base.len() * opts.subdivide.max(1));
    for w in base.windows(2) {
        for k in 0..opts.subdivide.max(1) {
            grid.push(w[0] + (w[1] - w[0]) * k as f64 / opts.subdivide.max(1) as f64);
        }
    }
    grid.push(*base.last().expect("nonempty grid"));
    let n = grid.len();
    let values: Vec<[f64; 3]> = grid.iter().map(|t| curve.minors_at(*t)).collect();

    let mut lo = 0;
    let mut hi = n - 1;
    for (idx, is_start) in [(0, true), (n - 1, false)] {
        if values[idx].iter().any(|m| m.abs() < opts.dip_tol) {
            if is_quat4_frame(&curve.frame_at(grid[idx])) {
                if is_start {
                    lo = 1;
                } else {
                    hi = n - 2;
                }
            } else {
                return Err(CurveError::BoundarySingular(grid[idx]));
            }
        }
    }

    let mut zeros: Vec<Zero> = Vec::new();
    for j in 0..3 {
        let m = |k: usize| values[k][j];
        let mut push = |t: f64| {
            let cap = (grid[1] - grid[0]).abs();
            let width = zero_width(curve, j, t, opts.zero_band, cap);
            zeros.push(Zero { t, minor: j, width });
        };
        for k in lo..hi {
            let (a, b) = (m(k), m(k + 1));
            if a == 0.0 {
                if k > lo || lo == 0 {
                    push(grid[k]);
                }
                continue;
            }
            if b != 0.0 && (a > 0.0) != (b > 0.0) {
                push(bisect(|t| minor(curve, j, t), grid[k], grid[k + 1], opts.root_tol));
            }
        }
        if hi == n - 1 && m(n - 1) == 0.0 {
            push(grid[n - 1]);
        }
        // Extrema of |m| that do not change sign on the grid.
        for k in lo.max(1)..hi.min(n - 2) + 1 {
            if k + 1 >= n {
                break;
            }
            let (a, b, c) = (m(k - 1), m(k), m(k + 1));
            let same_sign = (a > 0.0) == (b > 0.0) && (b > 0.0) == (c > 0.0) && b != 0.0;
            if !same_sign || !(b.abs() <= a.abs() && b.abs() <= c.abs()) {
                continue;
            }
            if k == lo || k == hi {
                continue;
            }
            let t_star = extremum(curve, j, grid[k - 1], grid[k + 1], opts.root_tol);
            let v = minor(curve, j, t_star);
            if v != 0.0 && (v > 0.0) != (b > 0.0) {
                push(bisect(|t| minor(curve, j, t), grid[k - 1], t_star, opts.root_tol));
                push(bisect(|t| minor(curve, j, t), t_star, grid[k + 1], opts.root_tol));
            } else if v.abs() < opts.dip_tol {
                push(t_star);
            }
        }
    }
    zeros.sort_by(|a, b| a.t.total_cmp(&b.t));
    zeros.dedup_by(|b, a| a.minor == b.minor && (a.t - b.t).abs() <= opts.root_tol);

    // Cluster zeros whose uncertainty intervals overlap.
    let mut clusters: Vec<Vec<Zero>> = Vec::new();
    for z in zeros {
        if let Some(last) = clusters.last_mut() {
            let joins = last.iter().any(|y| {
                let gap = (z.t - y.t).abs();
                gap <= opts.merge_radius || gap <= z.width + y.width
            });
            if joins {
                last.push(z);
                continue;
            }
        }
        clusters.push(vec![z]);
    }

    let (t0, t1) = (grid[0], grid[n - 1]);
    let mut out = Vec::new();
    for cl in clusters {
        let best = cl.iter().min_by(|a, b| a.width.total_cmp(&b.width)).expect("nonempty cluster");
        let width = cl.iter().map(|z| (z.t - best.t).abs() + z.width).fold(0.0, f64::max);
        let near = |e: f64| (best.t - e).abs() <= width.max(opts.merge_radius);
        if (lo == 1 && near(t0)) || (hi == n - 2 && near(t1)) {
            continue;
        }
        if near(t0) || near(t1) {
            return Err(CurveError::BoundarySingular(if near(t0) { t0 } else { t1 }));
        }
        let mut vanishing = [false; 3];
        for z in &cl {
            vanishing[z.minor] = true;
        }
        let orders = std::array::from_fn(|j| if vanishing[j] { order_at(curve, j, best.t) } else { 0 });
        out.push(SingularTime { t: best.t, vanishing, orders, width });
    }
    Ok(out)
}
