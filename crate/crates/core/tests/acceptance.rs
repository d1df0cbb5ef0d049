//! End-to-end acceptance checks. Each criterion prints one `PASS`/`FAIL`
//! line with its runtime; the process exits nonzero if any fails.

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spincurve::bruhat::{adv, chop, chop_adv, chop_adv_at, classify_cell, ChopAdvOptions, SignedRep};
use spincurve::curves::poly::Poly;
use spincurve::curves::transversal::{identities, minor_polys, window_for, DEFAULT_SAMPLES};
use spincurve::curves::{
    check_regions, eta_normal_form, integrate, itinerary, n2_curve, n2_initial, q_polynomials, random_profile,
    scan_sphere, tangency_points, transversal_itinerary, Betas, FrameCurve, ItineraryOptions, RandomProfileOptions,
    ScanOptions, TransversalPoint,
};
use spincurve::monodromy::{classify_triple, monodromy_matrix, CoefficientTriple, MonodromyOptions, TripleClass};
use spincurve::spin4::{
    acute_generator, acute_of, acute_of_word, btilde_group, central_element, pi_matrix, quat4_group, Quaternion,
    SpinPoint,
};
use spincurve::strata::{bouquet, contraction_schedule, parse_central, point_to_word, strata_enumerate, TPoint};
use spincurve::weyl::{
    check_m_star_closure, m_star_words, nontrivial_m_star_pairs, Generator, MuVector, Permutation, Word,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word {s}: {e:?}"))
}

// ---------------------------------------------------------------------------
// 1. Bouquets

/// One sphere of dimension `k`, two of `k + 4`, …, `j + 1` of `k + 4j`,
/// truncated at `cap`.
fn rule_list(k: usize, cap: usize) -> Vec<usize> {
    (0..).map(|j| (j, k + 4 * j)).take_while(|&(_, d)| d <= cap).flat_map(|(j, d)| vec![d; j + 1]).collect()
}

fn criterion_1() -> Outcome {
    let cases = [
        ("1", 4, vec![4, 8, 8, 12, 12, 12]),
        ("-1", 2, vec![2, 6, 6, 10, 10, 10]),
        ("ac", 2, vec![2, 6, 6, 10, 10, 10]),
        ("-ac", 0, vec![0, 4, 4, 8, 8, 8]),
    ];
    let mut total = 0;
    for (name, k, prefix) in cases {
        let z = parse_central(name).map_err(|e| e.to_string())?;
        let spec = bouquet(&z, 16).map_err(|e| e.to_string())?;
        let expected = rule_list(k, 16);
        ensure(spec.spheres == expected, || format!("{name}: {:?} != {expected:?}", spec.spheres))?;
        ensure(spec.spheres.starts_with(&prefix), || format!("{name}: listed prefix {prefix:?} missing"))?;
        total += spec.spheres.len();
    }
    Ok(format!("4 lists up to dimension 16, {total} spheres"))
}

// ---------------------------------------------------------------------------
// 2. Resultant/discriminant identities

/// Sylvester resultant of two polynomials given by ascending coefficients.
fn sylvester(f: &[f64], g: &[f64]) -> f64 {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut s = DMatrix::<f64>::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[(i, i + k)] = *c;
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[(n + i, i + k)] = *c;
        }
    }
    s.determinant()
}

fn derivative(f: &[f64]) -> Vec<f64> {
    f.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

/// `disc(f) = (−1)^{n(n−1)/2} res(f, f′) / aₙ`.
fn disc(f: &[f64]) -> f64 {
    let n = f.len() - 1;
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * sylvester(f, &derivative(f)) / f[n]
}

fn trimmed(mut c: Vec<f64>) -> Vec<f64> {
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    c
}

fn criterion_2() -> Outcome {
    for id in identities() {
        ensure(id.holds(), || format!("{} is not an exact identity", id.name))?;
    }
    let minors: [Poly; 3] = minor_polys();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let x = [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)];
        let [ma, mb, mc] = [0, 1, 2].map(|k| trimmed(minors[k].coefficients_in_t(x)));
        let [q_ab, q_ba, q_ac, q_bc, q_cb] = q_polynomials(TransversalPoint::new(x[0], x[1], x[2]));
        let pairs = [
            (sylvester(&ma, &mb), q_ab * q_ba / 72.0),
            (sylvester(&mb, &mc), q_bc * q_cb / 72.0),
            (disc(&ma), -2.0 * q_ab),
            (disc(&mc), 2.0 * q_cb),
            (sylvester(&ma, &mc), q_ac / 4.0),
            (disc(&mb), q_ba * q_bc / 432.0),
        ];
        for (k, (lhs, rhs)) in pairs.iter().enumerate() {
            let scale = lhs.abs().max(rhs.abs());
            let rel = if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale };
            worst = worst.max(rel);
            ensure(rel < 1e-9, || format!("identity {k} at {x:?}: {lhs:e} vs {rhs:e} (rel {rel:e})"))?;
        }
    }
    Ok(format!("6 exact identities; 1000 random points, worst relative error {worst:.1e}"))
}

// ---------------------------------------------------------------------------
// 3. Itineraries of the transversal family

fn eval(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * t + a)
}

/// Real roots of a polynomial (ascending coefficients) with their
/// multiplicities: companion eigenvalues, clustered, then polished by
/// Newton's method on the derivative whose simple root the cluster is.
fn real_roots(c: &[f64]) -> Vec<(f64, usize)> {
    let c = trimmed(c.to_vec());
    let n = c.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = c[n];
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i] / lead;
    }
    let mut eig: Vec<(f64, f64)> = comp.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
    eig.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut clusters: Vec<Vec<(f64, f64)>> = Vec::new();
    for e in eig {
        match clusters.last_mut() {
            Some(cl) if cl.iter().any(|f| (e.0 - f.0).hypot(e.1 - f.1) < 1e-3) => cl.push(e),
            _ => clusters.push(vec![e]),
        }
    }
    let scale = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut out = Vec::new();
    for cl in clusters {
        let m = cl.len();
        let re = cl.iter().map(|e| e.0).sum::<f64>() / m as f64;
        let im = cl.iter().map(|e| e.1).sum::<f64>() / m as f64;
        if im.abs() > 1e-6 {
            continue;
        }
        let mut d = c.clone();
        for _ in 1..m {
            d = derivative(&d);
        }
        let dd = derivative(&d);
        let mut t = re;
        for _ in 0..50 {
            let step = eval(&d, t) / eval(&dd, t);
            if !step.is_finite() {
                break;
            }
            t -= step;
            if step.abs() < 1e-16 * t.abs().max(1.0) {
                break;
            }
        }
        if eval(&c, t).abs() <= 1e-9 * scale * (1.0 + t.abs()).powi(n as i32) {
            out.push((t, m));
        }
    }
    out
}

/// Compares the singular set of the family at `p` with the real roots of
/// the minors inside the window; returns the largest location error.
fn check_singular_times(p: TransversalPoint) -> Result<f64, String> {
    let it = transversal_itinerary(p, DEFAULT_SAMPLES).map_err(|e| format!("{p:?}: {e}"))?;
    let window = window_for(p.norm());
    let minors = minor_polys();
    let mut roots: Vec<(f64, usize)> = Vec::new();
    for (k, m) in minors.iter().enumerate() {
        for (r, _) in real_roots(&m.coefficients_in_t([p.x1, p.x2, p.x3])) {
            if r.abs() < window {
                roots.push((r, k));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for s in &it.singular {
        for k in 0..3 {
            let nearest = roots.iter().filter(|r| r.1 == k).map(|r| (r.0 - s.t).abs()).fold(f64::INFINITY, f64::min);
            if s.vanishing[k] {
                ensure(nearest < 1e-9, || format!("{p:?}: minor {k} at t = {} is {nearest:e} from a root", s.t))?;
                worst = worst.max(nearest);
            } else {
                ensure(nearest > 1e-6, || format!("{p:?}: minor {k} vanishes at t = {} unreported", s.t))?;
            }
        }
    }
    for (r, k) in &roots {
        ensure(it.singular.iter().any(|s| s.vanishing[*k] && (s.t - r).abs() < 1e-9), || {
            format!("{p:?}: root {r} of minor {k} is missing from the singular set")
        })?;
    }
    Ok(worst)
}

fn criterion_3() -> Outcome {
    let word_at = |p: TransversalPoint| -> Result<Word, String> {
        transversal_itinerary(p, DEFAULT_SAMPLES).map(|it| it.word).map_err(|e| format!("{p:?}: {e}"))
    };
    let origin = word_at(TransversalPoint::origin())?;
    ensure(origin == w("[bacb]"), || format!("origin gives {origin}"))?;
    let [ab, cb] = tangency_points(1.0).map_err(|e| e.to_string())?;
    let named = [(ab[1], "[aba]"), (ab[0], "bc[aba]cb"), (cb[0], "[bcb]"), (cb[1], "ba[bcb]ab")];
    for (p, expected) in named {
        let got = word_at(p)?;
        ensure(got == w(expected), || format!("{p:?} gives {got}, expected {expected}"))?;
    }
    ensure(ab[0].neg() == ab[1] && cb[0].neg() == cb[1], || "tangency pairs are not antipodal".into())?;

    let mut points = vec![TransversalPoint::origin()];
    points.extend(named.iter().map(|(p, _)| *p));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        points.push(TransversalPoint::on_sphere(1.0, theta, phi));
    }
    let mut worst: f64 = 0.0;
    for p in &points {
        worst = worst.max(check_singular_times(*p)?);
    }

    let opts = ScanOptions { radius: 1.0, longitudes: 201, samples: DEFAULT_SAMPLES };
    let rows = scan_sphere(&opts);
    let report = check_regions(&rows, opts.longitudes, 0.02);
    ensure(rows.len() == 101 * 201, || format!("{} scan rows", rows.len()))?;
    ensure(report.failures == 0, || format!("{} scan points failed", report.failures))?;
    ensure(report.inconsistent.is_empty(), || format!("inconsistent regions: {:?}", report.inconsistent))?;
    ensure(report.positive_dimension == 0, || format!("{} positive-dimension words", report.positive_dimension))?;
    Ok(format!(
        "named words ok; {} points, worst singular-time error {worst:.1e}; 101x201 scan: {} regions, {} interior points",
        points.len(),
        report.regions,
        report.interior_points
    ))
}

// ---------------------------------------------------------------------------
// 4. Refinement lemmas

fn criterion_4() -> Outcome {
    let mut pairs: Vec<(Word, Permutation)> = nontrivial_m_star_pairs();
    pairs.sort();
    let mut expected: Vec<(Word, Permutation)> =
        [("[aba]", "bacb"), ("[bcb]", "bacb"), ("[aba][cba]", "abacba"), ("[cba][aba]", "abacba")]
            .iter()
            .map(|(a, b)| (w(a), Permutation::from_word_str(b).expect("permutation")))
            .collect();
    expected.sort();
    ensure(pairs == expected, || format!("pairs {pairs:?}"))?;
    let report = check_m_star_closure(4);
    ensure(report.violations.is_empty(), || format!("violations {:?}", report.violations))?;
    Ok(format!("4 pairs; {} words, {} coarsenings, no violations", report.words_checked, report.coarsenings_checked))
}

// ---------------------------------------------------------------------------
// 5. chop/adv

fn criterion_5() -> Outcome {
    let eta = acute_of(&Permutation::ETA);
    let eta_inv = eta.inverse();
    let in_coset = |r: &SignedRep| quat4_group().contains(&(eta_inv * r.spin()));
    let fine = ChopAdvOptions { epsilon: 0.01, ..ChopAdvOptions::default() };
    let mut count = 0;
    for z in SignedRep::all().into_iter().filter(|r| !r.is_open()) {
        let coarse = chop_adv(&z).map_err(|e| format!("{z}: {e}"))?;
        let small = chop_adv_at(z.spin_point(), &fine).map_err(|e| format!("{z}: {e}"))?;
        ensure(coarse == small, || format!("{z}: probe scales disagree"))?;
        ensure(in_coset(&coarse.0) && in_coset(&coarse.1), || format!("{z}: {coarse:?} outside acute(η)·Quat4"))?;
        count += 1;
    }
    let [a, b, c] = [Generator::A, Generator::B, Generator::C].map(acute_generator);
    for (name, z) in [("-áć", -(a * c)), ("-áb́ć", -(a * b * c)), ("-ćb́á", -(c * b * a))] {
        let rep = SignedRep::from_exact(&z).map_err(|e| e.to_string())?;
        let (ch, ad) = (chop(&rep).map_err(|e| e.to_string())?, adv(&rep).map_err(|e| e.to_string())?);
        ensure(ch.spin() == eta && ad.spin() == -eta, || format!("{name}: chop {ch}, adv {ad}"))?;
    }
    Ok(format!("{count} representatives, scales ε and ε/10 (ε = 0.1, 0.01) agree"))
}

// ---------------------------------------------------------------------------
// 6. Chain invariant on random curves

fn criterion_6() -> Outcome {
    let opts = RandomProfileOptions::default();
    let mut singular = 0;
    for seed in 0..200u64 {
        let curve = integrate(&random_profile(seed, &opts), 4000).map_err(|e| format!("seed {seed}: {e}"))?;
        let it = itinerary(&curve, &ItineraryOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let defects = it.chain_defects().map_err(|e| e.to_string())?;
        ensure(defects.is_empty(), || format!("seed {seed}: chain defects {defects:?}"))?;
        for j in 0..it.cells.len().saturating_sub(1) {
            let after = adv(&it.cells[j]).map_err(|e| e.to_string())?;
            let before = chop(&it.cells[j + 1]).map_err(|e| e.to_string())?;
            ensure(after == before, || format!("seed {seed}: adv(z{j}) = {after} but chop(z{}) = {before}", j + 1))?;
        }
        let (t0, t1) = curve.domain();
        let mut bounds = vec![t0];
        bounds.extend(&it.times);
        bounds.push(t1);
        for (j, win) in bounds.windows(2).enumerate() {
            let mid = 0.5 * (win[0] + win[1]);
            let cell = classify_cell(&pi_matrix(curve.spin_at(mid)).0, 1e-10).map_err(|e| e.to_string())?;
            let comp = it.components[j];
            ensure(cell.rho == Permutation::ETA && cell.signs == comp.signs, || {
                format!("seed {seed}: midpoint {mid} classifies as {:?} {:?}, component {comp}", cell.rho, cell.signs)
            })?;
        }
        singular += it.times.len();
    }
    Ok(format!("200 profiles, {singular} singular times, no defects"))
}

// ---------------------------------------------------------------------------
// 7. Normal form near η

fn criterion_7() -> Outcome {
    let betas = Betas::ones();
    let m11: Vec<Word> = m_star_words(MuVector::new(1, 1));
    let mut perturbed = 0;
    for x32 in [0.1, -0.1, 0.01, -0.01, 0.0] {
        let nf = eta_normal_form(&betas, x32).map_err(|e| e.to_string())?;
        let sign = |v: f64| {
            if v > 0.0 {
                1
            } else if v < 0.0 {
                -1
            } else {
                0
            }
        };
        ensure(sign(nf.t31) == -sign(x32), || format!("x32 = {x32}: t31 = {}", nf.t31))?;
        let word = |dx43: f64, dx42: f64| -> Result<Word, String> {
            let l = n2_initial(x32, nf.z2 + dx42, nf.z3 + dx43);
            let curve = n2_curve(l, &betas, 1.0, 401).map_err(|e| e.to_string())?;
            itinerary(&curve, &ItineraryOptions::default()).map(|it| it.word).map_err(|e| format!("x32 = {x32}: {e}"))
        };
        let expected = if x32 > 0.0 {
            w("[aba][cba]")
        } else if x32 < 0.0 {
            w("[cba][aba]")
        } else {
            w("η")
        };
        let got = word(0.0, 0.0)?;
        ensure(got == expected, || format!("x32 = {x32}: φ = 0 curve gives {got}, expected {expected}"))?;
        for (dx43, dx42) in [(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-3), (0.0, -1e-3)] {
            let got = word(dx43, dx42)?;
            ensure(!m11.contains(&got), || format!("x32 = {x32}, offset ({dx43}, {dx42}): {got} lies in M_(1,1)"))?;
            perturbed += 1;
        }
    }
    Ok(format!("5 values of x32, {perturbed} perturbed curves leave M_(1,1)"))
}

// ---------------------------------------------------------------------------
// 8. Monodromy

/// For `y⁗ + c₂y″ + c₀y = 0` with `λ² = −ω²`, the frequencies `ω`.
fn frequencies(c0: f64, c2: f64) -> [f64; 2] {
    let d = (c2 * c2 - 4.0 * c0).sqrt();
    [((c2 - d) / 2.0).sqrt(), ((c2 + d) / 2.0).sqrt()]
}

fn criterion_8() -> Outcome {
    let pi = std::f64::consts::PI;
    let opts = MonodromyOptions::default();
    let mut details = Vec::new();
    for (c0, c2, class) in [
        (64.0 * pi.powi(4), 20.0 * pi * pi, TripleClass::Positive),
        (9.0 * pi.powi(4), 10.0 * pi * pi, TripleClass::Negative),
    ] {
        // Oracle: every frequency is an even (resp. odd) multiple of π.
        let parity = if class == TripleClass::Positive { 0.0 } else { 1.0 };
        for om in frequencies(c0, c2) {
            let k = om / pi;
            ensure((k - k.round()).abs() < 1e-12 && (k.round() % 2.0 - parity).abs() < 1e-12, || {
                format!("oracle frequency {om} does not match {class}")
            })?;
        }
        let triple = CoefficientTriple::constant(c0, 0.0, c2);
        let exact = Matrix4::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, -c0, 0.0, -c2, 0.0).exp();
        let phi = monodromy_matrix(&triple, &opts).map_err(|e| e.to_string())?;
        ensure((phi - exact).amax() < 1e-8, || format!("monodromy differs from exp(A) by {:e}", (phi - exact).amax()))?;
        let c = classify_triple(&triple, 1e-6, &opts).map_err(|e| e.to_string())?;
        ensure(c.class == class && c.residual() < 1e-8, || {
            format!("{c0}, {c2}: {} residual {:e}", c.class, c.residual())
        })?;
        details.push(format!("{} {:.1e}", c.class, c.residual()));
    }
    let zero = classify_triple(&CoefficientTriple::constant(0.0, 0.0, 0.0), 1e-6, &opts).map_err(|e| e.to_string())?;
    ensure(zero.class == TripleClass::Neither, || format!("y'''' = 0 classifies {}", zero.class))?;
    Ok(format!("{}; zero triple neither", details.join(", ")))
}

// ---------------------------------------------------------------------------
// 9. Group theory

fn random_spin(rng: &mut ChaCha8Rng) -> SpinPoint {
    let mut q = || {
        Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
        .normalize()
    };
    SpinPoint::new(q(), q())
}

fn criterion_9() -> Outcome {
    let quat4 = quat4_group();
    ensure(quat4.len() == 16, || format!("|Quat4| = {}", quat4.len()))?;
    let center = quat4.center();
    let expected: Vec<_> = [(1, 1), (1, -1), (-1, 1), (-1, -1)].iter().map(|&(l, r)| central_element(l, r)).collect();
    ensure(center.len() == 4 && expected.iter().all(|z| center.contains(z)), || format!("center {center:?}"))?;
    let bt = btilde_group().len();
    ensure(bt == 384, || format!("|B̃4⁺| = {bt}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b) = (random_spin(&mut rng), random_spin(&mut rng));
        let lhs = pi_matrix(a * b).0;
        let rhs = pi_matrix(a).0 * pi_matrix(b).0;
        worst = worst.max((lhs - rhs).amax());
    }
    ensure(worst < 1e-10, || format!("Π(ab) − Π(a)Π(b) = {worst:e}"))?;
    let mut words = 0;
    for sigma in Permutation::all() {
        let reference = acute_of(sigma);
        for word in sigma.reduced_words() {
            ensure(acute_of_word(&word) == reference, || format!("acute of {sigma:?} depends on the reduced word"))?;
            words += 1;
        }
    }
    Ok(format!("Π defect {worst:.1e}; {words} reduced words of 24 permutations agree"))
}

// ---------------------------------------------------------------------------
// 10. Strata combinatorics

fn criterion_10() -> Outcome {
    let p = TPoint::from_fractions(&[(1, 9), (4, 9), (5, 9)], &[(2, 9), (4, 9), (7, 9)]).map_err(|e| e.to_string())?;
    let got = point_to_word(&p);
    ensure(got == w("[aba][cba]η[aba][cba]"), || format!("worked example gives {got}"))?;
    let strata = strata_enumerate(1, 1);
    let open = strata.iter().filter(|s| s.n_eta == 0).count();
    let codim1 = strata.iter().filter(|s| s.n_eta == 1).count();
    ensure(strata.len() == 3 && open == 2 && codim1 == 1, || format!("(1,1) strata {strata:?}"))?;
    let mut events = 0;
    for mu0 in 0..=3 {
        for mu1 in 0..=3 {
            let s = contraction_schedule(mu0, mu1).map_err(|e| format!("({mu0},{mu1}): {e}"))?;
            ensure(s.final_classes == 1, || format!("({mu0},{mu1}) ends in {} classes", s.final_classes))?;
            for e in &s.events {
                ensure(e.classes_before - e.classes_after == 2 * e.triples.len(), || {
                    format!("({mu0},{mu1}): event {:?} is not a union of triple merges", e.removed)
                })?;
            }
            events += s.events.len();
        }
    }
    Ok(format!("worked example ok; (1,1): 2 open + 1 codim-1; 16 schedules, {events} events"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("bouquet lists", criterion_1, Duration::from_secs(1)),
        ("resultant identities", criterion_2, Duration::from_secs(10)),
        ("transversal itineraries", criterion_3, Duration::from_secs(300)),
        ("refinement lemmas", criterion_4, Duration::from_secs(10)),
        ("chop/adv", criterion_5, Duration::from_secs(30)),
        ("chain invariant", criterion_6, Duration::from_secs(120)),
        ("normal form", criterion_7, Duration::from_secs(60)),
        ("monodromy", criterion_8, Duration::from_secs(1)),
        ("group theory", criterion_9, Duration::from_secs(5)),
        ("strata combinatorics", criterion_10, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:2} {status} {name} [{:.2}s]: {detail}", k + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
