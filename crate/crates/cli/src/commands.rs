//! One function per subcommand: parse arguments, call the library, render.

use std::fs;
use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use nalgebra::Matrix4;
use serde::Serialize;
use serde_json::json;
use spincurve::bruhat::{chop_adv_at, classify_cell, spin_lift_rep_with, ChopAdvOptions, SignedRep, DEFAULT_RANK_TOL};
use spincurve::curves::profile::KappaSpec;
use spincurve::curves::transversal::{identities, DEFAULT_SAMPLES};
use spincurve::curves::{
    check_regions, eta_normal_form, integrate, itinerary, n2_curve, n2_initial, phi_map, random_profile, scan_sphere,
    transversal_itinerary, Betas, CurvatureProfile, Itinerary, ItineraryOptions, ProfileSpec, RandomProfileOptions,
    ScanOptions, TransversalPoint,
};
use spincurve::monodromy::{classify_triple, CoefficientTriple, MonodromyOptions, CLASSIFY_TOL};
use spincurve::spin4::{btilde_group, pi_matrix, quat4_group, Rotation4, SpinPoint};
use spincurve::strata::{self, TPoint};
use spincurve::weyl::{
    check_m_star_closure, combinatorial_multiplicity, nontrivial_m_star_pairs, refinement_table, Permutation,
};

use crate::output::{json_only, to_csv, to_json, validation, CliError, Report};
use crate::Format;

fn parse_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<f64>().map_err(|_| validation(format!("{what}: cannot parse `{x}`"))))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(validation(format!("{what}: expected {n} numbers, got {}", v.len())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(validation(format!("{what}: values must be finite")));
    }
    Ok(v)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| validation(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------- itinerary

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["profile", "seed", "point"])))]
pub struct ItineraryArgs {
    /// Curvature profile JSON: {"kappa": [k1, k2, k3], "initial": [8 floats]?, "interval": [a, b]?},
    /// each k being {"kind": "constant", "value": v}, {"kind": "trig", "c0", "cos", "sin"} or
    /// {"kind": "pieces", "pieces": [{"start", "end", "coeffs"}]}.
    #[arg(long)]
    profile: Option<PathBuf>,

    /// Seed of a random positive trigonometric profile.
    #[arg(long)]
    seed: Option<u64>,

    /// Point `x1,x2,x3` of the transversal family through [bacb].
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,

    /// Minimum number of integration steps for profiles.
    #[arg(long, default_value_t = 4000)]
    steps: usize,

    /// Sample count of the transversal family curve.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

fn itinerary_json(it: &Itinerary, source: serde_json::Value) -> Result<serde_json::Value, CliError> {
    let defects: Vec<_> = it
        .chain_defects()?
        .into_iter()
        .map(|d| {
            json!({
                "index": d.index,
                "predicted": [d.predicted.0.to_string(), d.predicted.1.to_string()],
                "observed": [d.observed.0.to_string(), d.observed.1.to_string()],
            })
        })
        .collect();
    Ok(json!({
        "source": source,
        "itinerary": it.record(),
        "word": it.word.to_string(),
        "convex": it.word.is_empty(),
        "singular": it.singular,
        "components": it.components.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "chain_defects": defects,
    }))
}

pub fn itinerary_cmd(a: ItineraryArgs, format: Format) -> Result<Report, CliError> {
    json_only(format, "itinerary")?;
    let opts = ItineraryOptions::default();
    let (it, source) = if let Some(p) = &a.point {
        let x = parse_floats(p, 3, "--point")?;
        let it = transversal_itinerary(TransversalPoint::new(x[0], x[1], x[2]), a.samples)?;
        (it, json!({ "point": x, "samples": a.samples }))
    } else {
        let (profile, source) = match (&a.profile, a.seed) {
            (Some(path), _) => {
                let spec: ProfileSpec = read_json(path)?;
                (CurvatureProfile::from_spec(spec)?, json!({ "profile": path.display().to_string() }))
            }
            (None, Some(seed)) => (random_profile(seed, &RandomProfileOptions::default()), json!({ "seed": seed })),
            (None, None) => return Err(validation("one of --profile, --seed, --point is required")),
        };
        let curve = integrate(&profile, a.steps)?;
        (itinerary(&curve, &opts)?, source)
    };
    Ok(Report::ok(to_json(&itinerary_json(&it, source)?)?))
}

// ----------------------------------------------------------------- classify

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["spin", "matrix"])))]
pub struct ClassifyArgs {
    /// Spin4 point `lw,lx,ly,lz,rw,rx,ry,rz` (normalized before use).
    #[arg(long, allow_hyphen_values = true)]
    spin: Option<String>,

    /// Rotation matrix, 16 entries row-major.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,

    /// Singular-value threshold of the rank decisions.
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    tol: f64,
}

#[derive(Serialize)]
struct ClassifyOut {
    cell: String,
    letter: String,
    open: bool,
    codimension: usize,
    rep: Option<String>,
    signs: [i8; 4],
    margin: f64,
}

pub fn classify(a: ClassifyArgs, format: Format) -> Result<Report, CliError> {
    json_only(format, "classify")?;
    let (q, spin) = if let Some(s) = &a.spin {
        let v = parse_floats(s, 8, "--spin")?;
        let z = SpinPoint::from_array(v.try_into().expect("eight values"));
        if z.left.norm() < 1e-12 || z.right.norm() < 1e-12 {
            return Err(validation("--spin: both quaternions must be nonzero"));
        }
        let z = z.normalize();
        (pi_matrix(z).0, Some(z))
    } else {
        let v = parse_floats(a.matrix.as_deref().unwrap_or_default(), 16, "--matrix")?;
        let q = Matrix4::from_row_slice(&v);
        if !Rotation4(q).is_rotation(1e-8) {
            return Err(validation("--matrix is not a rotation (orthogonal with determinant 1)"));
        }
        (q, None)
    };
    let cell = classify_cell(&q, a.tol)?;
    let rep = match spin {
        Some(z) => Some(spin_lift_rep_with(z, a.tol)?.to_string()),
        None => None,
    };
    let out = ClassifyOut {
        cell: cell.rho.name(),
        letter: (Permutation::ETA * cell.rho).name(),
        open: cell.rho == Permutation::ETA,
        codimension: 6 - cell.rho.inv(),
        rep,
        signs: cell.signs,
        margin: cell.margin,
    };
    Ok(Report::ok(to_json(&out)?))
}

// ------------------------------------------------------------------ chopadv

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("reps").required(true).args(["rep", "all"])))]
pub struct ChopadvArgs {
    /// Representative `perm:signs:lift`, e.g. `4321:+-+-:0`; repeatable.
    #[arg(long)]
    rep: Vec<String>,

    /// All representatives of positive codimension.
    #[arg(long)]
    all: bool,

    /// Probe scale; the germ is also probed at a tenth of it.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
}

pub fn chopadv(a: ChopadvArgs, format: Format) -> Result<Report, CliError> {
    if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        return Err(validation("--epsilon must lie in (0, 1)"));
    }
    let reps: Vec<SignedRep> = if a.all {
        SignedRep::all().into_iter().filter(|r| !r.is_open()).collect()
    } else {
        a.rep.iter().map(|s| s.parse::<SignedRep>()).collect::<Result<_, _>>()?
    };
    let opts = ChopAdvOptions { epsilon: a.epsilon, ..Default::default() };
    let mut rows = Vec::with_capacity(reps.len());
    for r in &reps {
        let (c, d) = chop_adv_at(r.spin_point(), &opts)?;
        rows.push([r.to_string(), c.to_string(), d.to_string()]);
    }
    let text = match format {
        Format::Json => {
            to_json(&rows.iter().map(|r| json!({ "rep": r[0], "chop": r[1], "adv": r[2] })).collect::<Vec<_>>())?
        }
        Format::Csv => to_csv(&["rep", "chop", "adv"], rows.into_iter().map(|r| r.to_vec()))?,
    };
    Ok(Report::ok(text))
}

// ---------------------------------------------------------------- scan-bacb

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Number of longitudes; (grid + 1) / 2 latitudes, poles included.
    #[arg(long, default_value_t = 201)]
    grid: usize,

    #[arg(long, default_value_t = 1.0)]
    radius: f64,

    /// Sample count of each family curve.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,

    /// Points with some |q| below this are left out of the region check.
    #[arg(long, default_value_t = 0.02)]
    margin: f64,

    /// Also write the region consistency report (JSON) here.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Shortest round-trip form, with `-0` printed as `0`.
fn num(x: f64) -> String {
    (x + 0.0).to_string()
}

pub fn scan_bacb(a: ScanArgs, format: Format) -> Result<Report, CliError> {
    if a.grid < 3 || !(a.radius > 0.0) || a.samples < 11 {
        return Err(validation("need --grid ≥ 3, --radius > 0 and --samples ≥ 11"));
    }
    let opts = ScanOptions { radius: a.radius, longitudes: a.grid, samples: a.samples };
    let rows = scan_sphere(&opts);
    let regions = check_regions(&rows, a.grid, a.margin);
    if let Some(path) = &a.report {
        fs::write(path, to_json(&regions)?).map_err(|e| validation(format!("cannot write {}: {e}", path.display())))?;
    }
    let text = match format {
        Format::Csv => {
            let header = [
                "lat",
                "lon",
                "x1",
                "x2",
                "x3",
                "q_ab",
                "q_ba",
                "q_ac",
                "q_bc",
                "q_cb",
                "s_ab",
                "s_ba",
                "s_ac",
                "s_bc",
                "s_cb",
                "itinerary",
            ];
            to_csv(
                &header,
                rows.iter().map(|r| {
                    let mut v =
                        vec![r.lat.to_string(), r.lon.to_string(), num(r.point.x1), num(r.point.x2), num(r.point.x3)];
                    v.extend(r.q.iter().map(|x| num(*x)));
                    v.extend(r.signs.iter().map(|x| x.to_string()));
                    v.push(r.word_string());
                    v
                }),
            )?
        }
        Format::Json => to_json(&json!({
            "options": opts,
            "regions": regions,
            "rows": rows.iter().map(|r| json!({
                "lat": r.lat,
                "lon": r.lon,
                "point": [r.point.x1, r.point.x2, r.point.x3],
                "q": r.q,
                "signs": r.signs,
                "itinerary": r.word_string(),
            })).collect::<Vec<_>>(),
        }))?,
    };
    Ok(Report::ok(text))
}

// ------------------------------------------------------------ verify-lemmas

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Longest word of M* checked for closure under coarsening.
    #[arg(long, default_value_t = 4)]
    max_len: usize,
}

/// The nontrivial refinements inside `M*` that the tables must produce.
const EXPECTED_PAIRS: [(&str, &str); 4] =
    [("[aba]", "bacb"), ("[bcb]", "bacb"), ("[aba][cba]", "abacba"), ("[cba][aba]", "abacba")];

pub fn verify_lemmas(a: VerifyArgs, format: Format) -> Result<Report, CliError> {
    json_only(format, "verify-lemmas")?;
    if a.max_len > 6 {
        return Err(validation("--max-len above 6 is not supported"));
    }
    let mut pairs: Vec<(String, String)> =
        nontrivial_m_star_pairs().into_iter().map(|(w, p)| (w.to_string(), p.name())).collect();
    pairs.sort();
    let mut expected: Vec<(String, String)> =
        EXPECTED_PAIRS.iter().map(|(w, p)| (w.to_string(), p.to_string())).collect();
    expected.sort();
    let pairs_ok = pairs == expected;
    let closure = check_m_star_closure(a.max_len);
    let ids: Vec<_> = identities().iter().map(|i| json!({ "name": i.name, "holds": i.holds() })).collect();
    let ids_ok = identities().iter().all(|i| i.holds());
    let ok = pairs_ok && closure.violations.is_empty() && ids_ok;
    let text = to_json(&json!({
        "ok": ok,
        "refinement_pairs": { "found": pairs, "expected": expected, "ok": pairs_ok },
        "m_star_closure": closure,
        "identities": { "checks": ids, "ok": ids_ok },
    }))?;
    let failure = (!ok).then(|| "verification failed; see the report".to_string());
    Ok(Report { text, failure })
}

// ---------------------------------------------------------------- enumerate

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 0)]
    mu0: usize,

    #[arg(long, default_value_t = 0)]
    mu1: usize,

    /// Only map the point `t0;t1` (comma-separated fractions) to its word.
    #[arg(long)]
    point: Option<String>,

    /// Report the classes of the I-equivalence for the hyperplanes
    /// `i-j,i-j,...` (1-based); `none` for the empty set.
    #[arg(long)]
    equivalence: Option<String>,

    /// Include the contraction schedule.
    #[arg(long)]
    schedule: bool,
}

fn parse_index_set(s: &str) -> Result<Vec<(usize, usize)>, CliError> {
    if s.trim() == "none" || s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            let (i, j) = p.trim().split_once('-').ok_or_else(|| validation(format!("bad pair `{p}`, expected i-j")))?;
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| validation(format!("bad index `{x}`")));
            Ok((parse(i)?, parse(j)?))
        })
        .collect()
}

pub fn enumerate(a: EnumerateArgs, format: Format) -> Result<Report, CliError> {
    if let Some(p) = &a.point {
        json_only(format, "enumerate --point")?;
        let point: TPoint = p.parse()?;
        let w = strata::point_to_word(&point);
        return Ok(Report::ok(to_json(&json!({ "point": point.to_string(), "word": w.to_string() }))?));
    }
    if a.mu0 > 8 || a.mu1 > 8 {
        return Err(validation("--mu0 and --mu1 are limited to 8"));
    }
    let list = strata::strata_enumerate(a.mu0, a.mu1);
    if format == Format::Csv {
        if a.schedule || a.equivalence.is_some() {
            return Err(validation("CSV output lists strata only"));
        }
        return Ok(Report::ok(to_csv(
            &["word", "n_eta"],
            list.iter().map(|s| vec![s.word.to_string(), s.n_eta.to_string()]),
        )?));
    }
    let mut out = json!({
        "mu": [a.mu0, a.mu1],
        "strata": list.iter().map(|s| json!({ "word": s.word.to_string(), "n_eta": s.n_eta })).collect::<Vec<_>>(),
    });
    if let Some(e) = &a.equivalence {
        let set = parse_index_set(e)?;
        let classes = strata::i_equivalence(&set, a.mu0, a.mu1)?;
        out["equivalence"] = json!({
            "hyperplanes": set,
            "classes": classes.iter().map(|c| c.iter().map(|w| w.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
    }
    if a.schedule {
        let s = strata::contraction_schedule(a.mu0, a.mu1)?;
        let names = |ws: &[spincurve::weyl::Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        out["schedule"] = json!({
            "final_classes": s.final_classes,
            "events": s.events.iter().map(|e| json!({
                "removed": [e.removed.0, e.removed.1],
                "classes_before": e.classes_before,
                "classes_after": e.classes_after,
                "triples": e.triples.iter().map(|t| json!({
                    "minus": names(&t[0]),
                    "zero": names(&t[1]),
                    "plus": names(&t[2]),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
    }
    Ok(Report::ok(to_json(&out)?))
}

// ------------------------------------------------------------------ bouquet

#[derive(Args, Debug)]
pub struct BouquetArgs {
    /// Endpoint in the center of Quat4: 1, -1, ac or -ac.
    #[arg(long, allow_hyphen_values = true)]
    z1: String,

    /// Largest sphere dimension listed.
    #[arg(long, default_value_t = 16)]
    cap: usize,
}

pub fn bouquet(a: BouquetArgs, format: Format) -> Result<Report, CliError> {
    if a.cap > 400 {
        return Err(validation("--cap is limited to 400"));
    }
    let z = strata::parse_central(&a.z1)?;
    let spec = strata::bouquet(&z, a.cap)?;
    let text = match format {
        Format::Json => to_json(&spec)?,
        Format::Csv => to_csv(&["z1", "dimension"], spec.spheres.iter().map(|d| vec![spec.z1.clone(), d.to_string()]))?,
    };
    Ok(Report::ok(text))
}

// -------------------------------------------------------------- normal-form

#[derive(Args, Debug)]
pub struct NormalFormArgs {
    #[arg(long, allow_hyphen_values = true)]
    x32: f64,

    /// Offset of x43 from z3 in the constructed curve (φ's first entry).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    dx43: f64,

    /// Offset of x42 from z2 in the constructed curve (φ's second entry).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    dx42: f64,

    /// JSON array of three curvature specs for β1, β2, β3 (default all 1).
    #[arg(long)]
    betas: Option<PathBuf>,

    /// Half-width of the time window of the constructed curve.
    #[arg(long, default_value_t = 1.0)]
    window: f64,

    #[arg(long, default_value_t = 401)]
    samples: usize,

    /// Skip building the curve and its itinerary.
    #[arg(long)]
    no_curve: bool,
}

pub fn normal_form(a: NormalFormArgs, format: Format) -> Result<Report, CliError> {
    json_only(format, "normal-form")?;
    if !a.x32.is_finite() || !(a.window > 0.0) || a.samples < 11 {
        return Err(validation("need finite --x32, --window > 0 and --samples ≥ 11"));
    }
    let betas = match &a.betas {
        Some(path) => {
            let specs: [KappaSpec; 3] = read_json(path)?;
            Betas(specs.map(Into::into))
        }
        None => Betas::ones(),
    };
    let nf = eta_normal_form(&betas, a.x32)?;
    let mut out = json!({ "normal_form": nf });
    if !a.no_curve {
        let l = n2_initial(a.x32, nf.z2 + a.dx42, nf.z3 + a.dx43);
        let curve = n2_curve(l, &betas, a.window, a.samples)?;
        let it = itinerary(&curve, &ItineraryOptions::default())?;
        let phi = phi_map(&l, &nf);
        out["phi"] = json!([phi.0, phi.1]);
        out["word"] = json!(it.word.to_string());
        out["itinerary"] = serde_json::to_value(it.record()).map_err(|e| validation(e.to_string()))?;
    }
    Ok(Report::ok(to_json(&out)?))
}

// ---------------------------------------------------------------- monodromy

#[derive(Args, Debug)]
pub struct MonodromyArgs {
    /// c0 as an expression in t, pi, cos, sin, + - * / ^.
    #[arg(long, allow_hyphen_values = true)]
    c0: String,

    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    c1: String,

    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    c2: String,

    /// Frobenius-norm tolerance of the classification.
    #[arg(long, default_value_t = CLASSIFY_TOL)]
    tol: f64,

    /// Start of the integration window.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    start: f64,

    /// Number of periods integrated.
    #[arg(long, default_value_t = 1)]
    periods: usize,
}

pub fn monodromy(a: MonodromyArgs, format: Format) -> Result<Report, CliError> {
    json_only(format, "monodromy")?;
    if !(a.tol > 0.0) || a.periods == 0 || !a.start.is_finite() {
        return Err(validation("need --tol > 0, --periods ≥ 1 and a finite --start"));
    }
    let triple = CoefficientTriple::parse(&a.c0, &a.c1, &a.c2)?;
    let opts = MonodromyOptions { start: a.start, periods: a.periods, ..Default::default() };
    let c = classify_triple(&triple, a.tol, &opts)?;
    Ok(Report::ok(to_json(&json!({
        "coefficients": triple.labels(),
        "class": c.class,
        "residual": c.residual(),
        "residual_plus": c.residual_plus,
        "residual_minus": c.residual_minus,
        "det": c.det,
        "monodromy": c.monodromy,
    }))?))
}

// ------------------------------------------------------------------- tables

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Words refining each tabulated letter.
    Refinement,
    /// Vanishing orders of the three minors for every permutation.
    Multiplicity,
    /// The 16 elements of Quat4 and its center.
    Quat4,
    /// The 384 signed representatives of B̃4⁺.
    Btilde,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, value_enum)]
    table: Table,
}

pub fn tables(a: TablesArgs, format: Format) -> Result<Report, CliError> {
    let text = match (a.table, format) {
        (Table::Refinement, Format::Json) => to_json(&refinement_table().to_json())?,
        (Table::Multiplicity, f) => {
            let rows: Vec<(String, [usize; 3])> = Permutation::all()
                .iter()
                .filter(|p| !p.is_identity())
                .map(|p| (p.name(), combinatorial_multiplicity(p)))
                .collect();
            match f {
                Format::Json => {
                    to_json(&rows.iter().map(|(n, m)| json!({ "letter": n, "orders": m })).collect::<Vec<_>>())?
                }
                Format::Csv => to_csv(
                    &["letter", "m1", "m2", "m3"],
                    rows.iter().map(|(n, m)| vec![n.clone(), m[0].to_string(), m[1].to_string(), m[2].to_string()]),
                )?,
            }
        }
        (Table::Quat4, Format::Json) => {
            let q = quat4_group();
            to_json(&json!({
                "elements": q.elements().iter().map(|z| z.to_string()).collect::<Vec<_>>(),
                "center": q.center().iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            }))?
        }
        (Table::Btilde, Format::Json) => to_json(&btilde_group().elements())?,
        (Table::Btilde, Format::Csv) => to_csv(
            &["id", "rep", "spin"],
            btilde_group()
                .elements()
                .iter()
                .map(|e| vec![e.id.to_string(), SignedRep::from_element(e).to_string(), e.spin.to_string()]),
        )?,
        (_, Format::Csv) => return Err(validation("this table has no CSV form")),
    };
    Ok(Report::ok(text))
}
