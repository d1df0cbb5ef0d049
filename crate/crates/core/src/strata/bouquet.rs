//! The sphere dimensions `2(μ0 + μ1)` attached for each admissible
//! grading `(μ0, μ1)` of a fixed endpoint `z₁ ∈ Z(Quat4)`.

use serde::Serialize;

use crate::error::StrataError;
use crate::spin4::{hat_generator, quat4_group, ExactSpin};
use crate::weyl::{endpoint_class, Generator, MuVector};

/// The spheres wedged onto `Ω(S³ × S³)`, as a sorted multiset of
/// dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BouquetSpec {
    pub z1: String,
    pub spheres: Vec<usize>,
}

fn ac() -> ExactSpin {
    hat_generator(Generator::A) * hat_generator(Generator::C)
}

/// Parses `1`, `-1`, `ac` or `-ac` (also `âĉ`, `-âĉ`, `−âĉ`) as an
/// element of the center of `Quat4`.
pub fn parse_central(s: &str) -> Result<ExactSpin, StrataError> {
    let s = s.trim().replace('−', "-");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    let z = match body {
        "1" => ExactSpin::one(),
        "ac" | "âĉ" => ac(),
        _ => return Err(StrataError::NotCentral(s.to_string())),
    };
    Ok(if neg { -z } else { z })
}

/// The name of a central element: `1`, `-1`, `ac` or `-ac`.
pub fn central_name(z: &ExactSpin) -> Result<&'static str, StrataError> {
    let a = ac();
    [(ExactSpin::one(), "1"), (-ExactSpin::one(), "-1"), (a, "ac"), (-a, "-ac")]
        .into_iter()
        .find(|(c, _)| c == z)
        .map(|(_, n)| n)
        .ok_or_else(|| StrataError::NotCentral(z.to_string()))
}

/// The pairs `(μ0, μ1)` with `μ0 + μ1 ≤ max_total` whose endpoint class
/// is `z1`, sorted by total and then by `μ0`.
pub fn n_z1(z1: &ExactSpin, max_total: usize) -> Result<Vec<(usize, usize)>, StrataError> {
    let center = quat4_group().center();
    if !center.contains(z1) {
        return Err(StrataError::NotCentral(z1.to_string()));
    }
    Ok((0..=max_total)
        .flat_map(|n| (0..=n).rev().map(move |m0| (m0, n - m0)))
        .filter(|&(m0, m1)| endpoint_class(MuVector::new(m0, m1)) == *z1)
        .collect())
}

/// The bouquet for endpoint `z1`, listing spheres up to dimension
/// `dim_cap`.
pub fn bouquet(z1: &ExactSpin, dim_cap: usize) -> Result<BouquetSpec, StrataError> {
    let mut spheres: Vec<usize> = n_z1(z1, dim_cap / 2)?.into_iter().map(|(a, b)| 2 * (a + b)).collect();
    spheres.sort_unstable();
    Ok(BouquetSpec { z1: central_name(z1)?.to_string(), spheres })
}
