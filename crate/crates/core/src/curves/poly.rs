//! Exact multivariate polynomials with rational coefficients, with
//! Sylvester resultants and discriminants in a chosen variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Number of variables; the transversal family uses `(x₁, x₂, x₃, t)`.
pub const NVARS: usize = 4;

/// Variable indices.
pub const X1: usize = 0;
pub const X2: usize = 1;
pub const X3: usize = 2;
pub const T: usize = 3;

const NAMES: [&str; NVARS] = ["x1", "x2", "x3", "t"];

type Monomial = [u32; NVARS];

/// A polynomial in `x₁, x₂, x₃, t` over `ℚ`; zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n, 1))
    }

    /// The variable with index `v`.
    pub fn var(v: usize) -> Self {
        let mut m = [0; NVARS];
        m[v] = 1;
        let mut p = Poly::zero();
        p.add_term(m, BigRational::one());
        p
    }

    /// `c · x₁^e₀ x₂^e₁ x₃^e₂ t^e₃`.
    pub fn monomial(c: BigRational, exps: [u32; NVARS]) -> Self {
        let mut p = Poly::zero();
        p.add_term(exps, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Poly::zero();
        for (m, v) in &self.terms {
            p.add_term(*m, v * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::int(1), |acc, _| &acc * self)
    }

    /// Degree in variable `v` (0 for the zero polynomial).
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    /// The coefficient of `var^k`, a polynomial in the other variables.
    pub fn coeff_in(&self, v: usize, k: u32) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            if m[v] == k {
                let mut m2 = *m;
                m2[v] = 0;
                p.add_term(m2, c.clone());
            }
        }
        p
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            if m[v] > 0 {
                let mut m2 = *m;
                m2[v] -= 1;
                p.add_term(m2, c * rat(m[v] as i64, 1));
            }
        }
        p
    }

    /// The polynomial with variable `v` replaced by the constant `c`.
    pub fn substitute(&self, v: usize, c: &BigRational) -> Self {
        let mut p = Poly::zero();
        for (m, coeff) in &self.terms {
            let mut m2 = *m;
            m2[v] = 0;
            let mut value = coeff.clone();
            for _ in 0..m[v] {
                value *= c;
            }
            p.add_term(m2, value);
        }
        p
    }

    /// Exact evaluation at rational values of all four variables.
    pub fn eval_exact(&self, x: &[BigRational; NVARS]) -> BigRational {
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in 0..NVARS {
                for _ in 0..m[v] {
                    term *= &x[v];
                }
            }
            sum += term;
        }
        sum
    }

    /// Floating-point evaluation.
    pub fn eval(&self, x: [f64; NVARS]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut term = c.to_f64().unwrap_or(f64::NAN);
                for v in 0..NVARS {
                    term *= x[v].powi(m[v] as i32);
                }
                term
            })
            .sum()
    }

    /// Coefficients in `t` (index = power) after substituting the other
    /// variables.
    pub fn coefficients_in_t(&self, x: [f64; 3]) -> Vec<f64> {
        let d = self.degree_in(T) as usize;
        let mut out = vec![0.0; d + 1];
        for (m, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for (v, xv) in x.iter().enumerate() {
                term *= xv.powi(m[v] as i32);
            }
            out[m[T] as usize] += term;
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let constant = m.iter().all(|e| *e == 0);
            if constant || !a.is_one() {
                write!(f, "{a}")?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            let vars: Vec<String> = (0..NVARS)
                .filter(|v| m[*v] > 0)
                .map(|v| if m[v] == 1 { NAMES[v].to_string() } else { format!("{}^{}", NAMES[v], m[v]) })
                .collect();
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = *m1;
                for v in 0..NVARS {
                    m[v] += m2[v];
                }
                p.add_term(m, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&rat(-1, 1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along rows, memoized on the set of used columns.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    assert!(n <= 16, "cofactor expansion limited to 16 columns");
    let mut memo: BTreeMap<u32, Poly> = BTreeMap::new();
    det_rec(m, 0, (1u32 << n) - 1, &mut memo)
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: u32, memo: &mut BTreeMap<u32, Poly>) -> Poly {
    if cols == 0 {
        return Poly::int(1);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Poly::zero();
    let mut sign = 1;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        if !m[row][c].is_zero() {
            let sub = det_rec(m, row + 1, cols & !(1 << c), memo);
            let term = &m[row][c] * &sub;
            acc = if sign > 0 { &acc + &term } else { &acc - &term };
        }
        sign = -sign;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// `res(f, g)` in variable `v`: the determinant of the Sylvester matrix.
pub fn resultant(f: &Poly, g: &Poly, v: usize) -> Poly {
    let m = f.degree_in(v) as usize;
    let n = g.degree_in(v) as usize;
    let size = m + n;
    if size == 0 {
        return Poly::int(1);
    }
    let mut s = vec![vec![Poly::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            s[r][r + k] = f.coeff_in(v, (m - k) as u32);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            s[n + r][r + k] = g.coeff_in(v, (n - k) as u32);
        }
    }
    determinant(&s)
}

/// `disc(f) = (−1)^{n(n−1)/2} res(f, f′) / a_n` in variable `v`; `None`
/// unless the leading coefficient `a_n` is a nonzero constant.
pub fn discriminant(f: &Poly, v: usize) -> Option<Poly> {
    let n = f.degree_in(v);
    let lead = f.coeff_in(v, n).as_constant()?;
    if lead.is_zero() {
        return None;
    }
    let r = resultant(f, &f.derivative(v), v);
    let sign = if (n * (n.saturating_sub(1)) / 2).is_multiple_of(2) { 1 } else { -1 };
    Some(r.scale(&(rat(sign, 1) / lead)))
}
