//! Exact quasipolynomial fitting, period detection and evaluation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combin::factorial;
use crate::enumerate::CountTable;
use crate::error::{Error, Result};

/// `f(n) = f_k(n)` for `n ≡ k (mod p)`, each `f_k` a polynomial of the same degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasipolynomial {
    degree: usize,
    period: u64,
    /// Ascending coefficients, one vector per residue.
    constituents: Vec<Vec<BigRational>>,
}

impl Quasipolynomial {
    pub fn new(degree: usize, constituents: Vec<Vec<BigRational>>) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::InvalidArgument("a quasipolynomial needs at least one constituent".into()));
        }
        if let Some(c) = constituents.iter().find(|c| c.len() != degree + 1) {
            return Err(Error::InvalidArgument(format!(
                "constituent has {} coefficients, degree {degree} needs {}",
                c.len(),
                degree + 1
            )));
        }
        Ok(Quasipolynomial { degree, period: constituents.len() as u64, constituents })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn constituents(&self) -> &[Vec<BigRational>] {
        &self.constituents
    }

    /// The residue class used for `n`, in `0..p` (so `-1` maps to `p-1`).
    pub fn residue(&self, n: i64) -> usize {
        n.rem_euclid(self.period as i64) as usize
    }

    pub fn evaluate(&self, n: i64) -> BigRational {
        horner(&self.constituents[self.residue(n)], &BigRational::from_integer(n.into()))
    }

    /// `gamma_i`: the coefficient of `n^(degree-i)` in every constituent.
    pub fn coefficient(&self, i: usize) -> Result<Vec<BigRational>> {
        if i > self.degree {
            return Err(Error::IndexOutOfRange { index: i, max: self.degree });
        }
        Ok(self.constituents.iter().map(|c| c[self.degree - i].clone()).collect())
    }

    /// Value at `n = -1`, which counts combinatorial types (regions, for labelled counts).
    pub fn types_count(&self) -> Result<BigInt> {
        let v = self.evaluate(-1);
        if !v.is_integer() {
            return Err(Error::NonIntegral(format_rational(&v)));
        }
        Ok(v.to_integer())
    }

    /// Whether every constituent is the same polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.constituents.windows(2).all(|w| w[0] == w[1])
    }

    /// Human-readable form. Period 2 is shown as `{even/odd mean} + (-1)^n [half difference]`.
    pub fn pretty(&self) -> String {
        if self.is_polynomial() {
            return poly_string(&self.constituents[0]);
        }
        if self.period == 2 {
            let two = BigRational::from_integer(2.into());
            let (e, o) = (&self.constituents[0], &self.constituents[1]);
            let mean: Vec<BigRational> = e.iter().zip(o).map(|(a, b)| (a + b) / &two).collect();
            let alt: Vec<BigRational> = e.iter().zip(o).map(|(a, b)| (a - b) / &two).collect();
            return format!("{{{}}} + (-1)^n [{}]", poly_string(&mean), poly_string(&alt));
        }
        let mut out = String::new();
        for (k, c) in self.constituents.iter().enumerate() {
            if k > 0 {
                out.push_str("; ");
            }
            out.push_str(&format!("n ≡ {k} (mod {}): {}", self.period, poly_string(c)));
        }
        out
    }
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

fn horner(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
}

fn poly_string(c: &[BigRational]) -> String {
    let mut out = String::new();
    for (k, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = a.abs();
        let var = match k {
            0 => String::new(),
            1 => "n".into(),
            _ => format!("n^{k}"),
        };
        let num = a.numer();
        if var.is_empty() || !num.is_one() {
            out.push_str(&num.to_string());
        }
        out.push_str(&var);
        if !a.denom().is_one() {
            out.push('/');
            out.push_str(&a.denom().to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical `"p/q"` form (denominator always present).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a plain integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Interpolates the first `degree+1` points exactly (Newton form, expanded to monomials).
fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let m = points.len();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - level].0);
        }
    }
    let mut poly = alloc::vec![dd[m - 1].clone()];
    for k in (0..m - 1).rev() {
        // poly <- poly·(x - x_k) + dd[k]
        let mut next = alloc::vec![BigRational::zero(); poly.len() + 1];
        for (j, a) in poly.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * &points[k].0;
        }
        next[0] += &dd[k];
        poly = next;
    }
    poly.resize(m, BigRational::zero());
    poly
}

/// Fits `(n, value)` samples with the given period and degree. Each residue class needs
/// `degree+1` interpolation nodes (its smallest `n`) plus at least one held-out point,
/// and every held-out point must match exactly.
pub fn fit_samples(samples: &[(i64, BigRational)], period: u64, degree: usize) -> Result<Quasipolynomial> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by_key(|s| s.0);
    let mut constituents = Vec::with_capacity(period as usize);
    for k in 0..period {
        let class: Vec<(BigRational, BigRational)> = sorted
            .iter()
            .filter(|(n, _)| n.rem_euclid(period as i64) as u64 == k)
            .map(|(n, v)| (BigRational::from_integer((*n).into()), v.clone()))
            .collect();
        if class.len() < degree + 2 {
            return Err(Error::InsufficientData { period, residue: k, have: class.len(), need: degree + 2 });
        }
        let poly = interpolate(&class[..degree + 1]);
        for (n, v) in &class[degree + 1..] {
            let got = horner(&poly, n);
            if got != *v {
                return Err(Error::ValidationMismatch {
                    n: n.to_integer().try_into().unwrap_or(i64::MAX),
                    expected: format_rational(v),
                    got: format_rational(&got),
                });
            }
        }
        constituents.push(poly);
    }
    Quasipolynomial::new(degree, constituents)
}

fn table_samples(table: &CountTable, labelled: bool) -> Vec<(i64, BigRational)> {
    table
        .rows
        .iter()
        .map(|(&n, c)| {
            let v = if labelled { &c.labelled } else { &c.unlabelled };
            (n as i64, BigRational::from_integer(BigInt::from(v.clone())))
        })
        .collect()
}

/// `(vol B)^q`, divided by `q!` for unlabelled counts.
pub fn expected_leading(table: &CountTable, labelled: bool) -> BigRational {
    let vol = num_traits::pow(table.board.area(), table.q as usize);
    if labelled {
        vol
    } else {
        vol / BigRational::from_integer(BigInt::from(factorial(table.q)))
    }
}

fn fit_table(table: &CountTable, period: u64, degree: usize, labelled: bool) -> Result<Quasipolynomial> {
    let qp = fit_samples(&table_samples(table, labelled), period, degree)?;
    if degree as u64 == 2 * table.q {
        let expected = expected_leading(table, labelled);
        for c in qp.coefficient(0)? {
            if c != expected {
                return Err(Error::LeadingCoefficient { expected: format_rational(&expected), got: format_rational(&c) });
            }
        }
    }
    Ok(qp)
}

/// Fits the unlabelled column. When `degree = 2q` the leading coefficient is checked
/// against `(vol B)^q/q!`.
pub fn fit(table: &CountTable, period: u64, degree: usize) -> Result<Quasipolynomial> {
    fit_table(table, period, degree, false)
}

/// Fits the labelled column (leading coefficient `(vol B)^q`).
pub fn fit_labelled(table: &CountTable, period: u64, degree: usize) -> Result<Quasipolynomial> {
    fit_table(table, period, degree, true)
}

/// Smallest `p ≤ p_max` whose fit validates. With a denominator bound only its
/// divisors are tried, since the period must divide it.
pub fn detect_period(table: &CountTable, degree: usize, p_max: u64, denominator: Option<&BigUint>) -> Result<u64> {
    let mut last = String::from("no candidate period");
    for p in 1..=p_max {
        if let Some(d) = denominator {
            if !d.is_multiple_of(&BigUint::from(p)) {
                continue;
            }
        }
        match fit(table, p, degree) {
            Ok(_) => return Ok(p),
            Err(e @ Error::InsufficientData { .. }) => {
                return Err(Error::NoPeriod { p_max, detail: format!("stopped at p = {p}: {e}") });
            }
            Err(e) => last = format!("p = {p}: {e}"),
        }
    }
    Err(Error::NoPeriod { p_max, detail: last })
}

/// Smallest and largest `n` in a table, for labelling a fit's verified range.
pub fn verified_range(table: &CountTable) -> Option<(u64, u64)> {
    Some((*table.rows.keys().next()?, *table.rows.keys().next_back()?))
}
