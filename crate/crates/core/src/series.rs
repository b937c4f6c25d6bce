//! Truncated power series, the substitutions between `x` and `z`, and
//! linear-recurrence detection.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::rational_value;
use crate::skein::ConwayPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Z,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Z => "z",
        }
    }
}

/// Power series known exactly through `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub var: Var,
    order: usize,
    coeffs: Vec<BigRational>,
    /// Orders this series was cut down from by mixed-order arithmetic.
    pub truncations: Vec<(usize, usize)>,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl TruncSeries {
    pub fn new(var: Var, order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncSeries { var, order, coeffs, truncations: vec![] }
    }

    pub fn from_ints(var: Var, order: usize, coeffs: &[BigInt]) -> Self {
        Self::new(var, order, coeffs.iter().take(order + 1).map(|c| rat(c.clone())).collect())
    }

    pub fn from_i64(var: Var, order: usize, coeffs: &[i64]) -> Self {
        Self::new(var, order, coeffs.iter().take(order + 1).map(|&c| rat(c)).collect())
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::new(var, order, vec![])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut out = Self::new(self.var, order, self.coeffs[..=order].to_vec());
        out.truncations = self.truncations.clone();
        if order < self.order {
            out.truncations.push((self.order, order));
        }
        out
    }

    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.var != other.var {
            return Err(Error::Series(format!("cannot combine series in {} and {}", self.var.name(), other.var.name())));
        }
        let n = self.order.min(other.order);
        Ok((self.truncate(n), other.truncate(n)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(self.derived(a.order, coeffs, &a, &b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(self.derived(a.order, coeffs, &a, &b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let n = a.order;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                coeffs[i + j] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
        Ok(self.derived(n, coeffs, &a, &b))
    }

    fn derived(&self, order: usize, coeffs: Vec<BigRational>, a: &Self, b: &Self) -> Self {
        let mut out = Self::new(self.var, order, coeffs);
        out.truncations = a.truncations.iter().chain(&b.truncations).copied().collect();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    /// Inverse, when the constant term is nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Series("series with zero constant term is not invertible".into()));
        }
        let n = self.order;
        let mut inv = vec![BigRational::zero(); n + 1];
        inv[0] = c0.recip();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -acc / c0;
        }
        let mut out = Self::new(self.var, n, inv);
        out.truncations = self.truncations.clone();
        Ok(out)
    }

    /// Maps `Σ a_i x^i` to `Σ a_i (-1)^i z^(2i)`, known through `z^(2N+1)`.
    pub fn subst_neg_z2(&self) -> Result<Self> {
        if self.var != Var::X {
            return Err(Error::Series("substitution x = -z^2 needs a series in x".into()));
        }
        let n = 2 * self.order + 1;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = if i % 2 == 1 { -c.clone() } else { c.clone() };
        }
        Ok(Self::new(Var::Z, n, coeffs))
    }

    /// Multiplies by the variable, raising the known order by one.
    pub fn shift1(&self) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        let mut out = Self::new(self.var, self.order + 1, coeffs);
        out.truncations = self.truncations.clone();
        out
    }

    /// Inverts `T = -z C(-z^2)`: returns `C` with
    /// `β_i = (-1)^(i+1) · [z^(2i+1)] T`.
    pub fn extract_from_odd(&self) -> Result<Self> {
        if self.var != Var::Z {
            return Err(Error::Series("odd extraction needs a series in z".into()));
        }
        if let Some(k) = (0..=self.order).step_by(2).find(|&k| !self.coeffs[k].is_zero()) {
            return Err(Error::Series(format!("series is not odd: z^{k} has coefficient {}", self.coeffs[k])));
        }
        if self.order >= 1 && !self.coeffs[1].is_zero() {
            return Err(Error::Series(format!(
                "z^1 coefficient is {}, expected 0 (nonzero linking number upstream)",
                self.coeffs[1]
            )));
        }
        if self.order < 1 {
            return Err(Error::Series("odd extraction needs order at least 1".into()));
        }
        let n = (self.order - 1) / 2;
        let coeffs = (0..=n)
            .map(|i| {
                let c = self.coeff(2 * i + 1);
                if i % 2 == 0 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let mut out = Self::new(Var::X, n, coeffs);
        out.truncations = self.truncations.clone();
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "var": self.var.name(),
            "N": self.order,
            "coeffs": self.coeffs.iter().map(rational_value).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{v}")?,
                (1, false) => write!(f, "{mag}*{v}")?,
                (_, true) => write!(f, "{v}^{k}")?,
                (_, false) => write!(f, "{mag}*{v}^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({v}^{})", self.order + 1)
    }
}

/// First `order + 1` coefficients of `P/Q` in `z`.
pub fn poly_div_series(p: &ConwayPoly, q: &ConwayPoly, order: usize) -> Result<TruncSeries> {
    if q.coeff(0).is_zero() {
        return Err(Error::Series("denominator has zero constant term".into()));
    }
    let num = TruncSeries::from_ints(Var::Z, order, p.coeffs());
    let den = TruncSeries::from_ints(Var::Z, order, q.coeffs());
    num.mul(&den.inverse()?)
}

/// `(1-4x)^(-1/2)`: coefficient `binom(2k, k) = 2·binom(2k-1, k)`.
pub fn central_binomial_series(order: usize) -> TruncSeries {
    let mut coeffs = vec![BigInt::one()];
    for k in 1..=order {
        let prev = coeffs[k - 1].clone();
        coeffs.push(prev * BigInt::from(2 * (2 * k - 1)) / BigInt::from(k));
    }
    TruncSeries::from_ints(Var::X, order, &coeffs)
}

pub fn factorial_series(order: usize) -> TruncSeries {
    let mut coeffs = vec![BigInt::one()];
    for k in 1..=order {
        let prev = coeffs[k - 1].clone();
        coeffs.push(prev * BigInt::from(k));
    }
    TruncSeries::from_ints(Var::X, order, &coeffs)
}

/// A linear recurrence `a_k = Σ_{j=1..m} c_j a_(k-j)` valid for `k ≥ k0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceResult {
    pub found: bool,
    pub c: Vec<BigRational>,
    pub k0: usize,
    /// Linear complexity of the data.
    pub complexity: usize,
    pub hankel_ranks: Vec<usize>,
}

impl RecurrenceResult {
    /// Continues `seq` by `count` terms using the recurrence.
    pub fn extend(&self, seq: &[BigRational], count: usize) -> Vec<BigRational> {
        let mut all = seq.to_vec();
        for _ in 0..count {
            let k = all.len();
            let next = if k < self.k0 {
                BigRational::zero()
            } else {
                self.c.iter().enumerate().fold(BigRational::zero(), |acc, (j, cj)| acc + cj * &all[k - 1 - j])
            };
            all.push(next);
        }
        all.split_off(seq.len())
    }

    /// Whether the recurrence reproduces every term of `seq` from `k0` on.
    pub fn fits(&self, seq: &[BigRational]) -> bool {
        (self.k0..seq.len()).all(|k| {
            let pred = self
                .c
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (j, cj)| acc + cj * &seq[k - 1 - j]);
            pred == seq[k]
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "found": self.found,
            "c": self.c.iter().map(rational_value).collect::<Vec<_>>(),
            "k0": self.k0,
            "complexity": self.complexity,
            "hankel_ranks": self.hankel_ranks,
        })
    }
}

/// Shortest linear recurrence of `seq` over the rationals, reported as found
/// when its order is at most `max_order` and the data over-determines it
/// (twice the linear complexity is below the number of terms).
pub fn berlekamp_massey_bounded(seq: &[BigRational], max_order: usize) -> RecurrenceResult {
    let n = seq.len();
    // Connection polynomial C with C(0) = 1.
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for k in 0..n {
        let mut d = seq[k].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &seq[k - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= k {
            l = k + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let rec: Vec<BigRational> = c[1..].iter().map(|x| -x.clone()).collect();
    let found = l <= max_order && 2 * l < n;
    RecurrenceResult {
        found,
        c: rec,
        k0: l,
        complexity: l,
        hankel_ranks: hankel_ranks(seq, max_order.min(n.div_ceil(2))),
    }
}

/// [`berlekamp_massey_bounded`] with the largest order the data can certify.
pub fn berlekamp_massey(seq: &[BigRational]) -> RecurrenceResult {
    berlekamp_massey_bounded(seq, seq.len().saturating_sub(1) / 2)
}

/// Ranks of the leading Hankel matrices `[a_(i+j)]`, sizes `1..=max_order`,
/// as far as the data reaches.
pub fn hankel_ranks(seq: &[BigRational], max_order: usize) -> Vec<usize> {
    (1..=max_order)
        .take_while(|&k| 2 * k - 1 <= seq.len())
        .map(|k| {
            let rows = (0..k).map(|i| (0..k).map(|j| seq[i + j].clone()).collect()).collect();
            rank(rows)
        })
        .collect()
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, piv);
        for i in r + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &m[r][col];
            for j in col..cols {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        r += 1;
    }
    r
}

pub fn to_rationals(seq: &[BigInt]) -> Vec<BigRational> {
    seq.iter().map(|b| rat(b.clone())).collect()
}

/// Parses an integer polynomial such as `1 + z^2`, `z3`, `2*z^3 - x`.
/// Either `x` or `z` may name the variable. Returns coefficients low first.
pub fn parse_int_poly(text: &str) -> Result<Vec<BigInt>> {
    let s: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |i: usize, msg: &str| Error::Syntax { pos: s.get(i).map_or(text.len(), |p| p.0), msg: msg.into() };
    if s.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut coeffs: Vec<BigInt> = vec![];
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < s.len() && s[*i].1.is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| s[start..*i].iter().map(|p| p.1).collect::<String>())
    };
    while i < s.len() {
        let mut sign = BigInt::one();
        if s[i].1 == '+' || s[i].1 == '-' {
            if s[i].1 == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !coeffs.is_empty() || i > 0 {
            return Err(err(i, "expected `+` or `-`"));
        }
        let num = digits(&mut i);
        let mut power = 0usize;
        let has_var = i < s.len() && (s[i].1 == '*' || s[i].1 == 'z' || s[i].1 == 'x');
        if has_var {
            if s[i].1 == '*' {
                if num.is_none() {
                    return Err(err(i, "`*` without coefficient"));
                }
                i += 1;
            }
            if i >= s.len() || !(s[i].1 == 'z' || s[i].1 == 'x') {
                return Err(err(i, "expected variable"));
            }
            i += 1;
            power = 1;
            if i < s.len() && s[i].1 == '^' {
                i += 1;
            }
            if let Some(p) = digits(&mut i) {
                power = p.parse().map_err(|_| err(i, "exponent too large"))?;
            } else if i > 0 && s[i - 1].1 == '^' {
                return Err(err(i, "expected exponent"));
            }
        } else if num.is_none() {
            return Err(err(i, "expected term"));
        }
        let c: BigInt = num.map_or_else(BigInt::one, |n| n.parse().expect("digits"));
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += sign * c;
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Parses a comma-separated list of integers or `p/q` rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>> {
    let mut pos = 0;
    text.split(',')
        .map(|item| {
            let at = pos;
            pos += item.len() + 1;
            let t = item.trim();
            let parsed = match t.split_once('/') {
                Some((p, q)) => p.trim().parse::<BigInt>().ok().zip(q.trim().parse::<BigInt>().ok()).and_then(
                    |(p, q)| (!q.is_zero()).then(|| BigRational::new(p, q)),
                ),
                None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
            };
            parsed.ok_or(Error::Syntax { pos: at, msg: format!("not a rational number: `{t}`") })
        })
        .collect()
}

/// gcd of a list, with 0 for the empty list.
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
