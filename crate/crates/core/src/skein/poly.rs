use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::big_number;

/// Integer polynomial in the Conway variable `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConwayPoly {
    coeffs: Vec<BigInt>,
}

impl ConwayPoly {
    pub fn zero() -> Self {
        ConwayPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn z() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ConwayPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ConwayPoly { coeffs }
    }

    /// The polynomial `p(-z)`.
    pub fn negate_var(&self) -> Self {
        ConwayPoly {
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `Some(0)` if only even powers occur, `Some(1)` if only odd powers,
    /// `None` if mixed. The zero polynomial reports `Some(0)`.
    pub fn parity(&self) -> Option<usize> {
        let mut seen = [false; 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                seen[k % 2] = true;
            }
        }
        match seen {
            [_, false] => Some(0),
            [false, true] => Some(1),
            [true, true] => None,
        }
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    /// Parses `1 + z^2`, `z3`, `2*z^3 - z`. Either `z` or `x` may name the
    /// variable.
    pub fn parse(text: &str) -> Result<Self> {
        crate::series::parse_int_poly(text).map(Self::from_coeffs)
    }
}

impl From<i64> for ConwayPoly {
    fn from(c: i64) -> Self {
        Self::from_i64(&[c])
    }
}

impl Add for &ConwayPoly {
    type Output = ConwayPoly;
    fn add(self, rhs: &ConwayPoly) -> ConwayPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ConwayPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ConwayPoly {
    type Output = ConwayPoly;
    fn sub(self, rhs: &ConwayPoly) -> ConwayPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ConwayPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ConwayPoly {
    type Output = ConwayPoly;
    fn mul(self, rhs: &ConwayPoly) -> ConwayPoly {
        if self.is_zero() || rhs.is_zero() {
            return ConwayPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ConwayPoly::from_coeffs(out)
    }
}

impl Neg for &ConwayPoly {
    type Output = ConwayPoly;
    fn neg(self) -> ConwayPoly {
        ConwayPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for ConwayPoly {
            type Output = ConwayPoly;
            fn $f(self, rhs: ConwayPoly) -> ConwayPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ConwayPoly {
    type Output = ConwayPoly;
    fn neg(self) -> ConwayPoly {
        -&self
    }
}

/// Writes nonzero terms in increasing degree, e.g. `1 + z^2`, `-2*z^3`.
fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
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
        match k {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "{var}")?,
            1 => write!(f, "{mag}*{var}")?,
            _ if unit => write!(f, "{var}^{k}")?,
            _ => write!(f, "{mag}*{var}^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "z")
    }
}

impl FromStr for ConwayPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for ConwayPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(big_number))
    }
}
