//! Integral weights in the fundamental-weight basis.
//!
//! A [`Weight`] is the coefficient vector `(a_1, ..., a_n)` of `a_1 ω_1 + ... + a_n ω_n`.
//! Coefficients are arbitrary-precision so that random property inputs and long
//! reflection walks can never overflow.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Weight(Vec<BigInt>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![BigInt::zero(); rank])
    }

    /// The fundamental weight `ω_node` (0-based `node`).
    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[node] = BigInt::from(1);
        w
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Weight(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Weight(coeffs)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff_mut(&mut self, node: usize) -> &mut BigInt {
        &mut self.0[node]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// All coefficients `>= 0`.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// All coefficients `> 0`.
    pub fn is_strictly_dominant(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    /// Comma-separated integers in node order, e.g. `-3,0,0,0,0,6`.
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the comma-separated form. Accepts ASCII `-` and U+2212 as minus signs.
    pub fn parse_csv(input: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut offset = 0;
        for field in input.split(',') {
            let trimmed = field.trim();
            let lead = field.len() - field.trim_start().len();
            if trimmed.is_empty() {
                return Err(Error::parse(input, offset + lead, "empty coefficient"));
            }
            coeffs.push(parse_int(input, offset + lead, trimmed)?);
            offset += field.len() + 1;
        }
        Ok(Weight(coeffs))
    }
}

/// Parses a signed integer, with `−` (U+2212) accepted as a minus sign.
pub(crate) fn parse_int(input: &str, position: usize, text: &str) -> Result<BigInt> {
    let normalized = text.replace('\u{2212}', "-");
    let digits = normalized.strip_prefix('+').unwrap_or(&normalized);
    digits
        .parse::<BigInt>()
        .map_err(|_| Error::parse(input, position, format!("expected an integer, found {text:?}")))
}

impl Index<usize> for Weight {
    type Output = BigInt;

    fn index(&self, node: usize) -> &BigInt {
        &self.0[node]
    }
}

impl fmt::Display for Weight {
    /// Writes `−2ω1 + ω2 + ω3`; the zero weight is written `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (node, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "\u{2212}" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str(sign)?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if magnitude != BigInt::from(1) {
                write!(f, "{magnitude}")?;
            }
            write!(f, "\u{3c9}{}", node + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn zip_with(a: &Weight, b: &Weight, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Weight {
    assert_eq!(a.rank(), b.rank(), "weights of different rank");
    Weight(a.0.iter().zip(&b.0).map(|(x, y)| op(x, y)).collect())
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        assert_eq!(self.rank(), rhs.rank(), "weights of different rank");
        for (x, y) in self.0.iter_mut().zip(&rhs.0) {
            *x += y;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        assert_eq!(self.rank(), rhs.rank(), "weights of different rank");
        for (x, y) in self.0.iter_mut().zip(&rhs.0) {
            *x -= y;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Weight> for &BigInt {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|c| self * c).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        &BigInt::from(self) * rhs
    }
}
