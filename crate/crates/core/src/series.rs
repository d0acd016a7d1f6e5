//! Truncated formal power series in one variable with exact integer
//! coefficients.
//!
//! A [`TruncatedSeries`] of order `L` stores `c_0, ..., c_L` and represents
//! an element of `Z[H] / (H^{L+1})`. Binary operations require both
//! operands to share the same order; nothing is re-truncated implicitly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past `H^order`.
    pub fn new<I, T>(coeffs: I, order: usize) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().take(order + 1).map(Into::into).collect();
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        coeffs.resize(order + 1, BigInt::zero());
        Ok(Self { coeffs })
    }

    pub fn constant<T: Into<BigInt>>(value: T, order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = value.into();
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(1, order)
    }

    /// `c0 + c1 H`, truncated to `order`.
    pub fn linear<A: Into<BigInt>, B: Into<BigInt>>(c0: A, c1: B, order: usize) -> Self {
        let mut s = Self::constant(c0, order);
        if order >= 1 {
            s.coeffs[1] = c1.into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `H^i`; panics if `i` exceeds the order.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product modulo `H^{order+1}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let len = self.coeffs.len();
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..len - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Multiplicative inverse. The constant term must be `±1` so that the
    /// inverse has integer coefficients.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.abs() != BigInt::one() {
            return Err(Error::NotInvertible(a0.to_string()));
        }
        // a0 is its own inverse
        let len = self.coeffs.len();
        let mut inv: Vec<BigInt> = Vec::with_capacity(len);
        inv.push(a0.clone());
        for k in 1..len {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv.push(-(a0 * acc));
        }
        Ok(Self { coeffs: inv })
    }

    /// Substitutes `H -> -H`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(first && i == self.order()) {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "H")?,
                _ => write!(f, "{mag}H")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
            first = false;
        }
        write!(f, " + O(H^{})", self.order() + 1)
    }
}

/// Exact binomial coefficient; zero for `k < 0` or `k > m`.
pub fn binomial(m: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > m {
        return BigInt::zero();
    }
    let k = (k as u64).min(m - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= m - k + i;
        acc /= i;
    }
    acc
}

/// `1 / (1 - H)^{N+1}`, whose coefficient of `H^i` is `binomial(i + N, N)`.
pub fn geometric_power(ambient: u64, order: usize) -> Result<TruncatedSeries> {
    if ambient == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = BigInt::one();
    coeffs.push(c.clone());
    for i in 1..=order as u64 {
        c = c * (i + ambient) / i;
        coeffs.push(c.clone());
    }
    TruncatedSeries::new(coeffs, order)
}
