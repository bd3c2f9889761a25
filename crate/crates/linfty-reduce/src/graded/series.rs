//! Power series in ħ truncated modulo ħ^(N+1).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSeries {
    // always order + 1 entries
    coeffs: Vec<Scalar>,
}

impl FormalSeries {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Argument("a series needs at least the ħ^0 coefficient".into()));
        }
        Ok(FormalSeries { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        FormalSeries { coeffs: vec![Scalar::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c ħ^power`, zero when the power is truncated away.
    pub fn monomial(c: Scalar, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Truncates or zero-pads to the given order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Scalar::zero());
        FormalSeries { coeffs }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FormalSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by ħ^k.
    pub fn mul_hbar(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = Self::zero(n - 1);
        for i in 0..n.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_orders(self, other)?;
        Ok(FormalSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_orders(self, other)?;
        let n = self.coeffs.len();
        let mut out = Self::zero(n - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        assert_eq!(self.order(), other.order(), "truncation orders differ");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(scalar::format_scalar).collect()
    }
}

fn check_orders(a: &FormalSeries, b: &FormalSeries) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::Argument(format!("truncation orders differ: {} vs {}", a.order(), b.order())));
    }
    Ok(())
}

pub fn series_mul(a: &FormalSeries, b: &FormalSeries) -> Result<FormalSeries> {
    a.try_mul(b)
}

pub fn series_geometric_inverse(a: &FormalSeries) -> Result<FormalSeries> {
    let a0 = a.coeff(0);
    if a0.is_zero() {
        return Err(Error::Singular("constant term of the series is zero".into()));
    }
    let inv0 = a0.recip();
    let n = a.order();
    let mut b = FormalSeries::zero(n);
    b.coeffs[0] = inv0.clone();
    for k in 1..=n {
        let mut acc = Scalar::zero();
        for j in 1..=k {
            acc += a.coeff(j) * &b.coeffs[k - j];
        }
        b.coeffs[k] = -(acc * &inv0);
    }
    Ok(b)
}

impl Add for &FormalSeries {
    type Output = FormalSeries;
    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        self.try_add(rhs).expect("series addition")
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        self.try_add(&-rhs).expect("series subtraction")
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        FormalSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        -&self
    }
}

impl AddAssign<&FormalSeries> for FormalSeries {
    fn add_assign(&mut self, rhs: &FormalSeries) {
        self.add_scaled(rhs, &Scalar::one());
    }
}

impl SubAssign<&FormalSeries> for FormalSeries {
    fn sub_assign(&mut self, rhs: &FormalSeries) {
        self.add_scaled(rhs, &-Scalar::one());
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Scalar::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "ħ")?,
                (_, false) => write!(f, "{mag}ħ")?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}
