//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `+1` or `-1` as a scalar.
pub fn sign(s: i32) -> Scalar {
    if s < 0 {
        -one()
    } else {
        one()
    }
}

pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// Parses `"p/q"` or `"p"`; the result is reduced, so `"2/4"` reads as `1/2`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Argument(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Argument(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_scalar(c: &Scalar) -> String {
    c.to_string()
}
