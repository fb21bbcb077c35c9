//! Exact rational scalars and their text form (`"num/den"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational number")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational number")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// `base^exp` for a possibly negative exponent. Panics on `0^negative`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        assert!(!base.is_zero(), "zero raised to a negative power");
        acc = acc.recip();
    }
    acc
}
