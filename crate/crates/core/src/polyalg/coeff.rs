use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::numfmt::{fmt_complex, parse_complex};
use crate::C64;

pub type Rational = BigRational;

/// Coefficient ring for [`QuasiHomPoly`](super::QuasiHomPoly): exact rationals
/// or binary64 complex numbers.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn to_c64(&self) -> C64;
    fn to_decimal_string(&self) -> String;
    fn parse_decimal(s: &str) -> Result<Self, String>;
}

impl Coeff for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_decimal_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse_decimal(s: &str) -> Result<Self, String> {
        parse_rational(s)
    }
}

impl Coeff for C64 {
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn to_decimal_string(&self) -> String {
        fmt_complex(*self)
    }

    fn parse_decimal(s: &str) -> Result<Self, String> {
        parse_complex(s)
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.675"` or
/// `"-1.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        let q: BigInt = q.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        if q.is_zero() {
            return Err(format!("{s:?}: zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|e| format!("{s:?}: {e}"))?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(format!("{s:?}: empty number"));
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("{s:?}: not a decimal"));
    }
    let mut num: BigInt = digits.parse().map_err(|e| format!("{s:?}: {e}"))?;
    if neg {
        num = -num;
    }
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Exact rational value of a binary64.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_strings_are_exact() {
        assert_eq!(parse_rational("0.675").unwrap(), ratio(27, 40));
        assert_eq!(parse_rational("-0.291").unwrap(), ratio(-291, 1000));
        assert_eq!(parse_rational("4/3").unwrap(), ratio(4, 3));
        assert_eq!(parse_rational("1e-2").unwrap(), ratio(1, 100));
        assert_eq!(parse_rational("12").unwrap(), ratio(12, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn rational_round_trip_through_string() {
        let r = ratio(-2, 9);
        assert_eq!(r.to_decimal_string(), "-2/9");
        assert_eq!(Rational::parse_decimal("-2/9").unwrap(), r);
    }
}
