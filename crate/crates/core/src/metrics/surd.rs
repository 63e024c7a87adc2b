//! Exact arithmetic in `ℚ(√d)` and fixed-point decimals with 60 fractional
//! digits, for closed-form constants.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polyalg::Rational;

/// `a + b√d` with rational `a`, `b` and a fixed squarefree `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: i64,
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        Self { a, b, d }
    }

    pub fn rational(a: Rational, d: i64) -> Self {
        Self::new(a, Rational::zero(), d)
    }

    pub fn sqrt_d(d: i64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixing different quadratic fields");
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn to_fixed(&self) -> Fixed {
        Fixed::from_rational(&self.a) + Fixed::from_rational(&self.b) * Fixed::sqrt_int(self.d)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_fixed().to_f64()
    }
}

impl Add for &QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: &QuadSurd) -> QuadSurd {
        self.check(o);
        QuadSurd::new(&self.a + &o.a, &self.b + &o.b, self.d)
    }
}

impl Sub for &QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: &QuadSurd) -> QuadSurd {
        self.check(o);
        QuadSurd::new(&self.a - &o.a, &self.b - &o.b, self.d)
    }
}

impl Mul for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: &QuadSurd) -> QuadSurd {
        self.check(o);
        let d = Rational::from_integer(self.d.into());
        QuadSurd::new(
            &self.a * &o.a + d * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
            self.d,
        )
    }
}

impl Div for &QuadSurd {
    type Output = QuadSurd;
    fn div(self, o: &QuadSurd) -> QuadSurd {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt d)");
        let p = self * &o.conj();
        QuadSurd::new(p.a / &n, p.b / &n, self.d)
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd::new(-self.a.clone(), -self.b.clone(), self.d)
    }
}

pub const FIXED_DIGITS: u32 = 60;

/// A real number as `value / 10^60`, truncated toward zero by every
/// operation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

fn scale() -> BigInt {
    BigInt::from(10u32).pow(FIXED_DIGITS)
}

impl Fixed {
    pub fn from_rational(r: &Rational) -> Self {
        Fixed(r.numer() * scale() / r.denom())
    }

    pub fn from_int(v: i64) -> Self {
        Fixed(BigInt::from(v) * scale())
    }

    pub fn sqrt_int(d: i64) -> Self {
        assert!(d >= 0);
        Fixed((BigInt::from(d) * scale() * scale()).sqrt())
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.0.is_negative(), "square root of a negative number");
        Fixed((&self.0 * scale()).sqrt())
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Correctly rounded (up to the last truncated digit).
    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().expect("decimal string")
    }

    /// `digits` significant digits after the point, truncated.
    pub fn to_decimal(&self, digits: u32) -> String {
        let s = self.to_string();
        let (int, frac) = s.split_once('.').expect("point");
        format!("{int}.{}", &frac[..digits.min(FIXED_DIGITS) as usize])
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0.is_negative() { "-" } else { "" };
        let mag = self.0.abs();
        let s = scale();
        let int = &mag / &s;
        let frac = (&mag % &s).to_string();
        write!(f, "{sign}{int}.{}{frac}", "0".repeat(FIXED_DIGITS as usize - frac.len()))
    }
}

impl Add for Fixed {
    type Output = Fixed;
    fn add(self, o: Fixed) -> Fixed {
        Fixed(self.0 + o.0)
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    fn sub(self, o: Fixed) -> Fixed {
        Fixed(self.0 - o.0)
    }
}

impl Mul for Fixed {
    type Output = Fixed;
    fn mul(self, o: Fixed) -> Fixed {
        Fixed(self.0 * o.0 / scale())
    }
}

impl Div for Fixed {
    type Output = Fixed;
    fn div(self, o: Fixed) -> Fixed {
        Fixed(self.0 * scale() / o.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::ratio;

    #[test]
    fn field_arithmetic() {
        let s = QuadSurd::sqrt_d(13);
        let one = QuadSurd::rational(ratio(1, 1), 13);
        let sq = &s * &s;
        assert_eq!(sq, QuadSurd::rational(ratio(13, 1), 13));
        let x = &s - &one;
        let y = &(&x * &x) / &x;
        assert_eq!(y, x);
    }

    #[test]
    fn fixed_digits() {
        let r2 = Fixed::sqrt_int(2);
        assert!(r2.to_string().starts_with("1.41421356237309504880168872420969807856967187537694"));
        assert_eq!(r2.to_f64(), std::f64::consts::SQRT_2);
        let third = Fixed::from_rational(&ratio(-1, 3));
        assert!(third.to_string().starts_with("-0.3333"));
        assert_eq!(Fixed::from_int(2).sqrt(), r2);
    }
}
