use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction of arbitrary-precision integers, always stored reduced
/// with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numerator, denominator)))
    }

    /// Small-integer constructor. Panics on a zero denominator.
    pub fn ratio(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        Rational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> Ordering {
        self.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// The exact binary value of a finite double.
    pub fn from_f64_exact(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Rational)
    }

    /// Correctly rounded conversion to the nearest double.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.signum() == Ordering::Less {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Parses either the exact `num/den` grammar or a decimal literal; decimals
    /// are taken as the exact dyadic value of the nearest double.
    pub fn parse_exact_or_decimal(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Ok(r) = text.parse::<Rational>() {
            return Ok(r);
        }
        let value: f64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("not a rational or decimal: {text:?}")))?;
        Rational::from_f64_exact(value)
            .ok_or_else(|| Error::Parse(format!("non-finite value: {text:?}")))
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(text: &str) -> Result<BigInt> {
    let t = text.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid integer: {text:?}")));
    }
    t.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("invalid integer: {text:?}")))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_negative() {
                    return Err(Error::Parse(format!("negative denominator: {s:?}")));
                }
                Rational::new(parse_int(n)?, den).map_err(|_| Error::Parse(format!("zero denominator: {s:?}")))
            }
            None => Ok(Rational::integer(parse_int(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like integer division; use `checked_div` otherwise.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4)).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn render_and_parse() {
        for text in ["0", "7", "-1/2", "12345678901234567890123/7"] {
            let r: Rational = text.parse().unwrap();
            assert_eq!(r.to_string(), text);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("--1".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_is_exact_dyadic() {
        assert_eq!(Rational::parse_exact_or_decimal("1.5").unwrap(), Rational::ratio(3, 2));
        assert_eq!(Rational::parse_exact_or_decimal("3/2").unwrap(), Rational::ratio(3, 2));
        let tenth = Rational::parse_exact_or_decimal("0.1").unwrap();
        assert_eq!(tenth.denom(), &(BigInt::from(1) << 55));
        assert!(Rational::parse_exact_or_decimal("inf").is_err());
        assert!(Rational::parse_exact_or_decimal("abc").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rational::zero().recip(), Err(Error::DivisionByZero));
        assert!(Rational::one().checked_div(&Rational::zero()).is_err());
    }
}
