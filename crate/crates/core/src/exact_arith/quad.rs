use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exact element `a + b*sqrt(d)` of the real quadratic field Q(sqrt(d)).
///
/// The radicand is kept squarefree. A value with no radical part is stored with
/// radicand 1, so rationals combine freely with any field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: Rational,
    radical: Rational,
    radicand: BigUint,
}

/// Field operation selector for [`quad_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Splits `n` as `square^2 * free` with `free` squarefree.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut f = BigUint::from(2u32);
    while &f * &f <= rest {
        let mut exp = 0u32;
        while (&rest % &f).is_zero() {
            rest /= &f;
            exp += 1;
        }
        if exp > 0 {
            square *= num_traits::pow(f.clone(), (exp / 2) as usize);
            if exp % 2 == 1 {
                free *= &f;
            }
        }
        f += 1u32;
    }
    free *= rest;
    (square, free)
}

impl QuadExt {
    /// Canonicalizes `a + b*sqrt(d)`. Square factors of `d` move into `b`;
    /// a perfect-square `d` (including 0) folds into the rational part.
    pub fn new(a: Rational, b: Rational, d: impl Into<BigUint>) -> Self {
        let d = d.into();
        let (square, free) = squarefree_decompose(&d);
        let b = b * Rational::integer(BigInt::from(square));
        if b.is_zero() {
            return QuadExt::from_rational(a);
        }
        if free.is_one() {
            return QuadExt::from_rational(a + b);
        }
        QuadExt {
            rational: a,
            radical: b,
            radicand: free,
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt {
            rational: a,
            radical: Rational::zero(),
            radicand: BigUint::one(),
        }
    }

    /// `sqrt(n)` as a field element.
    pub fn sqrt_of(n: impl Into<BigUint>) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), n)
    }

    pub fn zero() -> Self {
        QuadExt::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        QuadExt::from_rational(Rational::one())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn radical_part(&self) -> &Rational {
        &self.radical
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    /// The rational value, if there is no radical part.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            rational: self.rational.clone(),
            radical: -&self.radical,
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        let d = Rational::integer(BigInt::from(self.radicand.clone()));
        &self.rational * &self.rational - &self.radical * &self.radical * d
    }

    fn common_radicand(&self, other: &QuadExt) -> Result<BigUint> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.radicand.clone()),
            (_, true) => Ok(self.radicand.clone()),
            _ if self.radicand == other.radicand => Ok(self.radicand.clone()),
            _ => Err(Error::RadicandMismatch {
                left: self.radicand.to_string(),
                right: other.radicand.to_string(),
            }),
        }
    }

    fn assemble(a: Rational, b: Rational, d: BigUint) -> Self {
        if b.is_zero() {
            QuadExt::from_rational(a)
        } else {
            QuadExt {
                rational: a,
                radical: b,
                radicand: d,
            }
        }
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<Self> {
        let d = self.common_radicand(rhs)?;
        Ok(QuadExt::assemble(
            &self.rational + &rhs.rational,
            &self.radical + &rhs.radical,
            d,
        ))
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<Self> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<Self> {
        let d = self.common_radicand(rhs)?;
        let dr = Rational::integer(BigInt::from(d.clone()));
        let a = &self.rational * &rhs.rational + &self.radical * &rhs.radical * dr;
        let b = &self.rational * &rhs.radical + &rhs.rational * &self.radical;
        Ok(QuadExt::assemble(a, b, d))
    }

    pub fn recip(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            // Only reachable for the zero element: d is squarefree and not 1.
            return Err(Error::DivisionByZero);
        }
        let inv = norm.recip()?;
        Ok(QuadExt::assemble(
            &self.rational * &inv,
            -(&self.radical * &inv),
            self.radicand.clone(),
        ))
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<Self> {
        self.common_radicand(rhs)?;
        self.checked_mul(&rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadExt::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign of `a + b*sqrt(d)`.
    pub fn signum(&self) -> Ordering {
        let sa = self.rational.signum();
        let sb = self.radical.signum();
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: the larger magnitude wins; a^2 = b^2 d is impossible.
        if self.norm().signum() == Ordering::Greater {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest double, within one unit in the last place for values in the
    /// normal range. Evaluated from a floor of the value scaled by 2^s using
    /// exact integer square roots, so cancellation between the parts costs
    /// no accuracy.
    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return self.rational.to_f64();
        }
        let (an, ad) = (self.rational.numer(), self.rational.denom());
        let (bn, bd) = (self.radical.numer(), self.radical.denom());
        let den = ad * bd;
        let d = BigInt::from(self.radicand.clone());
        let threshold = BigInt::one() << 64u32;
        let mut shift: u32 = 0;
        loop {
            let x = (an * bd) << shift;
            let y = (bn * ad) << shift;
            let y2d = BigUint::try_from(&y * &y * &d).expect("square is nonnegative");
            let root = y2d.sqrt();
            let floor_radical = if y.sign() != Sign::Minus {
                BigInt::from(root)
            } else if &root * &root == y2d {
                -BigInt::from(root)
            } else {
                -BigInt::from(root) - 1
            };
            let scaled = (x + floor_radical).div_floor(&den);
            if scaled.abs() >= threshold || shift > 1 << 20 {
                let mut value = scaled.to_f64().unwrap_or(f64::NAN);
                let mut remaining = shift as i32;
                while remaining > 0 {
                    let step = remaining.min(1000);
                    value *= 2f64.powi(-step);
                    remaining -= step;
                }
                return value;
            }
            let have = scaled.bits() as u32;
            shift += 64 + (64 - have.min(64)).max(1);
        }
    }
}

/// Exact field arithmetic on two elements of a common Q(sqrt(d)).
pub fn quad_arith(x: &QuadExt, y: &QuadExt, op: QuadOp) -> Result<QuadExt> {
    match op {
        QuadOp::Add => x.checked_add(y),
        QuadOp::Sub => x.checked_sub(y),
        QuadOp::Mul => x.checked_mul(y),
        QuadOp::Div => x.checked_div(y),
    }
}

/// Canonical constructor; see [`QuadExt::new`].
pub fn quad_make(a: Rational, b: Rational, d: impl Into<BigUint>) -> QuadExt {
    QuadExt::new(a, b, d)
}

pub fn quad_to_float(x: &QuadExt) -> f64 {
    x.to_f64()
}

impl From<Rational> for QuadExt {
    fn from(value: Rational) -> Self {
        QuadExt::from_rational(value)
    }
}

impl PartialOrd for QuadExt {
    /// `None` when the operands live in different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_sub(other).ok().map(|diff| diff.signum())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rational, self.radical, self.radicand)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Accepts `a`, `a + b*sqrt(d)` and `b*sqrt(d)`, with `a`, `b` in the
    /// rational grammar. The result is canonicalized.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(open) = s.find("*sqrt(") else {
            return Ok(QuadExt::from_rational(s.parse()?));
        };
        let inner = s[open + "*sqrt(".len()..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unterminated sqrt in {s:?}")))?;
        let d: BigUint = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid radicand in {s:?}")))?;
        let head = &s[..open];
        let (a, b) = match head.rfind(" + ") {
            Some(plus) => (head[..plus].parse()?, head[plus + 3..].parse()?),
            None => (Rational::zero(), head.parse()?),
        };
        Ok(QuadExt::new(a, b, d))
    }
}

macro_rules! forward_field_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            /// Panics if the operands live in different fields (or on a zero divisor).
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                $trait::$method(&self, rhs)
            }
        }
    };
}

forward_field_op!(Add, add, checked_add);
forward_field_op!(Sub, sub, checked_sub);
forward_field_op!(Mul, mul, checked_mul);
forward_field_op!(Div, div, checked_div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::assemble(-&self.rational, -&self.radical, self.radicand.clone())
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}
