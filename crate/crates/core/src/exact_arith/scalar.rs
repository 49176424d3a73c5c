use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use super::{QuadExt, Rational};
use crate::error::Result;

/// Common contract for the exact coefficient fields used by the matrix and
/// minor code. Operands passed to the binary methods must belong to the
/// same field; `QuadExt` panics otherwise.
pub trait ExactScalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn from_rational(value: Rational) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn divide(&self, rhs: &Self) -> Result<Self>;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn signum(&self) -> Ordering;
    fn to_f64(&self) -> f64;

    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    fn powu(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.times(self))
    }

    fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }
}

impl ExactScalar for Rational {
    fn from_rational(value: Rational) -> Self {
        value
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn divide(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn signum(&self) -> Ordering {
        Rational::signum(self)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn powu(&self, exp: u32) -> Self {
        self.pow(exp)
    }
}

impl ExactScalar for QuadExt {
    fn from_rational(value: Rational) -> Self {
        QuadExt::from_rational(value)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn divide(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn signum(&self) -> Ordering {
        QuadExt::signum(self)
    }
    fn to_f64(&self) -> f64 {
        QuadExt::to_f64(self)
    }
    fn powu(&self, exp: u32) -> Self {
        self.pow(exp)
    }
}
