use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact_arith::{ExactScalar, Rational};

/// Univariate polynomial in the parameter `C` with rational coefficients;
/// index `i` holds the coefficient of `C^i`. Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coefficients: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Rational::is_zero) {
            coefficients.pop();
        }
        UniPoly { coefficients }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monic linear polynomial `C - root`.
    pub fn linear(root: &Rational) -> Self {
        UniPoly::new(vec![-root, Rational::one()])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coefficients.get(power).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coefficients.last()
    }

    /// Horner evaluation in any exact field containing the rationals.
    pub fn eval<S: ExactScalar>(&self, at: &S) -> S {
        self.coefficients.iter().rev().fold(S::zero(), |acc, c| {
            acc.times(at).plus(&S::from_rational(c.clone()))
        })
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        UniPoly::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.coefficients.is_empty() || rhs.coefficients.is_empty() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, factor: &Rational) -> UniPoly {
        UniPoly::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    /// Newton-form interpolation through points with distinct abscissae,
    /// expanded to monomial coefficients.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UniPoly> {
        let n = points.len();
        let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
        let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let span = xs[i] - xs[i - level];
                table[i] = (&table[i] - &table[i - 1]).checked_div(&span)?;
            }
        }
        let mut poly = UniPoly::zero();
        for i in (0..n).rev() {
            poly = poly.mul(&UniPoly::linear(xs[i])).add(&UniPoly::constant(table[i].clone()));
        }
        Ok(poly)
    }
}

impl fmt::Display for UniPoly {
    /// `c0 + c1*C + ... + ck*C^k`, every power up to the degree written out.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*C")?,
                _ => write!(f, "{c}*C^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for UniPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut coefficients: Vec<Rational> = Vec::new();
        for term in s.trim().split(" + ") {
            let (coef, power) = match term.split_once("*C") {
                None => (term, 0usize),
                Some((c, "")) => (c, 1),
                Some((c, rest)) => {
                    let power = rest
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad power in term {term:?}")))?;
                    (c, power)
                }
            };
            if coefficients.len() <= power {
                coefficients.resize(power + 1, Rational::zero());
            }
            coefficients[power] = &coefficients[power] + &coef.parse::<Rational>()?;
        }
        Ok(UniPoly::new(coefficients))
    }
}
