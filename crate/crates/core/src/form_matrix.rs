//! The quadratic form `Q_C(u) = C * sum(u_i^2) - u_1 * sum(u_i)` and its
//! symmetric arrowhead matrix
//!
//! ```text
//! [ C-1  -1/2  -1/2 ... -1/2 ]
//! [ -1/2   C    0   ...   0  ]
//! [  ...             ...     ]
//! [ -1/2   0    0   ...   C  ]
//! ```
//!
//! The form is evaluated on all of R^p; restricting to the orthant with a
//! maximal first coordinate happens in the oracle layer.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::{ExactScalar, Rational};

fn half() -> Rational {
    Rational::ratio(1, 2)
}

/// Exact dense storage of `Q_p(C)`.
#[derive(Clone, PartialEq)]
pub struct FormMatrix<S> {
    parameter: S,
    entries: Vec<Vec<S>>,
}

/// A nonempty vector of exact scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactVector<S>(Vec<S>);

impl<S: ExactScalar> ExactVector<S> {
    pub fn new(coordinates: Vec<S>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(Error::InvalidDimension { got: 0, min: 1 });
        }
        Ok(ExactVector(coordinates))
    }

    pub fn zeros(len: usize) -> Result<Self> {
        ExactVector::new(vec![S::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coordinates(&self) -> &[S] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<S> {
        self.0
    }

    pub fn dot(&self, other: &ExactVector<S>) -> Result<S> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                matrix: self.len(),
                vector: other.len(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(S::zero(), |acc, (a, b)| acc.plus(&a.times(b))))
    }

    pub fn scaled(&self, factor: &S) -> Self {
        ExactVector(self.0.iter().map(|x| x.times(factor)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(S::is_zero)
    }
}

impl<S: fmt::Display> fmt::Display for ExactVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for ExactVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl<S: ExactScalar> FormMatrix<S> {
    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn parameter(&self) -> &S {
        &self.parameter
    }

    pub fn entry(&self, row: usize, col: usize) -> &S {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// The leading `k x k` principal submatrix, which is `Q_k(C)`.
    pub fn leading(&self, k: usize) -> Result<FormMatrix<S>> {
        if k < 1 || k > self.dimension() {
            return Err(Error::MinorOutOfRange {
                k,
                p: self.dimension(),
            });
        }
        Ok(FormMatrix {
            parameter: self.parameter.clone(),
            entries: self.entries[..k].iter().map(|row| row[..k].to_vec()).collect(),
        })
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(S::to_f64).collect())
            .collect()
    }
}

impl<S: ExactScalar> fmt::Debug for FormMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormMatrix")
            .field("parameter", &self.parameter)
            .field("entries", &self.entries)
            .finish()
    }
}

/// Builds `Q_p(C)`. For `p = 1` this is the 1x1 matrix `[C - 1]`.
pub fn build_form_matrix<S: ExactScalar>(p: usize, c: &S) -> Result<FormMatrix<S>> {
    if p < 1 {
        return Err(Error::InvalidDimension { got: p, min: 1 });
    }
    let off = S::from_rational(-half());
    let mut entries = vec![vec![S::zero(); p]; p];
    entries[0][0] = c.minus(&S::one());
    for i in 1..p {
        entries[0][i] = off.clone();
        entries[i][0] = off.clone();
        entries[i][i] = c.clone();
    }
    Ok(FormMatrix {
        parameter: c.clone(),
        entries,
    })
}

/// `C * sum(u_i^2) - u_1 * sum(u_i)`, straight from the definition.
pub fn quadratic_form_value<S: ExactScalar>(u: &ExactVector<S>, c: &S) -> S {
    let coords = u.coordinates();
    let sum_sq = coords.iter().fold(S::zero(), |acc, x| acc.plus(&x.times(x)));
    let sum = coords.iter().fold(S::zero(), |acc, x| acc.plus(x));
    c.times(&sum_sq).minus(&coords[0].times(&sum))
}

/// Exact product `M u`.
pub fn apply_form<S: ExactScalar>(m: &FormMatrix<S>, u: &ExactVector<S>) -> Result<ExactVector<S>> {
    if m.dimension() != u.len() {
        return Err(Error::DimensionMismatch {
            matrix: m.dimension(),
            vector: u.len(),
        });
    }
    let out = m
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .zip(u.coordinates())
                .filter(|(a, _)| !a.is_zero())
                .fold(S::zero(), |acc, (a, x)| acc.plus(&a.times(x)))
        })
        .collect();
    Ok(ExactVector(out))
}
