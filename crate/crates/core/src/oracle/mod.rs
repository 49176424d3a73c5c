//! Floating-point checks of `|x|_1 |x|_inf <= phi_p |x|_2^2`: direct ratio
//! evaluation, a structured one-parameter grid oracle, randomized
//! falsification search and a numeric eigensolver for `Q_p(C)`.

mod eigen;
mod grid;
mod search;

pub use eigen::{numeric_eigenvalues, symmetric_eigen, SymmetricEigen};
pub use grid::{grid_oracle, structured_ratio, GridMaximum};
pub use search::{
    parse_search_report, random_search, random_search_with, sample_trial, trial_seed,
    SearchOptions, SearchReport, SEARCH_HEADER, SHARD_SIZE,
};

use crate::certificate::sharp_constant;
use crate::error::{Error, Result};
use crate::exact_arith::Rational;

/// Finite, nonempty vector of doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(coordinates: Vec<f64>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(Error::InvalidDimension { got: 0, min: 1 });
        }
        if let Some(index) = coordinates.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(RealVector(coordinates))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.0
    }
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `|x|_1 |x|_inf / |x|_2^2`. Coordinates are divided by `|x|_inf` first,
/// so the maximum is exactly 1 and nothing overflows or underflows.
pub fn evaluate_ratio(x: &RealVector) -> Result<f64> {
    ratio_of(x.coordinates())
}

pub(crate) fn ratio_of(coords: &[f64]) -> Result<f64> {
    if let Some(index) = coords.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let max = coords.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        return Err(Error::ZeroVector);
    }
    let l1 = compensated_sum(coords.iter().map(|x| x.abs() / max));
    let l2sq = compensated_sum(coords.iter().map(|x| {
        let y = x / max;
        y * y
    }));
    Ok(l1 / l2sq)
}

/// Exact ratio over the rationals, for replaying floating-point inputs.
pub fn evaluate_ratio_exact(x: &[Rational]) -> Result<Rational> {
    let max = x.iter().map(Rational::abs).max().ok_or(Error::ZeroVector)?;
    if max.is_zero() {
        return Err(Error::ZeroVector);
    }
    let l1 = x.iter().fold(Rational::zero(), |acc, v| acc + v.abs());
    let l2sq = x.iter().fold(Rational::zero(), |acc, v| acc + v * v);
    (l1 * max).checked_div(&l2sq)
}

/// The sharp constant for dimension `p` as a double.
pub fn phi_f64(p: usize) -> Result<f64> {
    Ok(sharp_constant(p)?.to_f64())
}

/// Default slack for [`check_inequality`]: `1e-12 * p`.
pub fn default_tolerance(p: usize) -> f64 {
    1e-12 * p as f64
}

/// `true` iff the ratio of `x` is at most `phi_p + tolerance`, with `p` the
/// length of `x`.
pub fn check_inequality(x: &RealVector, tolerance: Option<f64>) -> Result<bool> {
    let p = x.len();
    let ratio = evaluate_ratio(x)?;
    let tol = tolerance.unwrap_or_else(|| default_tolerance(p));
    Ok(ratio <= phi_f64(p)? + tol)
}
