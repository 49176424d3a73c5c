//! Exact sharpness certificates for a fixed dimension `p >= 2`.
//!
//! A certificate records the constant `phi_p = (1+sqrt(p))/2`, the chain of
//! leading minors at `phi_p`, the extremal vector `(1, t, ..., t)` with
//! `t = 1/(1+sqrt(p))`, the residual of the form matrix applied to it, the
//! exact spectrum of `Q_p(phi_p)` and the norm ratio attained by the vector.
//! [`verify_certificate`] recomputes all of it from the dimension and never
//! trusts a stored value.

mod format;

pub use format::{parse_certificate, render_certificate, OutputFormat, CERT_HEADER};

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exact_arith::{ExactScalar, QuadExt, Rational};
use crate::form_matrix::{apply_form, build_form_matrix, quadratic_form_value, ExactVector};
use crate::minors::{minor_at_phi, minor_by_elimination, minor_closed_form};

/// One eigenvalue of the closed-form spectrum with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub eigenvalue: QuadExt,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub dimension: usize,
    pub sharp_constant: QuadExt,
    /// `D_1(phi_p), ..., D_p(phi_p)`.
    pub minor_values: Vec<QuadExt>,
    pub kernel_vector: ExactVector<QuadExt>,
    pub kernel_residual_max: QuadExt,
    pub spectrum: Vec<SpectrumEntry>,
    pub equality_ratio: QuadExt,
}

fn radicand(p: usize) -> BigUint {
    BigUint::from(p)
}

/// `(1 + sqrt(p)) / 2`, with perfect squares folded to rationals.
pub fn sharp_constant(p: usize) -> Result<QuadExt> {
    if p < 1 {
        return Err(Error::InvalidDimension { got: p, min: 1 });
    }
    let half = Rational::ratio(1, 2);
    Ok(QuadExt::new(half.clone(), half, radicand(p)))
}

/// The extremal vector `(1, t, ..., t)` with `t = 1/(2 phi_p) = 1/(1+sqrt(p))`.
pub fn kernel_vector(p: usize) -> Result<ExactVector<QuadExt>> {
    if p < 2 {
        return Err(Error::InvalidDimension { got: p, min: 2 });
    }
    let phi = sharp_constant(p)?;
    let t = QuadExt::one().checked_div(&(&phi + &phi))?;
    let mut coords = vec![t; p];
    coords[0] = QuadExt::one();
    ExactVector::new(coords)
}

/// `u_1 * sum(u_i) / sum(u_i^2)`: the norm ratio of a vector whose first
/// coordinate is its largest and all coordinates are nonnegative.
pub fn equality_ratio(u: &ExactVector<QuadExt>) -> Result<QuadExt> {
    let coords = u.coordinates();
    let sum = coords.iter().fold(QuadExt::zero(), |acc, x| acc.plus(x));
    let sum_sq = u.dot(u)?;
    coords[0].times(&sum).divide(&sum_sq)
}

/// Spectrum of `Q_p(C)`: `C` with multiplicity `p-2`, plus the two roots
/// `(2C - 1 +- sqrt(p)) / 2` of `x^2 - (2C-1) x + (C^2 - C - (p-1)/4)`.
///
/// The discriminant is always `p`, so the two roots are distinct and never
/// equal `C`. Entries are sorted ascending; `C` must be rational or lie in
/// Q(sqrt(p)).
pub fn spectrum_closed_form(p: usize, c: &QuadExt) -> Result<Vec<SpectrumEntry>> {
    if p < 2 {
        return Err(Error::InvalidDimension { got: p, min: 2 });
    }
    let half = QuadExt::from_rational(Rational::ratio(1, 2));
    let centre = c.checked_sub(&half)?;
    let spread = QuadExt::sqrt_of(radicand(p)).checked_mul(&half)?;
    let mut spectrum = vec![
        SpectrumEntry {
            eigenvalue: centre.checked_sub(&spread)?,
            multiplicity: 1,
        },
        SpectrumEntry {
            eigenvalue: centre.checked_add(&spread)?,
            multiplicity: 1,
        },
    ];
    if p > 2 {
        spectrum.push(SpectrumEntry {
            eigenvalue: c.clone(),
            multiplicity: p - 2,
        });
    }
    spectrum.sort_by(|a, b| {
        a.eigenvalue
            .partial_cmp(&b.eigenvalue)
            .expect("all eigenvalues share one field")
    });
    Ok(spectrum)
}

fn violation(identity: impl Into<String>) -> Error {
    Error::IdentityViolation(identity.into())
}

fn max_abs(values: &[QuadExt]) -> QuadExt {
    values.iter().map(QuadExt::abs).fold(QuadExt::zero(), |best, v| {
        if v > best {
            v
        } else {
            best
        }
    })
}

/// Assembles the certificate and checks it before returning it.
pub fn build_certificate(p: usize) -> Result<Certificate> {
    if p < 2 {
        return Err(Error::InvalidDimension { got: p, min: 2 });
    }
    let phi = sharp_constant(p)?;
    let minor_values = (1..=p)
        .map(|k| minor_at_phi(k, p))
        .collect::<Result<Vec<_>>>()?;
    let kernel = kernel_vector(p)?;
    let residual = apply_form(&build_form_matrix(p, &phi)?, &kernel)?;
    let cert = Certificate {
        dimension: p,
        sharp_constant: phi.clone(),
        minor_values,
        kernel_residual_max: max_abs(residual.coordinates()),
        equality_ratio: equality_ratio(&kernel)?,
        kernel_vector: kernel,
        spectrum: spectrum_closed_form(p, &phi)?,
    };
    check_certificate(&cert)?;
    Ok(cert)
}

/// `true` iff every identity recorded in the certificate holds exactly.
pub fn verify_certificate(cert: &Certificate) -> bool {
    check_certificate(cert).is_ok()
}

/// Recomputes every field from the dimension alone and reports the first
/// violated identity by name.
pub fn check_certificate(cert: &Certificate) -> Result<()> {
    let p = cert.dimension;
    if p < 2 {
        return Err(violation("dimension >= 2"));
    }
    if cert.minor_values.len() != p {
        return Err(violation("minor_values length != p"));
    }
    if cert.kernel_vector.len() != p {
        return Err(violation("kernel length != p"));
    }
    let claimed = &cert.sharp_constant;

    // The constant must be the positive root of D_p's quadratic factor.
    let at_claimed = minor_closed_form(p, claimed)
        .map_err(|_| violation("sharp_constant outside Q(sqrt(p))"))?;
    if !at_claimed.is_zero() {
        return Err(violation("minor_values[p] != 0"));
    }
    let phi = sharp_constant(p)?;
    if *claimed != phi {
        return Err(violation("sharp_constant != (1+sqrt(p))/2"));
    }

    for (idx, stored) in cert.minor_values.iter().enumerate() {
        let k = idx + 1;
        let closed = minor_closed_form(k, &phi)?;
        let eliminated = minor_by_elimination(k, &phi)?;
        let at_phi = minor_at_phi(k, p)?;
        if closed != eliminated || closed != at_phi {
            return Err(violation(format!("D_{k}(phi) routes disagree")));
        }
        if *stored != closed {
            return Err(violation(format!("minor_values[{k}] != D_{k}(phi)")));
        }
        let sign = stored.signum();
        if k < p && sign != Ordering::Greater {
            return Err(violation(format!("minor_values[{k}] <= 0")));
        }
        if k == p && sign != Ordering::Equal {
            return Err(violation("minor_values[p] != 0"));
        }
    }

    let kernel = &cert.kernel_vector;
    let field = phi.radicand();
    if kernel
        .coordinates()
        .iter()
        .any(|x| !x.is_rational() && x.radicand() != field)
    {
        return Err(violation("kernel outside Q(sqrt(p))"));
    }
    let matrix = build_form_matrix(p, &phi)?;
    let residual = apply_form(&matrix, kernel)?;
    if !residual.is_zero() {
        return Err(violation("kernel_residual != 0"));
    }
    let coords = kernel.coordinates();
    if coords[0] != QuadExt::one() {
        return Err(violation("kernel[1] != 1"));
    }
    let t = &coords[1];
    if coords[1..].iter().any(|x| x != t) {
        return Err(violation("kernel not of the form (1, t, ..., t)"));
    }
    if *t >= QuadExt::from_rational(Rational::ratio(1, 2)) {
        return Err(violation("kernel t >= 1/2"));
    }
    if !quadratic_form_value(kernel, &phi).is_zero() {
        return Err(violation("form value at kernel != 0"));
    }
    if !cert.kernel_residual_max.is_zero() || max_abs(residual.coordinates()) != cert.kernel_residual_max {
        return Err(violation("kernel_residual_max != 0"));
    }

    let spectrum = spectrum_closed_form(p, &phi)?;
    if cert.spectrum != spectrum {
        return Err(violation("spectrum != closed form"));
    }
    let multiplicities: usize = spectrum.iter().map(|e| e.multiplicity).sum();
    if multiplicities != p {
        return Err(violation("spectrum multiplicities != p"));
    }
    let trace = (0..p).fold(QuadExt::zero(), |acc, i| acc.plus(matrix.entry(i, i)));
    let spectral_trace = spectrum.iter().fold(QuadExt::zero(), |acc, e| {
        acc.plus(&e.eigenvalue.times(&QuadExt::from_rational(Rational::integer(e.multiplicity as i64))))
    });
    if spectral_trace != trace {
        return Err(violation("spectrum trace != trace"));
    }
    let spectral_det = spectrum.iter().fold(QuadExt::one(), |acc, e| {
        acc.times(&e.eigenvalue.pow(e.multiplicity as u32))
    });
    if spectral_det != minor_closed_form(p, &phi)? {
        return Err(violation("spectrum product != D_p(phi)"));
    }
    if spectrum.iter().any(|e| e.eigenvalue.signum() == Ordering::Less) {
        return Err(violation("spectrum has a negative eigenvalue"));
    }
    let zeros: usize = spectrum
        .iter()
        .filter(|e| e.eigenvalue.is_zero())
        .map(|e| e.multiplicity)
        .sum();
    if zeros != 1 {
        return Err(violation("spectrum zero multiplicity != 1"));
    }

    let ratio = equality_ratio(kernel)?;
    if cert.equality_ratio != ratio || ratio != phi {
        return Err(violation("equality_ratio != sharp_constant"));
    }
    Ok(())
}
