//! Leading principal minors `D_k(C)` of the form matrix, computed three
//! independent ways:
//!
//! * the closed form `C^(k-2) * (C^2 - C - (k-1)/4)`,
//! * the single column replacement `v1 <- v1 + sum_j v_j / (2C)` that makes
//!   the arrowhead upper triangular, followed by the diagonal product,
//! * fraction-free determinants at `C = 1..=k+1` interpolated to a
//!   polynomial.
//!
//! `D_1 = C - 1` is handled explicitly; the closed form only covers `k >= 2`.

mod det;
mod poly;

pub use det::{bareiss_determinant, rational_determinant};
pub use poly::UniPoly;

use crate::certificate::sharp_constant;
use crate::error::{Error, Result};
use crate::exact_arith::{ExactScalar, QuadExt, Rational};
use crate::form_matrix::build_form_matrix;

fn exponent(k: usize) -> u32 {
    u32::try_from(k).expect("minor index fits in u32")
}

/// Closed form of the `k`-th leading principal minor at `C`.
pub fn minor_closed_form<S: ExactScalar>(k: usize, c: &S) -> Result<S> {
    match k {
        0 => Err(Error::InvalidDimension { got: 0, min: 1 }),
        1 => Ok(c.minus(&S::one())),
        _ => {
            let shift = S::from_rational(Rational::ratio(k as i64 - 1, 4));
            let quadratic = c.times(c).minus(c).minus(&shift);
            Ok(c.powu(exponent(k - 2)).times(&quadratic))
        }
    }
}

/// The quadratic factor `C^2 - C - (k-1)/4` of `D_k`.
pub fn minor_quadratic_factor(k: usize) -> UniPoly {
    UniPoly::new(vec![
        Rational::ratio(-(k as i64 - 1), 4),
        -Rational::one(),
        Rational::one(),
    ])
}

/// Triangularizes `Q_k(C)` by adding `1/(2C)` times every other column to
/// the first, then multiplies the diagonal.
pub fn minor_by_elimination<S: ExactScalar>(k: usize, c: &S) -> Result<S> {
    let m = build_form_matrix(k, c)?;
    if k == 1 {
        return Ok(m.entry(0, 0).clone());
    }
    if c.is_zero() {
        return Err(Error::EliminationUndefined { k });
    }
    let weight = S::one().divide(&c.plus(c))?;
    let mut rows: Vec<Vec<S>> = m.rows().to_vec();
    for row in rows.iter_mut() {
        let extra = row[1..]
            .iter()
            .fold(S::zero(), |acc, x| acc.plus(&x.times(&weight)));
        row[0] = row[0].plus(&extra);
    }
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = (0..i).find(|&j| !row[j].is_zero()) {
            return Err(Error::IdentityViolation(format!(
                "column replacement left entry ({i},{j}) = {} nonzero",
                row[j]
            )));
        }
    }
    Ok(rows
        .iter()
        .enumerate()
        .fold(S::one(), |acc, (i, row)| acc.times(&row[i])))
}

/// `D_k` as an exact polynomial in `C`, interpolated from fraction-free
/// determinants of `Q_k(C)` at `C = 1, 2, ..., k+1`.
pub fn minor_polynomial(k: usize) -> Result<UniPoly> {
    if k < 1 {
        return Err(Error::InvalidDimension { got: k, min: 1 });
    }
    let points = (1..=k as i64 + 1)
        .map(|c| {
            let c = Rational::integer(c);
            let m = build_form_matrix(k, &c)?;
            Ok((c, rational_determinant(m.rows())))
        })
        .collect::<Result<Vec<_>>>()?;
    UniPoly::interpolate(&points)
}

/// `D_k(phi_p) = phi_p^(k-2) * (p-k)/4` for `k >= 2`, and `phi_p - 1` for
/// `k = 1`, evaluated in Q(sqrt(p)).
pub fn minor_at_phi(k: usize, p: usize) -> Result<QuadExt> {
    if k < 1 {
        return Err(Error::InvalidDimension { got: k, min: 1 });
    }
    if k > p {
        return Err(Error::MinorOutOfRange { k, p });
    }
    let phi = sharp_constant(p)?;
    if k == 1 {
        return Ok(phi - QuadExt::one());
    }
    let gap = QuadExt::from_rational(Rational::ratio((p - k) as i64, 4));
    Ok(phi.pow(exponent(k - 2)) * gap)
}

/// All leading principal minors `D_1..D_p` at `C` (closed form).
pub fn leading_minors<S: ExactScalar>(p: usize, c: &S) -> Result<Vec<S>> {
    if p < 1 {
        return Err(Error::InvalidDimension { got: p, min: 1 });
    }
    (1..=p).map(|k| minor_closed_form(k, c)).collect()
}

/// Sylvester's criterion: `Q_p(C)` is positive definite iff every leading
/// principal minor is strictly positive.
pub fn sylvester_positive_definite<S: ExactScalar>(p: usize, c: &S) -> Result<bool> {
    if p < 1 {
        return Err(Error::InvalidDimension { got: p, min: 1 });
    }
    for k in 1..=p {
        if !minor_closed_form(k, c)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    /// Cofactor expansion along the first row; exponential, small k only.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        (0..n).fold(Rational::zero(), |acc, j| {
            if m[0][j].is_zero() {
                return acc;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 { acc + term } else { acc - term }
        })
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(minor_closed_form(2, &r(1, 1)).unwrap(), r(-1, 4));
        let phi3 = sharp_constant(3).unwrap();
        assert!(minor_closed_form(3, &phi3).unwrap().is_zero());
        assert_eq!(minor_closed_form(5, &r(2, 1)).unwrap(), r(8, 1));
        assert!(minor_closed_form(0, &r(2, 1)).is_err());
    }

    #[test]
    fn cofactor_oracle_matches_closed_form_examples() {
        let m = build_form_matrix(5, &r(2, 1)).unwrap();
        assert_eq!(cofactor_det(m.rows()), r(8, 1));
        let m = build_form_matrix(2, &r(1, 1)).unwrap();
        assert_eq!(cofactor_det(m.rows()), r(-1, 4));
        let m = build_form_matrix(3, &r(1, 1)).unwrap();
        assert_eq!(cofactor_det(m.rows()), r(-1, 2));
        let m = build_form_matrix(3, &r(3, 2)).unwrap();
        assert_eq!(cofactor_det(m.rows()), r(3, 8));
    }

    #[test]
    fn elimination_examples() {
        assert_eq!(minor_by_elimination(4, &r(3, 2)).unwrap(), r(0, 1));
        assert_eq!(minor_by_elimination(4, &r(3, 2)).unwrap(), minor_closed_form(4, &r(3, 2)).unwrap());
        assert_eq!(minor_by_elimination(1, &r(7, 1)).unwrap(), r(6, 1));
        assert_eq!(minor_by_elimination(3, &r(1, 1)).unwrap(), r(-1, 2));
    }

    #[test]
    fn elimination_undefined_at_zero() {
        assert_eq!(
            minor_by_elimination(3, &Rational::zero()),
            Err(Error::EliminationUndefined { k: 3 })
        );
        assert_eq!(minor_by_elimination(1, &Rational::zero()).unwrap(), r(-1, 1));
        // Closed form covers that point instead.
        assert_eq!(minor_closed_form(2, &Rational::zero()).unwrap(), r(-1, 4));
        assert!(minor_closed_form(3, &Rational::zero()).unwrap().is_zero());
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(minor_polynomial(2).unwrap(), "-1/4 + -1*C + 1*C^2".parse().unwrap());
        assert_eq!(minor_polynomial(1).unwrap(), "-1 + 1*C".parse().unwrap());
        let p4 = minor_polynomial(4).unwrap();
        assert_eq!(p4, UniPoly::new(vec![r(0, 1), r(0, 1), r(-3, 4), r(-1, 1), r(1, 1)]));
        assert_eq!(p4.degree(), Some(4));
        assert_eq!(p4.leading_coefficient(), Some(&Rational::one()));
    }

    #[test]
    fn polynomial_matches_closed_form_expansion() {
        for k in 2..=10 {
            let mut coeffs = vec![Rational::zero(); k - 2];
            coeffs.extend_from_slice(minor_quadratic_factor(k).coefficients());
            assert_eq!(minor_polynomial(k).unwrap(), UniPoly::new(coeffs), "k={k}");
        }
    }

    #[test]
    fn minor_at_phi_examples() {
        for p in 1..10 {
            assert!(minor_at_phi(p, p).unwrap().is_zero(), "p={p}");
        }
        assert_eq!(minor_at_phi(2, 5).unwrap(), QuadExt::from_rational(r(3, 4)));
        assert_eq!(minor_at_phi(3, 4).unwrap(), QuadExt::from_rational(r(3, 8)));
        assert_eq!(minor_at_phi(1, 4).unwrap(), QuadExt::from_rational(r(1, 2)));
        assert_eq!(minor_at_phi(5, 4), Err(Error::MinorOutOfRange { k: 5, p: 4 }));
    }

    #[test]
    fn sylvester_examples() {
        assert!(!sylvester_positive_definite(4, &r(3, 2)).unwrap());
        assert!(sylvester_positive_definite(4, &r(2, 1)).unwrap());
        assert!(!sylvester_positive_definite(1, &r(1, 1)).unwrap());
        // Brute-force the four minors at C = 2.
        for k in 1..=4 {
            let m = build_form_matrix(k, &r(2, 1)).unwrap();
            assert!(cofactor_det(m.rows()).signum() == std::cmp::Ordering::Greater);
        }
    }
}
