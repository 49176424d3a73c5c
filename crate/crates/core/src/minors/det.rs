//! Fraction-free (Bareiss) determinants over the integers, lifted to
//! rational matrices by clearing row denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact_arith::Rational;

/// Determinant of a square integer matrix. Every division in the
/// elimination is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!(num.is_multiple_of(&prev));
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a square rational matrix.
pub fn rational_determinant(rows: &[Vec<Rational>]) -> Rational {
    let mut scale = BigInt::one();
    let int_rows = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let det = bareiss_determinant(int_rows);
    Rational::new(det, scale).expect("row scale is a product of positive denominators")
}
