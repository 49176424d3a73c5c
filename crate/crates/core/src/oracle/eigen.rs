//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Eigenvalues in nondecreasing order.
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Diagonalizes a symmetric matrix by plane rotations. Only the upper
/// triangle is read.
pub fn symmetric_eigen(matrix: &[Vec<f64>]) -> SymmetricEigen {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if j >= i { matrix[i][j] } else { matrix[j][i] }).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>();
    let floor = f64::EPSILON * f64::EPSILON * frob;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| 2.0 * a[i][j] * a[i][j])
            .sum();
        if off <= floor {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    SymmetricEigen {
        values: order.iter().map(|&i| a[i][i]).collect(),
        vectors: order
            .iter()
            .map(|&i| (0..n).map(|k| v[k][i]).collect())
            .collect(),
    }
}

/// The dense double-precision `Q_p(C)`.
pub(crate) fn form_matrix_f64(p: usize, c: f64) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; p]; p];
    m[0][0] = c - 1.0;
    for i in 1..p {
        m[0][i] = -0.5;
        m[i][0] = -0.5;
        m[i][i] = c;
    }
    m
}

/// Eigenvalues of `Q_p(C)` in nondecreasing order.
pub fn numeric_eigenvalues(p: usize, c: f64) -> Result<Vec<f64>> {
    if p < 1 {
        return Err(Error::InvalidDimension { got: p, min: 1 });
    }
    Ok(symmetric_eigen(&form_matrix_f64(p, c)).values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(m: &[Vec<f64>], lambda: f64, x: &[f64]) -> f64 {
        m.iter()
            .enumerate()
            .map(|(i, row)| {
                let mx: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
                (mx - lambda * x[i]).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn p4_boundary() {
        let ev = numeric_eigenvalues(4, 1.5).unwrap();
        for (got, want) in ev.iter().zip([0.0, 1.5, 1.5, 2.0]) {
            assert!((got - want).abs() < 1e-9, "{ev:?}");
        }
    }

    #[test]
    fn one_by_one() {
        assert_eq!(numeric_eigenvalues(1, 3.0).unwrap(), vec![2.0]);
        assert!(numeric_eigenvalues(0, 3.0).is_err());
    }

    #[test]
    fn residuals_are_small() {
        for p in [2, 5, 16, 40] {
            let m = form_matrix_f64(p, 0.73);
            let norm = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
            let eig = symmetric_eigen(&m);
            for (lambda, x) in eig.values.iter().zip(&eig.vectors) {
                assert!(residual(&m, *lambda, x) <= 1e-10 * norm, "p={p}");
            }
        }
    }

    #[test]
    fn general_symmetric_matrix() {
        let m = vec![vec![2.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 2.0]];
        let ev = symmetric_eigen(&m).values;
        let s = 2f64.sqrt();
        for (got, want) in ev.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
