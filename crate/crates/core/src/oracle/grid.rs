use crate::error::{Error, Result};

/// Golden-section iterations; the bracket shrinks below 1e-16 well before this.
const GOLDEN_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMaximum {
    pub value: f64,
    pub argmax: f64,
}

/// Ratio of the vector `(1, t, ..., t)` in dimension `p`:
/// `(1 + (p-1) t) / (1 + (p-1) t^2)`.
pub fn structured_ratio(p: usize, t: f64) -> f64 {
    let m = (p - 1) as f64;
    (1.0 + m * t) / (1.0 + m * t * t)
}

/// Maximizes [`structured_ratio`] over `t` in `[0, 1]`: a uniform grid of
/// `resolution` points, then golden-section search on the two cells around
/// the best grid point when that point is interior.
pub fn grid_oracle(p: usize, resolution: usize) -> Result<GridMaximum> {
    if p < 2 {
        return Err(Error::InvalidDimension { got: p, min: 2 });
    }
    if resolution < 2 {
        return Err(Error::InvalidDimension { got: resolution, min: 2 });
    }
    let step = 1.0 / (resolution - 1) as f64;
    let mut best = GridMaximum {
        value: structured_ratio(p, 0.0),
        argmax: 0.0,
    };
    let mut best_index = 0;
    for i in 1..resolution {
        let t = i as f64 * step;
        let value = structured_ratio(p, t);
        if value > best.value {
            best = GridMaximum { value, argmax: t };
            best_index = i;
        }
    }
    if best_index == 0 || best_index == resolution - 1 {
        return Ok(best);
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = ((best_index - 1) as f64 * step, (best_index + 1) as f64 * step);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (structured_ratio(p, x1), structured_ratio(p, x2));
    for _ in 0..GOLDEN_ITERATIONS {
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = structured_ratio(p, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = structured_ratio(p, x1);
        }
    }
    let (t, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if value > best.value {
        best = GridMaximum { value, argmax: t };
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_fine_grid() {
        let g = grid_oracle(2, 10_000).unwrap();
        let phi = (1.0 + 2f64.sqrt()) / 2.0;
        assert!((g.value - phi).abs() < 1e-8);
        assert!((g.argmax - (2f64.sqrt() - 1.0)).abs() < 1e-4);
    }

    #[test]
    fn p4_fine_grid() {
        let g = grid_oracle(4, 10_000).unwrap();
        assert!((g.value - 1.5).abs() < 1e-8);
        assert!((g.argmax - 1.0 / 3.0).abs() < 1e-4);
    }

    #[test]
    fn endpoints_only() {
        let g = grid_oracle(2, 2).unwrap();
        assert_eq!(g.value, 1.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(grid_oracle(1, 10).is_err());
        assert!(grid_oracle(3, 1).is_err());
    }
}
