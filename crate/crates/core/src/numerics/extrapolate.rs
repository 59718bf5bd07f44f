//! Richardson extrapolation to zero step size.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub value: f64,
    pub error_estimate: f64,
}

/// Extrapolates `(h, value)` samples to `h = 0`.
///
/// The samples are interpolated by a polynomial in `h^order` (Neville's
/// table evaluated at zero). The error estimate is the spread of the last
/// two columns of the table: the largest difference among the final value
/// and the two extrapolations of one order less.
pub fn richardson_extrapolate(samples: &[(f64, f64)], order: u32) -> Result<Extrapolation> {
    if order == 0 {
        return Err(Error::Argument("extrapolation order must be >= 1".into()));
    }
    let needed = (order as usize + 1).max(2);
    if samples.len() < needed {
        return Err(Error::Argument(format!(
            "order {order} extrapolation needs at least {needed} samples, got {}",
            samples.len()
        )));
    }
    let mut pts: Vec<(f64, f64)> = samples.to_vec();
    if pts.iter().any(|&(h, y)| !(h > 0.0 && h.is_finite() && y.is_finite())) {
        return Err(Error::Argument("step sizes must be positive and values finite".into()));
    }
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Argument("step sizes must be distinct".into()));
    }

    let x: Vec<f64> = pts.iter().map(|&(h, _)| h.powi(order as i32)).collect();
    let n = pts.len();
    let mut table = vec![vec![0.0; n]; n];
    for i in 0..n {
        table[i][0] = pts[i].1;
        for j in 1..=i {
            let hi = table[i][j - 1];
            let lo = table[i - 1][j - 1];
            table[i][j] = hi + (hi - lo) * x[i] / (x[i - j] - x[i]);
        }
    }
    let value = table[n - 1][n - 1];
    let lower = [table[n - 2][n - 2], table[n - 1][n - 2]];
    let error_estimate = (value - lower[0])
        .abs()
        .max((value - lower[1]).abs())
        .max((lower[0] - lower[1]).abs());
    Ok(Extrapolation { value, error_estimate })
}
