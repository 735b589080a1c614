//! One-sided finite-difference boundary traces of a sampled field.

use num_complex::Complex64;

use crate::error::{AiryError, Result};
use crate::field::{BoundaryTraces, SpaceTimeField};

/// Weights for the `derivative`-th derivative at offset 0 from nodes at
/// the given offsets (Fornberg's recursion).
pub fn fd_weights(offsets: &[f64], derivative: usize) -> Vec<f64> {
    let n = offsets.len();
    let mut c = vec![vec![0.0; derivative + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    for i in 1..n {
        let mn = i.min(derivative);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[derivative]).collect()
}

/// `∂ₓʲu` at both ends, `j = 0, 1, 2`, from one-sided stencils of the
/// requested order of accuracy (2 or 4). The field's time grid must be
/// uniform and start at zero.
pub fn extract_traces(field: &SpaceTimeField, accuracy: usize) -> Result<BoundaryTraces> {
    if accuracy != 2 && accuracy != 4 {
        return Err(AiryError::InvalidInput(format!(
            "trace accuracy {accuracy} not in {{2, 4}}"
        )));
    }
    let xs = field.xs();
    if xs.len() < 7 {
        return Err(AiryError::Accuracy(format!(
            "{} spatial points cannot support one-sided stencils (need 7)",
            xs.len()
        )));
    }
    let ts = field.ts();
    if ts.len() < 2 || ts[0] != 0.0 {
        return Err(AiryError::InvalidInput(
            "trace extraction needs a time grid starting at 0".into(),
        ));
    }
    let dt = ts[1] - ts[0];
    if ts
        .iter()
        .enumerate()
        .any(|(m, t)| (t - m as f64 * dt).abs() > 1e-9 * dt.max(1e-300) * (m as f64 + 1.0))
    {
        return Err(AiryError::InvalidInput(
            "trace extraction needs a uniform time grid".into(),
        ));
    }
    let h = xs[1] - xs[0];
    let last = xs.len() - 1;
    let stencil = |derivative: usize, sign: f64| {
        let width = accuracy + derivative;
        let offsets: Vec<f64> = (0..width).map(|k| sign * k as f64).collect();
        fd_weights(&offsets, derivative)
            .into_iter()
            .map(|w| w / h.powi(derivative as i32))
            .collect::<Vec<_>>()
    };
    let left = [stencil(1, 1.0), stencil(2, 1.0)];
    let right = [stencil(1, -1.0), stencil(2, -1.0)];
    let mut series: [[Vec<Complex64>; 3]; 2] = Default::default();
    for m in 0..ts.len() {
        let row = field.slice(m);
        series[0][0].push(row[0]);
        series[1][0].push(row[last]);
        for d in 0..2 {
            series[0][d + 1].push(left[d].iter().enumerate().map(|(k, w)| row[k] * *w).sum());
            series[1][d + 1].push(
                right[d]
                    .iter()
                    .enumerate()
                    .map(|(k, w)| row[last - k] * *w)
                    .sum(),
            );
        }
    }
    BoundaryTraces::new(dt, series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_reproduce_known_stencils() {
        let w = fd_weights(&[-1.0, 0.0, 1.0], 2);
        assert!(
            (w[0] - 1.0).abs() < 1e-14 && (w[1] + 2.0).abs() < 1e-14 && (w[2] - 1.0).abs() < 1e-14
        );
        let w = fd_weights(&[0.0, 1.0, 2.0], 1);
        assert!(
            (w[0] + 1.5).abs() < 1e-14 && (w[1] - 2.0).abs() < 1e-14 && (w[2] + 0.5).abs() < 1e-14
        );
    }
}
