//! Lawson-Hanson active-set non-negative least squares.

use alloc::vec;
use alloc::vec::Vec;

use super::{norm, RMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct NnlsSolution {
    /// Non-negative coefficients.
    pub x: Vec<f64>,
    /// `|| a x - b ||`.
    pub residual: f64,
}

/// Minimizes `|| a x - b ||` subject to `x >= 0`.
pub fn nnls(a: &RMatrix, b: &[f64]) -> NnlsSolution {
    let n = a.cols();
    let scale = a.max_abs().max(norm(b)).max(f64::MIN_POSITIVE);
    let eps = 1e-13 * scale * scale;
    let at = a.transpose();

    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    let mut locked = vec![false; n];
    let max_iter = 10 * (n + 1);

    let gradient = |x: &[f64]| -> Vec<f64> {
        let ax = a.mul_vec(x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        at.mul_vec(&r)
    };

    for _ in 0..max_iter {
        let w = gradient(&x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && !locked[j] && w[j] > eps)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(t) = candidate else { break };
        passive[t] = true;

        let mut first = true;
        loop {
            let set: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let z_set = a.select_columns(&set).lstsq(b);
            let mut z = vec![0.0; n];
            for (k, &j) in set.iter().enumerate() {
                z[j] = z_set[k];
            }

            if set.iter().all(|&j| z[j] > 0.0) {
                x = z;
                break;
            }

            // Entering column is dependent on the passive set; drop it for good.
            if first && z[t] <= 0.0 {
                passive[t] = false;
                locked[t] = true;
                break;
            }
            first = false;

            let mut alpha = f64::INFINITY;
            for &j in &set {
                if z[j] <= 0.0 {
                    let denom = x[j] - z[j];
                    if denom > 0.0 {
                        alpha = alpha.min(x[j] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for j in 0..n {
                x[j] += alpha * (z[j] - x[j]);
            }
            for &j in &set {
                if x[j] <= 1e-15 * scale {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }

    let ax = a.mul_vec(&x);
    let residual = norm(
        &b.iter()
            .zip(&ax)
            .map(|(bi, ai)| bi - ai)
            .collect::<Vec<_>>(),
    );
    NnlsSolution { x, residual }
}
