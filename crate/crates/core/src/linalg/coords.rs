//! Isometric real coordinates for Hermitian matrices over R, C and H.
//!
//! Diagonal entries come first, followed by the strict upper triangle in
//! row-major order with every real component scaled by `sqrt 2`. The plain dot
//! product of coordinates then equals the trace form: `tr(xy)` over R and C,
//! `Re tr(xy)` over H.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{CMatrix, QuatMatrix, Quaternion};

const SQRT2: f64 = core::f64::consts::SQRT_2;

pub fn real_sym_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

pub fn herm_dim(n: usize) -> usize {
    n * n
}

pub fn quat_herm_dim(n: usize) -> usize {
    n * (2 * n - 1)
}

fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub fn herm_to_coords(m: &CMatrix) -> Vec<f64> {
    let n = m.rows();
    let mut out: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    for (i, j) in upper_pairs(n) {
        out.push(SQRT2 * m[(i, j)].re);
        out.push(SQRT2 * m[(i, j)].im);
    }
    out
}

pub fn herm_from_coords(n: usize, c: &[f64]) -> CMatrix {
    assert_eq!(c.len(), herm_dim(n), "coordinate length");
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(c[i], 0.0);
    }
    for (k, (i, j)) in upper_pairs(n).enumerate() {
        let z = Complex64::new(c[n + 2 * k], c[n + 2 * k + 1]) / SQRT2;
        m[(i, j)] = z;
        m[(j, i)] = z.conj();
    }
    m
}

/// Coordinates of the real part of a symmetric matrix.
pub fn real_sym_to_coords(m: &CMatrix) -> Vec<f64> {
    let n = m.rows();
    let mut out: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    out.extend(upper_pairs(n).map(|(i, j)| SQRT2 * m[(i, j)].re));
    out
}

/// Real symmetric matrix, stored as a complex matrix with zero imaginary part.
pub fn real_sym_from_coords(n: usize, c: &[f64]) -> CMatrix {
    assert_eq!(c.len(), real_sym_dim(n), "coordinate length");
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(c[i], 0.0);
    }
    for (k, (i, j)) in upper_pairs(n).enumerate() {
        let z = Complex64::new(c[n + k] / SQRT2, 0.0);
        m[(i, j)] = z;
        m[(j, i)] = z;
    }
    m
}

pub fn quat_herm_to_coords(m: &QuatMatrix) -> Vec<f64> {
    let n = m.n();
    let mut out: Vec<f64> = (0..n).map(|i| m[(i, i)].a).collect();
    for (i, j) in upper_pairs(n) {
        out.extend(m[(i, j)].components().iter().map(|x| SQRT2 * x));
    }
    out
}

pub fn quat_herm_from_coords(n: usize, c: &[f64]) -> QuatMatrix {
    assert_eq!(c.len(), quat_herm_dim(n), "coordinate length");
    let mut m = QuatMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Quaternion::real(c[i]);
    }
    for (k, (i, j)) in upper_pairs(n).enumerate() {
        let o = n + 4 * k;
        let q = Quaternion::new(c[o], c[o + 1], c[o + 2], c[o + 3]).scale(1.0 / SQRT2);
        m[(i, j)] = q;
        m[(j, i)] = q.conj();
    }
    m
}
