//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{sqrt, CMatrix, HermitianMatrix};
use crate::tol;

/// Spectral decomposition `m = V diag(values) V^dagger`, eigenvalues ascending
/// and eigenvectors as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    /// `V diag(f(values)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.values.len();
        let scaled = CMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * f(self.values[j]));
        HermitianMatrix::hermitian_part(&scaled.matmul(&self.vectors.adjoint()))
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.map_spectrum(|l| l)
    }

    /// Columns of `vectors` whose eigenvalue satisfies `keep`.
    pub fn select(&self, keep: impl Fn(f64) -> bool) -> CMatrix {
        let n = self.vectors.rows();
        let cols: Vec<usize> = (0..self.values.len())
            .filter(|&j| keep(self.values[j]))
            .collect();
        CMatrix::from_fn(n, cols.len(), |i, k| self.vectors[(i, cols[k])])
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    sqrt(acc)
}

/// Each rotation first removes the phase of `a_pq` with a diagonal unitary and
/// then applies a real Givens rotation that annihilates the now-real entry.
pub(super) fn jacobi_eigh(m: &CMatrix) -> Eigh {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();

    if n > 1 && scale > 0.0 {
        for _ in 0..tol::JACOBI_MAX_SWEEPS {
            if off_diagonal_norm(&a) <= tol::JACOBI * scale {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Eigh { values, vectors }
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }

    let phase = apq / r;
    let phase_c = phase.conj();
    for k in 0..n {
        a[(k, q)] *= phase_c;
        v[(k, q)] *= phase_c;
    }
    for k in 0..n {
        a[(q, k)] *= phase;
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / sqrt(t * t + 1.0);
    let s = t * c;

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}
