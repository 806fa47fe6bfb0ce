use alloc::vec::Vec;

use num_complex::Complex64;

use super::{coords, CMatrix, Eigh};
use crate::{tol, Error, Result};

/// Complex Hermitian matrix.
///
/// Construction checks Hermiticity to [`tol::HERM`] and then stores the exact
/// Hermitian part, so every value of this type is Hermitian to the bit.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let residual = m.hermiticity_residual();
        if residual > tol::HERM {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self::hermitian_part(&m))
    }

    /// `(m + m^dagger) / 2`, for any square `m`.
    pub fn hermitian_part(m: &CMatrix) -> Self {
        assert!(m.is_square(), "hermitian part of a non-square matrix");
        Self((m + &m.adjoint()).scale_real(0.5))
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n))
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self(CMatrix::diagonal(d))
    }

    /// Projector onto the span of a (not necessarily normalized) vector.
    pub fn projector(v: &[Complex64]) -> Self {
        let nrm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        Self::hermitian_part(&CMatrix::outer(v, v).scale_real(1.0 / nrm))
    }

    /// Inverse of [`HermitianMatrix::coords`].
    pub fn from_coords(n: usize, c: &[f64]) -> Result<Self> {
        if c.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: c.len(),
            });
        }
        Ok(Self(coords::herm_from_coords(n, c)))
    }

    /// Isometric real coordinates (diagonal, then `sqrt 2` times real and
    /// imaginary parts of the strict upper triangle).
    pub fn coords(&self) -> Vec<f64> {
        coords::herm_to_coords(&self.0)
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self(&self.0 - &rhs.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    pub fn jordan(&self, rhs: &Self) -> Self {
        Self::hermitian_part(&self.0.matmul(&rhs.0))
    }

    pub fn square(&self) -> Self {
        self.jordan(self)
    }

    /// `v^dagger self v` for an `n x r` matrix `v`.
    pub fn congruence(&self, v: &CMatrix) -> Self {
        Self::hermitian_part(&v.adjoint().matmul(&self.0).matmul(v))
    }

    pub fn eigh(&self) -> Eigh {
        super::eigen::jacobi_eigh(&self.0)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigh().values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// `min_eigenvalue >= -tol * max(1, ||self||)`.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol * self.frobenius_norm().max(1.0)
    }

    /// Square root of the positive part.
    pub fn psd_sqrt(&self) -> Self {
        self.eigh().map_spectrum(|l| super::sqrt(l.max(0.0)))
    }
}

/// Hilbert-Schmidt inner product `tr(x y)`.
pub fn hs_inner(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            found: y.n(),
        });
    }
    let n = x.n();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (x.0[(i, j)] * y.0[(j, i)]).re;
        }
    }
    Ok(acc)
}
