//! Dense small-scale linear algebra over the reals, complex numbers and
//! quaternions.

mod complex_matrix;
pub mod coords;
mod eigen;
mod hermitian;
mod nnls;
mod quaternion;
mod real;

pub use complex_matrix::{kron, pauli, CMatrix};
pub use eigen::Eigh;
pub use hermitian::{hs_inner, HermitianMatrix};
pub use nnls::{nnls, NnlsSolution};
pub use num_complex::Complex64;
pub use quaternion::{QuatMatrix, Quaternion};
pub use real::RMatrix;

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    sqrt(dot(x, x))
}

pub(crate) fn dist(x: &[f64], y: &[f64]) -> f64 {
    sqrt(x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum())
}
