use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{sqrt, CMatrix, HermitianMatrix};
use crate::{tol, Error, Result};

/// Quaternion `a + b i + c j + d k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn real(a: f64) -> Self {
        Self::new(a, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> f64 {
        sqrt(self.norm_sqr())
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Splits `q = alpha + beta j` with complex `alpha = a + b i` and
    /// `beta = c + d i`; `j` multiplies `beta` from the right.
    pub fn split(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.a, self.b),
            Complex64::new(self.c, self.d),
        )
    }

    pub fn from_split(alpha: Complex64, beta: Complex64) -> Self {
        Self::new(alpha.re, alpha.im, beta.re, beta.im)
    }

    pub fn components(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl Add for Quaternion {
    type Output = Self;

    fn add(self, r: Self) -> Self {
        Self::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl Sub for Quaternion {
    type Output = Self;

    fn sub(self, r: Self) -> Self {
        Self::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl Neg for Quaternion {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Self;

    // Hamilton product.
    fn mul(self, r: Self) -> Self {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (r.a, r.b, r.c, r.d);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

/// Dense square quaternionic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

impl QuatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimensions differ");
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(Quaternion::ZERO, |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        })
    }

    /// Symmetrized product `(xy + yx) / 2`, computed in quaternion arithmetic.
    pub fn jordan(&self, rhs: &Self) -> Self {
        let xy = self.matmul(rhs);
        let yx = rhs.matmul(self);
        Self::from_fn(self.n, |i, j| (xy[(i, j)] + yx[(i, j)]).scale(0.5))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|q| q.scale(s)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Real part of the trace.
    pub fn re_trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)].a).sum()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Complex `2n x 2n` representation `[[A, B], [-conj(B), conj(A)]]` of
    /// `x = A + B j`. This is an injective real-algebra homomorphism for any
    /// square quaternionic matrix.
    pub fn to_complex(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let (alpha, beta) = self[(i, j)].split();
                out[(i, j)] = alpha;
                out[(i, n + j)] = beta;
                out[(n + i, j)] = -beta.conj();
                out[(n + i, n + j)] = alpha.conj();
            }
        }
        out
    }

    /// Inverse of [`QuatMatrix::to_complex`]: reads `A` and `B` off the top
    /// block row.
    pub fn from_complex(m: &CMatrix) -> Result<Self> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows() / 2;
        Ok(Self::from_fn(n, |i, j| {
            Quaternion::from_split(m[(i, j)], m[(i, n + j)])
        }))
    }

    /// Complexification of a quaternionic Hermitian matrix.
    pub fn complexify(&self) -> Result<HermitianMatrix> {
        let residual = self.hermiticity_residual();
        if residual > tol::HERM {
            return Err(Error::NotHermitian { residual });
        }
        HermitianMatrix::new(self.to_complex())
    }
}

impl Index<(usize, usize)> for QuatMatrix {
    type Output = Quaternion;

    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(i < self.n && j < self.n, "index out of range");
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for QuatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(i < self.n && j < self.n, "index out of range");
        &mut self.data[i * self.n + j]
    }
}
