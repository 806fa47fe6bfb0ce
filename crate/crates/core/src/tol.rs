//! Numerical tolerances shared across the crate.

/// Absolute tolerance on Hermiticity of input matrices.
pub const HERM: f64 = 1e-10;

/// Relative tolerance on spectral reconstruction.
pub const EIG: f64 = 1e-9;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// fraction of the matrix norm.
pub const JACOBI: f64 = 1e-12;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Residual tolerance for NNLS cone membership.
pub const NNLS: f64 = 1e-9;

/// Relative eigenvalue threshold (times the trace) used to decide support.
pub const RANK: f64 = 1e-9;

/// Eigenvalue clustering threshold when splitting a fixed-point algebra.
pub const CLUSTER: f64 = 1e-8;

/// Default verification tolerance.
pub const VERIFY: f64 = 1e-9;

/// Two rays closer than this angle are treated as the same ray.
pub const RAY_ANGLE: f64 = 1e-9;
