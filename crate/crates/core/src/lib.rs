//! Construction and verification of embeddings of finite-dimensional
//! probabilistic models into complex quantum theory.
//!
//! A model is an ordered vector space `(A, A+, u)`: a cone of effects with a
//! unit effect, and the dual cone of states. An embedding into the `n`-level
//! quantum model is a pair of positive linear maps `(phi, psi)`, `phi` unital
//! on effects and `psi` on states, that reproduces every outcome probability.
//!
//! The crate covers:
//!
//! * [`linalg`]: dense complex and quaternionic matrices, a Jacobi Hermitian
//!   eigensolver, NNLS.
//! * [`models`]: classical, real/complex/quaternionic quantum, spin-factor,
//!   direct-sum and polyhedral models with cone membership and samplers.
//! * [`jordan`]: the Jordan product on every catalog model and checks of the
//!   Jordan and Euclidean identities.
//! * [`embedding`]: explicit embeddings for every catalog model, their
//!   verification and reduction to a full-rank support.
//! * [`projector`]: the projection `P = phi psi*`, its Jordan-algebraic
//!   properties, Choi matrices and classification of decoherence maps.
//! * [`decide`]: the simplex decision for polyhedral models and the gbit
//!   non-embeddability certificate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decide;
pub mod embedding;
mod error;
pub mod jordan;
pub mod linalg;
pub mod models;
pub mod projector;
pub mod report;
pub mod tol;

pub use error::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for the `stream`-th independent sequence of `seed`.
///
/// Every randomized check draws from its own stream, so results do not depend
/// on the order in which checks run.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
