//! Explicit embeddings of catalog models into complex quantum theory.
//!
//! An [`Embedding`] stores `phi` (effects to Hermitian matrices) and `psi`
//! (states to Hermitian matrices) as real matrices acting on isometric
//! coordinates, so adjoints are transposes and `psi* phi = 1` reads
//! `psi^T phi = I`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{coords, hs_inner, kron, pauli, CMatrix, HermitianMatrix, RMatrix};
use crate::models::{EffectVector, Field, ModelSpec, StateVector};
use crate::report::{Tracker, VerificationReport};
use crate::{seeded_rng, tol, Error, Result};

/// Real-linear map between coordinate spaces, `target_dim x source_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    matrix: RMatrix,
}

impl LinearMap {
    pub fn new(matrix: RMatrix) -> Self {
        Self { matrix }
    }

    /// Tabulates a linear function on the standard basis.
    pub fn from_fn(source_dim: usize, target_dim: usize, f: impl Fn(&[f64]) -> Vec<f64>) -> Self {
        let mut cols = Vec::with_capacity(source_dim);
        let mut basis = vec![0.0; source_dim];
        for k in 0..source_dim {
            basis[k] = 1.0;
            cols.push(f(&basis));
            basis[k] = 0.0;
        }
        Self {
            matrix: RMatrix::from_columns(target_dim, &cols),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.matrix.mul_vec(x)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &LinearMap) -> Self {
        Self {
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix.scale(s),
        }
    }
}

/// A candidate embedding of `model` into the `n`-level quantum model.
///
/// Construction only checks shapes; the embedding conditions are verified by
/// [`verify_embedding`].
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    model: ModelSpec,
    n: usize,
    phi: LinearMap,
    psi: LinearMap,
}

impl Embedding {
    pub fn new(model: ModelSpec, n: usize, phi: LinearMap, psi: LinearMap) -> Result<Self> {
        model.validate()?;
        let (a, b) = (model.ambient_dim(), n * n);
        if n == 0 {
            return Err(Error::InvalidArgument(
                "quantum dimension must be at least 1".into(),
            ));
        }
        for map in [&phi, &psi] {
            if map.source_dim() != a {
                return Err(Error::DimensionMismatch {
                    expected: a,
                    found: map.source_dim(),
                });
            }
            if map.target_dim() != b {
                return Err(Error::DimensionMismatch {
                    expected: b,
                    found: map.target_dim(),
                });
            }
        }
        Ok(Self { model, n, phi, psi })
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> &LinearMap {
        &self.phi
    }

    pub fn psi(&self) -> &LinearMap {
        &self.psi
    }

    fn herm(&self, c: &[f64]) -> HermitianMatrix {
        HermitianMatrix::from_coords(self.n, c).expect("target dimension checked at construction")
    }

    fn check_source(&self, len: usize) -> Result<()> {
        let a = self.model.ambient_dim();
        if len == a {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: a,
                found: len,
            })
        }
    }

    pub fn phi_of(&self, e: &EffectVector) -> Result<HermitianMatrix> {
        self.check_source(e.coords.len())?;
        Ok(self.herm(&self.phi.apply(&e.coords)))
    }

    pub fn psi_of(&self, w: &StateVector) -> Result<HermitianMatrix> {
        self.check_source(w.coords.len())?;
        Ok(self.herm(&self.psi.apply(&w.coords)))
    }

    /// `psi*`: quantum effects back to model effects.
    pub fn psi_adjoint(&self, b: &HermitianMatrix) -> Result<EffectVector> {
        self.check_target(b)?;
        Ok(EffectVector::new(self.psi.adjoint().apply(&b.coords())))
    }

    /// `phi*`: quantum states back to model states.
    pub fn phi_adjoint(&self, b: &HermitianMatrix) -> Result<StateVector> {
        self.check_target(b)?;
        Ok(StateVector::new(self.phi.adjoint().apply(&b.coords())))
    }

    fn check_target(&self, b: &HermitianMatrix) -> Result<()> {
        if b.n() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: b.n(),
            })
        }
    }

    /// Compresses both maps to the range of the isometry `v` (`n x r`):
    /// `x -> v^dagger x v`.
    pub fn restrict(&self, v: &CMatrix) -> Result<Self> {
        if v.rows() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.rows(),
            });
        }
        let r = v.cols();
        let a = self.model.ambient_dim();
        let compress = |map: &LinearMap| {
            LinearMap::from_fn(a, r * r, |x| {
                self.herm(&map.apply(x)).congruence(v).coords()
            })
        };
        Embedding::new(
            self.model.clone(),
            r,
            compress(&self.phi),
            compress(&self.psi),
        )
    }
}

/// `d` pairwise anticommuting Hermitian involutions of size `2^(d/2)`
/// (Jordan-Wigner construction).
pub fn gamma_matrices(d: usize) -> Result<Vec<HermitianMatrix>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "gamma matrices need d >= 2 (got {d})"
        )));
    }
    let m = d / 2;
    let tensor = |factors: &[CMatrix]| {
        factors
            .iter()
            .skip(1)
            .fold(factors[0].clone(), |acc, f| kron(&acc, f))
    };
    let mut out = Vec::with_capacity(d);
    for k in 1..=m {
        for middle in [pauli::x(), pauli::y()] {
            let mut factors = vec![pauli::z(); k - 1];
            factors.push(middle);
            factors.extend(core::iter::repeat_n(CMatrix::identity(2), m - k));
            out.push(HermitianMatrix::hermitian_part(&tensor(&factors)));
        }
    }
    if d % 2 == 1 {
        out.push(HermitianMatrix::hermitian_part(&tensor(&vec![
            pauli::z();
            m
        ])));
    }
    Ok(out)
}

/// Quantum dimension used by [`build_embedding`].
pub fn embedding_dimension(m: &ModelSpec) -> Result<usize> {
    Ok(match m {
        ModelSpec::Classical { n } => *n,
        ModelSpec::Quantum {
            field: Field::Quaternion,
            n,
        } => 2 * n,
        ModelSpec::Quantum { n, .. } => *n,
        ModelSpec::Spin { d } => 1 << (d / 2),
        ModelSpec::DirectSum(s) => s.iter().map(embedding_dimension).sum::<Result<usize>>()?,
        ModelSpec::Polyhedral(_) => return Err(Error::NotEmbeddableHere),
    })
}

/// Constructs the standard embedding of a catalog model.
pub fn build_embedding(m: &ModelSpec) -> Result<Embedding> {
    m.validate()?;
    let a = m.ambient_dim();
    let n = embedding_dimension(m)?;
    let b = n * n;
    let (phi, psi) = match m {
        ModelSpec::Classical { .. } => {
            let map = LinearMap::from_fn(a, b, |x| coords::herm_to_coords(&CMatrix::diagonal(x)));
            (map.clone(), map)
        }
        ModelSpec::Quantum {
            field: Field::Complex,
            ..
        } => {
            let map = LinearMap::new(RMatrix::identity(a));
            (map.clone(), map)
        }
        ModelSpec::Quantum {
            field: Field::Real,
            n,
        } => {
            let map = LinearMap::from_fn(a, b, |x| {
                coords::herm_to_coords(&coords::real_sym_from_coords(*n, x))
            });
            (map.clone(), map)
        }
        ModelSpec::Quantum {
            field: Field::Quaternion,
            n,
        } => {
            let map = LinearMap::from_fn(a, b, |x| {
                coords::herm_to_coords(&coords::quat_herm_from_coords(*n, x).to_complex())
            });
            let half = map.scale(0.5);
            (map, half)
        }
        ModelSpec::Spin { d } => {
            let gammas = gamma_matrices(*d)?;
            let map = LinearMap::from_fn(a, b, |x| {
                let mut acc = HermitianMatrix::identity(n).scale(x[0]);
                for (g, &c) in gammas.iter().zip(&x[1..]) {
                    acc = acc.add(&g.scale(c));
                }
                acc.coords()
            });
            let normalized = map.scale(1.0 / n as f64);
            (map, normalized)
        }
        ModelSpec::DirectSum(summands) => {
            let parts = summands
                .iter()
                .map(build_embedding)
                .collect::<Result<Vec<_>>>()?;
            let block = |pick: fn(&Embedding) -> &LinearMap| {
                LinearMap::from_fn(a, b, |x| {
                    let blocks: Vec<CMatrix> = parts
                        .iter()
                        .zip(ModelSpec::split(summands, x))
                        .map(|(e, xs)| coords::herm_from_coords(e.n, &pick(e).apply(xs)))
                        .collect();
                    coords::herm_to_coords(&CMatrix::block_diag(&blocks))
                })
            };
            (block(|e| &e.phi), block(|e| &e.psi))
        }
        ModelSpec::Polyhedral(_) => return Err(Error::NotEmbeddableHere),
    };
    Embedding::new(m.clone(), n, phi, psi)
}

fn normalized(mut c: Vec<f64>) -> Vec<f64> {
    let r = crate::linalg::norm(&c);
    if r > 0.0 {
        c.iter_mut().for_each(|x| *x /= r);
    }
    c
}

/// Random positive semidefinite matrix of unit Frobenius norm: a random pure
/// projector on even trials, `X X^dagger` for Gaussian `X` on odd ones.
pub(crate) fn sample_psd<R: rand::Rng + ?Sized>(
    n: usize,
    trial: usize,
    rng: &mut R,
) -> HermitianMatrix {
    use rand_distr::StandardNormal;
    let mut g = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let m = if trial.is_multiple_of(2) {
        let v: Vec<Complex64> = (0..n).map(|_| g()).collect();
        HermitianMatrix::projector(&v)
    } else {
        let x = CMatrix::from_fn(n, n, |_, _| g());
        HermitianMatrix::hermitian_part(&x.matmul(&x.adjoint()))
    };
    let r = m.frobenius_norm();
    m.scale(1.0 / r)
}

/// Random Hermitian matrix of unit Frobenius norm.
pub(crate) fn sample_hermitian<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    use rand_distr::StandardNormal;
    let c: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
    HermitianMatrix::from_coords(n, &normalized(c)).expect("n*n coordinates")
}

/// Checks the embedding conditions and their immediate consequences:
///
/// * `unitality`: `phi(u) = I`;
/// * `positivity`: `phi` and `psi` map sampled and extremal positive elements
///   to positive semidefinite matrices;
/// * `probability_preservation`: `(omega, e) = tr(psi(omega) phi(e))`;
/// * `left_inverse`: `psi* phi = 1` as a coordinate matrix identity;
/// * `normalization`: `tr psi(omega) = 1` for normalized `omega`;
/// * `adjoint_positivity`: `psi*` and `phi*` map positive matrices into the
///   effect and state cones.
pub fn verify_embedding(e: &Embedding, trials: usize, tol: f64, seed: u64) -> VerificationReport {
    let m = &e.model;
    let n = e.n;
    let mut report = VerificationReport::new(format!("embedding of {m} into Q{n}"));

    let mut unitality = Tracker::new("unitality", tol);
    let u = m.unit_effect();
    let phi_u = e.phi_of(&u).expect("unit has model dimension");
    unitality.observe(
        phi_u.sub(&HermitianMatrix::identity(n)).frobenius_norm(),
        || phi_u.coords(),
    );
    report.push(unitality.finish());

    let mut positivity = Tracker::new("positivity", tol);
    let mut prob = Tracker::new("probability_preservation", tol);
    let mut normalization = Tracker::new("normalization", tol);
    let mut rng = seeded_rng(seed, 0x20);

    let mut effects: Vec<Vec<f64>> = m
        .extremal_effects()
        .into_iter()
        .map(|v| normalized(v.coords))
        .collect();
    let mut states: Vec<Vec<f64>> = m.extremal_states().into_iter().map(|v| v.coords).collect();
    for _ in 0..trials {
        effects.push(normalized(m.sample_effect(&mut rng).coords));
        states.push(m.sample_state(&mut rng).coords);
    }

    for x in &effects {
        let img = e.herm(&e.phi.apply(x));
        positivity.observe((-img.min_eigenvalue()).max(0.0), || x.clone());
    }
    for w in &states {
        let img = e.herm(&e.psi.apply(w));
        positivity.observe((-img.min_eigenvalue()).max(0.0), || w.clone());
        normalization.observe((img.trace() - 1.0).abs(), || w.clone());
    }
    for (w, x) in states.iter().zip(effects.iter().rev()) {
        let expected = crate::linalg::dot(w, x);
        let got = hs_inner(&e.herm(&e.psi.apply(w)), &e.herm(&e.phi.apply(x))).expect("same size");
        prob.observe((expected - got).abs(), || {
            let mut wit = w.clone();
            wit.extend_from_slice(x);
            wit
        });
    }
    report.push(positivity.finish());
    report.push(prob.finish());

    let mut left_inverse = Tracker::new("left_inverse", tol);
    let gram = e.psi.adjoint().compose(&e.phi);
    let dev = gram.matrix().sub(&RMatrix::identity(m.ambient_dim()));
    left_inverse.observe(dev.max_abs(), || dev.as_slice().to_vec());
    report.push(left_inverse.finish());
    report.push(normalization.finish());

    let mut adjoint = Tracker::new("adjoint_positivity", tol);
    let mut rng = seeded_rng(seed, 0x21);
    for trial in 0..trials {
        let b = sample_psd(n, trial, &mut rng);
        let back_effect = e.psi_adjoint(&b).expect("same size");
        let back_state = e.phi_adjoint(&b).expect("same size");
        let v1 = m
            .effect_violation(&back_effect.coords)
            .expect("model dimension");
        let v2 = m
            .state_violation(&back_state.coords)
            .expect("model dimension");
        adjoint.observe(v1.max(v2), || b.coords());
    }
    report.push(adjoint.finish());
    report
}

/// Support data of `psi` at an interior state: the image of the barycenter of
/// a spanning set of states, its eigendecomposition, and its numerical rank.
#[derive(Debug, Clone)]
pub struct SupportInfo {
    pub barycenter: StateVector,
    pub image: HermitianMatrix,
    pub rank: usize,
    pub min_eigenvalue: f64,
}

pub fn support_info(e: &Embedding, seed: u64) -> SupportInfo {
    let m = &e.model;
    let mut rng = seeded_rng(seed, 0x30);
    let mut states: Vec<Vec<f64>> = m.extremal_states().into_iter().map(|s| s.coords).collect();
    states.push(m.maximally_mixed_state().coords);
    for _ in 0..=m.ambient_dim() {
        states.push(m.sample_state(&mut rng).coords);
    }
    let mut bary = vec![0.0; m.ambient_dim()];
    for s in &states {
        bary.iter_mut()
            .zip(s)
            .for_each(|(a, b)| *a += b / states.len() as f64);
    }
    let image = e.herm(&e.psi.apply(&bary));
    let ev = image.eigenvalues();
    let threshold = tol::RANK * image.trace().abs().max(f64::MIN_POSITIVE);
    let rank = ev.iter().filter(|&&l| l > threshold).count();
    SupportInfo {
        barycenter: StateVector::new(bary),
        min_eigenvalue: ev.first().copied().unwrap_or(0.0),
        image,
        rank,
    }
}

const REDUCE_TRIALS: usize = 32;
const REDUCE_SEED: u64 = 0x5eed;

/// Restricts a verified embedding to the support of the image of an interior
/// state until that image has full rank.
pub fn reduce_to_minimal(e: &Embedding, tol: f64) -> Result<Embedding> {
    let report = verify_embedding(e, REDUCE_TRIALS, tol, REDUCE_SEED);
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Unverified(bad.check.to_string()));
    }
    let mut current = e.clone();
    loop {
        let info = support_info(&current, REDUCE_SEED);
        if info.rank == current.n {
            return Ok(current);
        }
        let threshold = tol::RANK * info.image.trace();
        let v = info.image.eigh().select(|l| l > threshold);
        current = current.restrict(&v)?;
    }
}

/// Enlarges an embedding by `extra` dimensions: `phi` gains the block
/// `(omega0, a) I` for the interior state `omega0`, `psi` gains a zero block.
/// The result is a valid embedding whose states never reach the new block.
pub fn pad_embedding(e: &Embedding, extra: usize) -> Result<Embedding> {
    let n2 = e.n + extra;
    let a = e.model.ambient_dim();
    let anchor = e.model.maximally_mixed_state().coords;
    let pad = |map: &LinearMap, with_anchor: bool| {
        LinearMap::from_fn(a, n2 * n2, |x| {
            let block = coords::herm_from_coords(e.n, &map.apply(x));
            let fill = if with_anchor {
                crate::linalg::dot(&anchor, x)
            } else {
                0.0
            };
            let tail = CMatrix::identity(extra).scale_real(fill);
            coords::herm_to_coords(&CMatrix::block_diag(&[block, tail]))
        })
    };
    Embedding::new(e.model.clone(), n2, pad(&e.phi, true), pad(&e.psi, false))
}
