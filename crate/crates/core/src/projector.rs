//! The projection `P = phi psi*` onto the embedded effect space, its
//! structural properties, and the Choi-matrix classification of `P` as a
//! decoherence map.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::embedding::{sample_hermitian, sample_psd, support_info, Embedding};
use crate::linalg::{coords, hs_inner, CMatrix, HermitianMatrix, RMatrix};
use crate::report::{Tracker, VerificationReport};
use crate::{seeded_rng, tol, Error, Result};

/// Real-linear map on `n x n` Hermitian matrices, stored as an `n^2 x n^2`
/// matrix on isometric coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMap {
    n: usize,
    matrix: RMatrix,
}

impl HermitianMap {
    pub fn new(n: usize, matrix: RMatrix) -> Result<Self> {
        let b = n * n;
        if matrix.rows() != b || matrix.cols() != b {
            return Err(Error::DimensionMismatch {
                expected: b,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        Ok(Self { n, matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            matrix: RMatrix::identity(n * n),
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(&HermitianMatrix) -> HermitianMatrix) -> Self {
        let b = n * n;
        let mut cols = Vec::with_capacity(b);
        let mut basis = vec![0.0; b];
        for k in 0..b {
            basis[k] = 1.0;
            cols.push(
                f(&HermitianMatrix::from_coords(n, &basis).expect("n*n coordinates")).coords(),
            );
            basis[k] = 0.0;
        }
        Self {
            n,
            matrix: RMatrix::from_columns(b, &cols),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    /// # Panics
    /// If `x` is not `n x n`.
    pub fn apply(&self, x: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(x.n(), self.n, "HermitianMap::apply: size mismatch");
        HermitianMatrix::from_coords(self.n, &self.matrix.mul_vec(&x.coords()))
            .expect("n*n coordinates")
    }

    /// Complex-linear extension: `X = H + iK` with `H`, `K` Hermitian maps to
    /// `P(H) + i P(K)`.
    pub fn apply_complex(&self, x: &CMatrix) -> CMatrix {
        let xa = x.adjoint();
        let h = HermitianMatrix::hermitian_part(x);
        let k = HermitianMatrix::hermitian_part(&(x - &xa).scale(Complex64::new(0.0, -0.5)));
        let ph = self.apply(&h).into_matrix();
        let pk = self.apply(&k).into_matrix();
        &ph + &pk.scale(Complex64::new(0.0, 1.0))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n: self.n,
            matrix: self.matrix.transpose(),
        }
    }

    pub fn compose(&self, other: &HermitianMap) -> Self {
        Self {
            n: self.n,
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank(tol::RANK)
    }
}

fn structural_residuals(e: &Embedding) -> (f64, f64) {
    let m = e.model();
    let gram = e.psi().adjoint().compose(e.phi());
    let left = gram
        .matrix()
        .sub(&RMatrix::identity(m.ambient_dim()))
        .max_abs();
    let unit = e
        .phi_of(&m.unit_effect())
        .expect("unit has model dimension")
        .sub(&HermitianMatrix::identity(e.n()))
        .frobenius_norm();
    (left, unit)
}

/// `P = phi psi*`. Requires `psi* phi = 1` and `phi(u) = I` within
/// [`tol::VERIFY`]; the randomized conditions are left to [`verify_projector`].
pub fn projector_from_embedding(e: &Embedding) -> Result<HermitianMap> {
    let (left, unit) = structural_residuals(e);
    if left.is_nan() || left > tol::VERIFY {
        return Err(Error::Unverified(format!("left_inverse residual {left:e}")));
    }
    if unit.is_nan() || unit > tol::VERIFY {
        return Err(Error::Unverified(format!("unitality residual {unit:e}")));
    }
    let p = e.phi().matrix().matmul(&e.psi().matrix().transpose());
    HermitianMap::new(e.n(), p)
}

/// `P* = psi phi*`, the projection onto the image of states.
pub fn dual_projector(e: &Embedding) -> Result<HermitianMap> {
    projector_from_embedding(e)?;
    HermitianMap::new(
        e.n(),
        e.psi().matrix().matmul(&e.phi().matrix().transpose()),
    )
}

fn herm_dist(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    a.sub(b).frobenius_norm()
}

/// Checks that `P` is a positive unital projection onto `phi(A)` with
/// `P(B+) = phi(A+)`, and that `P*` fixes a full-rank state.
pub fn verify_projector(
    p: &HermitianMap,
    e: &Embedding,
    trials: usize,
    tol: f64,
    seed: u64,
) -> VerificationReport {
    let n = p.n();
    let m = e.model();
    let mut report = VerificationReport::new(format!("projector for {m} in Q{n}"));

    let mut idem = Tracker::new("idempotent", tol);
    let dev = p.matrix().matmul(p.matrix()).sub(p.matrix());
    idem.observe(dev.max_abs(), || dev.as_slice().to_vec());
    report.push(idem.finish());

    let mut unital = Tracker::new("unital", tol);
    let pi = p.apply(&HermitianMatrix::identity(n));
    unital.observe(herm_dist(&pi, &HermitianMatrix::identity(n)), || {
        pi.coords()
    });
    report.push(unital.finish());

    // image(P) = phi(A): P fixes phi(A) and has rank dim A.
    let mut image = Tracker::new("image", tol);
    let fixed = p.matrix().matmul(e.phi().matrix()).sub(e.phi().matrix());
    image.observe(fixed.max_abs(), || fixed.as_slice().to_vec());
    let rank = p.rank();
    if rank != m.ambient_dim() {
        image.observe(f64::INFINITY, || vec![rank as f64, m.ambient_dim() as f64]);
    }
    report.push(image.finish());

    let mut positive = Tracker::new("positive", tol);
    let mut cone = Tracker::new("cone_image", tol);
    let mut rng = seeded_rng(seed, 0x40);
    for trial in 0..trials {
        let b = sample_psd(n, trial, &mut rng);
        let pb = p.apply(&b);
        positive.observe((-pb.min_eigenvalue()).max(0.0), || b.coords());
        // P(b) = phi(psi*(b)) with psi*(b) in A+.
        let a = e.psi_adjoint(&b).expect("same size");
        let v = m.effect_violation(&a.coords).expect("model dimension");
        cone.observe(v, || b.coords());
    }
    for a in m.extremal_effects() {
        let x = e.phi_of(&a).expect("model dimension");
        cone.observe((-x.min_eigenvalue()).max(0.0), || a.coords.clone());
        cone.observe(herm_dist(&p.apply(&x), &x), || a.coords.clone());
    }
    report.push(positive.finish());
    report.push(cone.finish());

    let mut dual = Tracker::new("dual_fixes_full_rank_state", tol);
    match dual_projector(e) {
        Ok(ps) => {
            let info = support_info(e, seed);
            let sigma = info.image;
            dual.observe(herm_dist(&ps.apply(&sigma), &sigma), || sigma.coords());
            if info.rank < n {
                dual.observe(f64::INFINITY, || vec![info.rank as f64, n as f64]);
            }
        }
        Err(_) => dual.observe(f64::INFINITY, Vec::new),
    }
    report.push(dual.finish());
    report
}

fn minimality_flag(report: &mut VerificationReport, e: &Embedding, seed: u64) {
    let info = support_info(e, seed);
    report.push_flag(
        "minimal_embedding",
        info.rank == e.n(),
        vec![info.rank as f64, e.n() as f64],
    );
}

/// Jordan-module identity `P(x o y) = x o P(y)` for `x` in `phi(A)`, fixed
/// squares `P(x^2) = x^2`, and Jordan closure of the image. The first check
/// records whether the embedding is minimal, which the identities assume.
pub fn check_lemma3(
    p: &HermitianMap,
    e: &Embedding,
    trials: usize,
    tol: f64,
    seed: u64,
) -> VerificationReport {
    let n = p.n();
    let mut report = VerificationReport::new(format!("Jordan structure of the image in Q{n}"));
    minimality_flag(&mut report, e, seed);

    let mut module = Tracker::new("jordan_module", tol);
    let mut squares = Tracker::new("fixed_squares", tol);
    let mut closure = Tracker::new("jordan_closure", tol);
    let mut rng = seeded_rng(seed, 0x50);
    let m = e.model();
    for _ in 0..trials {
        let a = {
            let c = m.sample_coords(&mut rng);
            let r = crate::linalg::norm(&c);
            c.into_iter().map(|v| v / r).collect::<Vec<_>>()
        };
        let x = e.phi_of(&a.clone().into()).expect("model dimension");
        let y = sample_hermitian(n, &mut rng);
        let z = sample_hermitian(n, &mut rng);
        module.observe(
            herm_dist(&p.apply(&x.jordan(&y)), &x.jordan(&p.apply(&y))),
            || a.clone(),
        );
        let x2 = x.square();
        squares.observe(herm_dist(&p.apply(&x2), &x2), || a.clone());
        let prod = p.apply(&y).jordan(&p.apply(&z));
        closure.observe(herm_dist(&p.apply(&prod), &prod), || y.coords());
    }
    report.push(module.finish());
    report.push(squares.finish());
    report.push(closure.finish());
    report
}

/// Kadison's inequality `P(z^2) >= P(z)^2` on sampled Hermitian `z`.
pub fn check_kadison(p: &HermitianMap, trials: usize, tol: f64, seed: u64) -> VerificationReport {
    let n = p.n();
    let mut report = VerificationReport::new(format!("Kadison inequality on Q{n}"));
    let mut kad = Tracker::new("kadison", tol);
    let mut rng = seeded_rng(seed, 0x60);
    for _ in 0..trials {
        let z = sample_hermitian(n, &mut rng);
        kad.observe((-kadison_gap(p, &z).min_eigenvalue()).max(0.0), || {
            z.coords()
        });
    }
    report.push(kad.finish());
    report
}

/// `P(z^2) - P(z)^2`.
pub fn kadison_gap(p: &HermitianMap, z: &HermitianMatrix) -> HermitianMatrix {
    p.apply(&z.square()).sub(&p.apply(z).square())
}

/// The cone `P(B+)` is the cone of squares of the image:
///
/// * `positive_image_is_square`: for `b >= 0`, `P(b) >= 0` and its PSD square
///   root lies in the image;
/// * `squares_in_positive_image`: for `x` in the image, `P(x^2) = x^2`;
/// * `self_duality`: `<x^2, P(b)> >= 0`.
pub fn check_lemma4(
    p: &HermitianMap,
    e: &Embedding,
    trials: usize,
    tol: f64,
    seed: u64,
) -> VerificationReport {
    let n = p.n();
    let mut report = VerificationReport::new(format!("cone of squares in Q{n}"));
    minimality_flag(&mut report, e, seed);
    let mut sq = Tracker::new("positive_image_is_square", tol);
    let mut fixed = Tracker::new("squares_in_positive_image", tol);
    let mut dual = Tracker::new("self_duality", tol);
    let mut rng = seeded_rng(seed, 0x70);
    for trial in 0..trials {
        let b = sample_psd(n, trial, &mut rng);
        let pb = p.apply(&b);
        let root = support_sqrt(&pb);
        let r = (-pb.min_eigenvalue())
            .max(herm_dist(&p.apply(&root), &root))
            .max(herm_dist(&root.square(), &pb));
        sq.observe(r, || b.coords());

        let x = p.apply(&sample_hermitian(n, &mut rng));
        let x2 = x.square();
        fixed.observe(herm_dist(&p.apply(&x2), &x2), || x.coords());
        let ip = hs_inner(&x2, &pb).expect("same size");
        dual.observe((-ip).max(0.0), || x.coords());
    }
    report.push(sq.finish());
    report.push(fixed.finish());
    report.push(dual.finish());
    report
}

/// Square root of a PSD matrix with eigenvalues below `tol::EIG` relative to
/// the spectral radius treated as zero; the plain square root would turn
/// rounding noise on a null space into errors of order `1e-8`.
fn support_sqrt(x: &HermitianMatrix) -> HermitianMatrix {
    let eig = x.eigh();
    let radius = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    eig.map_spectrum(|l| {
        if l > tol::EIG * radius {
            libm::sqrt(l)
        } else {
            0.0
        }
    })
}

/// `sum_ij E_ij (x) P(E_ij)` for the complex-linear extension of `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix(HermitianMatrix);

impl ChoiMatrix {
    pub fn matrix(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> HermitianMatrix {
        self.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }
}

pub fn choi(p: &HermitianMap) -> ChoiMatrix {
    let n = p.n();
    let mut out = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let mut eij = CMatrix::zeros(n, n);
            eij[(i, j)] = Complex64::new(1.0, 0.0);
            out.set_block(i * n, j * n, &p.apply_complex(&eij));
        }
    }
    ChoiMatrix(HermitianMatrix::hermitian_part(&out))
}

/// `(min eigenvalue of the Choi matrix >= -tol n, min eigenvalue)`.
pub fn is_completely_positive(p: &HermitianMap, tol: f64) -> (bool, f64) {
    let min = choi(p).matrix().min_eigenvalue();
    (min >= -tol * p.n() as f64, min)
}

/// A simple summand `M_size (x) I_multiplicity` of the fixed-point algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    pub size: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecoherenceClass {
    /// `P` is a conditional expectation onto a *-subalgebra with the listed
    /// simple summands (largest first).
    CpDecoherence {
        blocks: Vec<Block>,
        closure_residual: f64,
    },
    NotPhysical {
        min_choi_eigenvalue: f64,
    },
}

impl DecoherenceClass {
    pub fn block_sizes(&self) -> Vec<usize> {
        match self {
            DecoherenceClass::CpDecoherence { blocks, .. } => {
                blocks.iter().map(|b| b.size).collect()
            }
            DecoherenceClass::NotPhysical { .. } => Vec::new(),
        }
    }
}

const CLASSIFY_TRIALS: usize = 64;
const CLASSIFY_SEED: u64 = 0xc1a5;

/// Decides whether `P` is physically realizable and, if so, identifies the
/// block structure of its image.
pub fn classify_decoherence(e: &Embedding, tol: f64) -> Result<DecoherenceClass> {
    let p = projector_from_embedding(e)?;
    let (cp, min) = is_completely_positive(&p, tol);
    if !cp {
        return Ok(DecoherenceClass::NotPhysical {
            min_choi_eigenvalue: min,
        });
    }
    let n = p.n();
    let mut rng = seeded_rng(CLASSIFY_SEED, 0);
    let mut closure: f64 = 0.0;
    for _ in 0..CLASSIFY_TRIALS {
        let x = p.apply(&sample_hermitian(n, &mut rng)).into_matrix();
        let y = p.apply(&sample_hermitian(n, &mut rng)).into_matrix();
        let xy = x.matmul(&y);
        closure = closure.max((&p.apply_complex(&xy) - &xy).frobenius_norm());
    }
    let basis: Vec<CMatrix> = (0..e.model().ambient_dim())
        .map(|k| coords::herm_from_coords(n, &e.phi().matrix().column(k)))
        .collect();
    let generic = p.apply(&sample_hermitian(n, &mut rng));
    Ok(DecoherenceClass::CpDecoherence {
        blocks: block_structure(&generic, &basis),
        closure_residual: closure,
    })
}

/// Groups the eigenspaces of a generic element `y` of a *-algebra spanned by
/// `basis`: two eigenspaces lie in the same simple summand iff some basis
/// element connects them.
fn block_structure(y: &HermitianMatrix, basis: &[CMatrix]) -> Vec<Block> {
    let eig = y.eigh();
    let scale = eig.values.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
    let mut spaces: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for k in 1..=eig.values.len() {
        if k == eig.values.len() || eig.values[k] - eig.values[k - 1] > tol::CLUSTER * scale {
            spaces.push((start, k));
            start = k;
        }
    }
    let projectors: Vec<CMatrix> = spaces
        .iter()
        .map(|&(s, t)| CMatrix::from_fn(y.n(), t - s, |i, j| eig.vectors[(i, s + j)]))
        .collect();

    let mut parent: Vec<usize> = (0..spaces.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..spaces.len() {
        for b in a + 1..spaces.len() {
            let linked = basis.iter().any(|x| {
                projectors[a]
                    .adjoint()
                    .matmul(x)
                    .matmul(&projectors[b])
                    .max_abs()
                    > tol::CLUSTER
            });
            if linked {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: Vec<(usize, usize, usize)> = Vec::new(); // root, eigenspaces, dimension
    for (k, &(s, t)) in spaces.iter().enumerate() {
        let r = find(&mut parent, k);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += 1;
                g.2 += t - s;
            }
            None => groups.push((r, 1, t - s)),
        }
    }
    let mut blocks: Vec<Block> = groups
        .into_iter()
        .map(|(_, k, dim)| Block {
            size: k,
            multiplicity: dim / k,
        })
        .collect();
    blocks.sort_by(|a, b| b.cmp(a));
    blocks
}

impl core::fmt::Display for Block {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.multiplicity == 1 {
            write!(f, "M{}", self.size)
        } else {
            write!(f, "M{}x{}", self.size, self.multiplicity)
        }
    }
}

impl core::fmt::Display for DecoherenceClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DecoherenceClass::CpDecoherence { blocks, .. } => {
                let parts: Vec<_> = blocks.iter().map(|b| b.to_string()).collect();
                write!(f, "CP decoherence onto {}", parts.join(" + "))
            }
            DecoherenceClass::NotPhysical {
                min_choi_eigenvalue,
            } => {
                write!(
                    f,
                    "not completely positive (min Choi eigenvalue {min_choi_eigenvalue:.6})"
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{build_embedding, pad_embedding};
    use crate::models::{Field, ModelSpec};

    fn pinching(n: usize) -> HermitianMap {
        HermitianMap::from_fn(n, |x| {
            HermitianMatrix::diagonal(&(0..n).map(|i| x.as_matrix()[(i, i)].re).collect::<Vec<_>>())
        })
    }

    fn real_projection(n: usize) -> HermitianMap {
        HermitianMap::from_fn(n, |x| {
            HermitianMatrix::hermitian_part(&x.as_matrix().map(|z| Complex64::new(z.re, 0.0)))
        })
    }

    fn projector_of(m: ModelSpec) -> (Embedding, HermitianMap) {
        let e = build_embedding(&m).unwrap();
        let p = projector_from_embedding(&e).unwrap();
        (e, p)
    }

    fn close(a: &HermitianMap, b: &HermitianMap) -> bool {
        a.matrix().sub(b.matrix()).max_abs() < 1e-12
    }

    #[test]
    fn known_projectors() {
        assert!(close(
            &projector_of(ModelSpec::Classical { n: 3 }).1,
            &pinching(3)
        ));
        let (_, real) = projector_of(ModelSpec::Quantum {
            field: Field::Real,
            n: 2,
        });
        assert!(close(&real, &real_projection(2)));
        let sy = HermitianMatrix::new(crate::linalg::pauli::y()).unwrap();
        assert!(real.apply(&sy).frobenius_norm() < 1e-15);
        assert!(close(
            &projector_of(ModelSpec::Spin { d: 3 }).1,
            &HermitianMap::identity(2)
        ));
    }

    #[test]
    fn projector_requires_left_inverse() {
        let e = build_embedding(&ModelSpec::Classical { n: 2 }).unwrap();
        let bad =
            Embedding::new(e.model().clone(), 2, e.phi().scale(1.5), e.psi().clone()).unwrap();
        assert!(matches!(
            projector_from_embedding(&bad),
            Err(Error::Unverified(_))
        ));
    }

    #[test]
    fn projector_properties_hold_on_catalog() {
        for m in [
            ModelSpec::Classical { n: 3 },
            ModelSpec::Spin { d: 4 },
            ModelSpec::Quantum {
                field: Field::Quaternion,
                n: 2,
            },
            ModelSpec::DirectSum(vec![
                ModelSpec::Classical { n: 1 },
                ModelSpec::Quantum {
                    field: Field::Real,
                    n: 2,
                },
            ]),
        ] {
            let (e, p) = projector_of(m);
            let r = verify_projector(&p, &e, 40, 1e-9, 3);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn jordan_module_identity_on_pinching_and_spin() {
        for m in [ModelSpec::Classical { n: 3 }, ModelSpec::Spin { d: 4 }] {
            let (e, p) = projector_of(m);
            let r = check_lemma3(&p, &e, 200, 1e-9, 1);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn padded_embedding_is_flagged_as_non_minimal() {
        let e =
            pad_embedding(&build_embedding(&ModelSpec::Classical { n: 2 }).unwrap(), 1).unwrap();
        let p = projector_from_embedding(&e).unwrap();
        let r = check_lemma3(&p, &e, 50, 1e-9, 1);
        assert!(!r.get("minimal_embedding").unwrap().passed);
        assert!(!r.get("jordan_closure").unwrap().passed);
    }

    #[test]
    fn kadison_examples() {
        let real = real_projection(2);
        let sx = HermitianMatrix::new(crate::linalg::pauli::x()).unwrap();
        let sy = HermitianMatrix::new(crate::linalg::pauli::y()).unwrap();
        assert!(kadison_gap(&real, &sx).frobenius_norm() < 1e-15);
        assert!(
            kadison_gap(&real, &sy)
                .sub(&HermitianMatrix::identity(2))
                .frobenius_norm()
                < 1e-15
        );
        assert!(check_kadison(&pinching(3), 200, 1e-9, 4).passed());
    }

    #[test]
    fn cone_of_squares_examples() {
        let p = pinching(2);
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let plus = HermitianMatrix::projector(&[Complex64::new(s, 0.0), Complex64::new(s, 0.0)]);
        let pb = p.apply(&plus);
        assert!(
            pb.sub(&HermitianMatrix::identity(2).scale(0.5))
                .frobenius_norm()
                < 1e-15
        );
        let root = support_sqrt(&pb);
        assert!(p.apply(&root).sub(&root).frobenius_norm() < 1e-15);
        let (e, p) = projector_of(ModelSpec::Spin { d: 4 });
        let r = check_lemma4(&p, &e, 200, 1e-9, 5);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn choi_examples() {
        let ev = choi(&pinching(2)).eigenvalues();
        for (got, want) in ev.iter().zip([0.0, 0.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let ev = choi(&HermitianMap::identity(2)).eigenvalues();
        for (got, want) in ev.iter().zip([0.0, 0.0, 0.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let (cp, min) = is_completely_positive(&real_projection(2), 1e-9);
        assert!(!cp);
        assert!((min + 0.5).abs() < 1e-12);
        assert!((choi(&pinching(3)).trace() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn classification_examples() {
        let c3 = classify_decoherence(
            &build_embedding(&ModelSpec::Classical { n: 3 }).unwrap(),
            1e-9,
        )
        .unwrap();
        assert_eq!(c3.block_sizes(), vec![1, 1, 1]);
        let real = classify_decoherence(
            &build_embedding(&ModelSpec::Quantum {
                field: Field::Real,
                n: 2,
            })
            .unwrap(),
            1e-9,
        )
        .unwrap();
        match real {
            DecoherenceClass::NotPhysical {
                min_choi_eigenvalue,
            } => assert!((min_choi_eigenvalue + 0.5).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
        let spin = classify_decoherence(&build_embedding(&ModelSpec::Spin { d: 4 }).unwrap(), 1e-9)
            .unwrap();
        assert!(
            matches!(spin, DecoherenceClass::NotPhysical { min_choi_eigenvalue } if min_choi_eigenvalue < -0.1)
        );
        let mixed = ModelSpec::DirectSum(vec![
            ModelSpec::Quantum {
                field: Field::Complex,
                n: 2,
            },
            ModelSpec::Classical { n: 2 },
        ]);
        let c = classify_decoherence(&build_embedding(&mixed).unwrap(), 1e-9).unwrap();
        assert_eq!(c.block_sizes(), vec![2, 1, 1]);
    }
}
