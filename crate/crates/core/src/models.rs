//! Probabilistic models: the catalog of Euclidean special Jordan algebras and
//! arbitrary polyhedral cones.
//!
//! Effects and states of every model live in the same real coordinate space
//! and are paired by the plain dot product. Matrix models use the isometric
//! coordinates of [`crate::linalg::coords`], so the pairing is the trace form.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::jordan::JordanAlgebra;
use crate::linalg::{
    coords, dot, nnls, norm, CMatrix, HermitianMatrix, QuatMatrix, Quaternion, RMatrix,
};
use crate::{tol, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Real => "Real",
            Field::Complex => "Complex",
            Field::Quaternion => "Quaternion",
        })
    }
}

/// Declarative description of a model.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    /// `n`-outcome classical probability theory.
    Classical {
        n: usize,
    },
    /// Hermitian `n x n` matrices over `field`.
    Quantum {
        field: Field,
        n: usize,
    },
    /// Spin factor whose normalized states form the unit ball in `R^d`.
    Spin {
        d: usize,
    },
    DirectSum(Vec<ModelSpec>),
    Polyhedral(PolyhedralCone),
}

/// Finitely generated effect cone with a unit.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    dim: usize,
    unit: Vec<f64>,
    extreme_effects: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectVector {
    pub coords: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub coords: Vec<f64>,
}

impl EffectVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

impl StateVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

impl From<Vec<f64>> for EffectVector {
    fn from(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

impl From<Vec<f64>> for StateVector {
    fn from(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl PolyhedralCone {
    /// Validates that the rays generate a pointed cone containing `unit`.
    pub fn new(dim: usize, unit: Vec<f64>, extreme_effects: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModel(
                "polyhedral dimension must be at least 1".into(),
            ));
        }
        check_len(dim, unit.len())?;
        if extreme_effects.is_empty() {
            return Err(Error::InvalidModel(
                "polyhedral model needs at least one extreme effect".into(),
            ));
        }
        for r in &extreme_effects {
            check_len(dim, r.len())?;
        }
        if unit
            .iter()
            .chain(extreme_effects.iter().flatten())
            .any(|x| !x.is_finite())
        {
            return Err(Error::InvalidModel("non-finite coordinate".into()));
        }
        if let Some(k) = extreme_effects.iter().position(|r| norm(r) == 0.0) {
            return Err(Error::DegenerateCone(format!("extreme effect {k} is zero")));
        }
        let cone = Self {
            dim,
            unit,
            extreme_effects,
        };
        let rays = cone.ray_matrix();
        if rays.rank(1e-10) < dim {
            return Err(Error::DegenerateCone(
                "extreme effects do not span the space (cone is not generating)".into(),
            ));
        }
        for (k, r) in cone.extreme_effects.iter().enumerate() {
            let neg: Vec<f64> = r.iter().map(|x| -x).collect();
            if nnls(&rays, &neg).residual <= tol::NNLS * norm(r) {
                return Err(Error::DegenerateCone(format!(
                    "cone is not pointed: -(extreme effect {k}) lies in the cone"
                )));
            }
        }
        if cone.effect_residual(&cone.unit) > tol::NNLS * norm(&cone.unit).max(1.0) {
            return Err(Error::InvalidModel("unit does not lie in the cone".into()));
        }
        Ok(cone)
    }

    /// The gbit: normalized states form the square `{(1, x, y) : |x|, |y| <= 1}`.
    pub fn gbit() -> Self {
        Self {
            dim: 3,
            unit: vec![1.0, 0.0, 0.0],
            extreme_effects: vec![
                vec![0.5, 0.5, 0.0],
                vec![0.5, -0.5, 0.0],
                vec![0.5, 0.0, 0.5],
                vec![0.5, 0.0, -0.5],
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[f64] {
        &self.unit
    }

    pub fn extreme_effects(&self) -> &[Vec<f64>] {
        &self.extreme_effects
    }

    /// `dim x k` matrix with the extreme effects as columns.
    pub fn ray_matrix(&self) -> RMatrix {
        RMatrix::from_columns(self.dim, &self.extreme_effects)
    }

    /// Distance from `v` to the cone, by NNLS over the generators.
    pub fn effect_residual(&self, v: &[f64]) -> f64 {
        nnls(&self.ray_matrix(), v).residual
    }

    /// Vertices of the normalized state space, by enumerating every choice of
    /// `dim - 1` tight generator constraints.
    pub fn extreme_states(&self) -> Vec<Vec<f64>> {
        let d = self.dim;
        let mut out: Vec<Vec<f64>> = Vec::new();
        for subset in combinations(self.extreme_effects.len(), d - 1) {
            let mut rows: Vec<Vec<f64>> = subset
                .iter()
                .map(|&k| self.extreme_effects[k].clone())
                .collect();
            rows.push(self.unit.clone());
            let Some(inv) = RMatrix::from_rows(d, &rows).inverse() else {
                continue;
            };
            let mut rhs = vec![0.0; d];
            rhs[d - 1] = 1.0;
            let w = inv.mul_vec(&rhs);
            let feasible = self
                .extreme_effects
                .iter()
                .all(|r| dot(r, &w) >= -1e-10 * norm(r) * norm(&w).max(1.0));
            if feasible
                && !out
                    .iter()
                    .any(|v| crate::linalg::dist(v, &w) <= 1e-9 * norm(&w).max(1.0))
            {
                out.push(w);
            }
        }
        out
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

impl ModelSpec {
    pub fn classical(n: usize) -> Result<Self> {
        let m = ModelSpec::Classical { n };
        m.validate()?;
        Ok(m)
    }

    pub fn quantum(field: Field, n: usize) -> Result<Self> {
        let m = ModelSpec::Quantum { field, n };
        m.validate()?;
        Ok(m)
    }

    /// Spin factor over the `d`-ball. `Spin(1)` is order-isomorphic to the
    /// classical bit and is returned as `Classical(2)`.
    pub fn spin(d: usize) -> Result<Self> {
        match d {
            0 => Err(Error::InvalidModel("spin factor needs d >= 1".into())),
            1 => Ok(ModelSpec::Classical { n: 2 }),
            _ => Ok(ModelSpec::Spin { d }),
        }
    }

    pub fn direct_sum(summands: Vec<ModelSpec>) -> Result<Self> {
        let m = ModelSpec::DirectSum(summands);
        m.validate()?;
        Ok(m)
    }

    pub fn polyhedral(dim: usize, unit: Vec<f64>, extreme_effects: Vec<Vec<f64>>) -> Result<Self> {
        PolyhedralCone::new(dim, unit, extreme_effects).map(ModelSpec::Polyhedral)
    }

    pub fn gbit() -> Self {
        ModelSpec::Polyhedral(PolyhedralCone::gbit())
    }

    /// Checks the counting invariants. Polyhedral cones are validated when
    /// they are constructed.
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Classical { n } | ModelSpec::Quantum { n, .. } if *n == 0 => {
                Err(Error::InvalidModel("dimension must be at least 1".into()))
            }
            ModelSpec::Spin { d } if *d < 2 => Err(Error::InvalidModel(format!(
                "spin factor needs d >= 2 (got {d}); use Classical(2) for d = 1"
            ))),
            ModelSpec::DirectSum(s) if s.is_empty() => {
                Err(Error::InvalidModel("empty direct sum".into()))
            }
            ModelSpec::DirectSum(s) => s.iter().try_for_each(ModelSpec::validate),
            _ => Ok(()),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            ModelSpec::Classical { n } => *n,
            ModelSpec::Quantum {
                field: Field::Real,
                n,
            } => coords::real_sym_dim(*n),
            ModelSpec::Quantum {
                field: Field::Complex,
                n,
            } => coords::herm_dim(*n),
            ModelSpec::Quantum {
                field: Field::Quaternion,
                n,
            } => coords::quat_herm_dim(*n),
            ModelSpec::Spin { d } => d + 1,
            ModelSpec::DirectSum(s) => s.iter().map(ModelSpec::ambient_dim).sum(),
            ModelSpec::Polyhedral(p) => p.dim,
        }
    }

    /// True when no polyhedral component is present.
    pub fn is_catalog(&self) -> bool {
        match self {
            ModelSpec::Polyhedral(_) => false,
            ModelSpec::DirectSum(s) => s.iter().all(ModelSpec::is_catalog),
            _ => true,
        }
    }

    pub(crate) fn split<'a>(summands: &[ModelSpec], c: &'a [f64]) -> Vec<&'a [f64]> {
        let mut out = Vec::with_capacity(summands.len());
        let mut rest = c;
        for s in summands {
            let (head, tail) = rest.split_at(s.ambient_dim());
            out.push(head);
            rest = tail;
        }
        out
    }

    pub fn unit_effect(&self) -> EffectVector {
        EffectVector::new(self.unit_coords())
    }

    fn unit_coords(&self) -> Vec<f64> {
        match self {
            ModelSpec::Classical { n } => vec![1.0; *n],
            ModelSpec::Quantum { n, .. } => {
                let mut c = vec![0.0; self.ambient_dim()];
                c[..*n].iter_mut().for_each(|x| *x = 1.0);
                c
            }
            ModelSpec::Spin { d } => {
                let mut c = vec![0.0; d + 1];
                c[0] = 1.0;
                c
            }
            ModelSpec::DirectSum(s) => s.iter().flat_map(ModelSpec::unit_coords).collect(),
            ModelSpec::Polyhedral(p) => p.unit.clone(),
        }
    }

    /// A normalized state in the relative interior of the state space: the
    /// normalized unit for the self-dual catalog models, the vertex barycenter
    /// for polyhedral ones.
    pub fn maximally_mixed_state(&self) -> StateVector {
        if let ModelSpec::Polyhedral(p) = self {
            let v = p.extreme_states();
            let mut c = vec![0.0; p.dim];
            for w in &v {
                c.iter_mut()
                    .zip(w)
                    .for_each(|(a, b)| *a += b / v.len() as f64);
            }
            return StateVector::new(c);
        }
        let u = self.unit_coords();
        let s = dot(&u, &u);
        StateVector::new(u.iter().map(|x| x / s).collect())
    }

    /// Outcome probability `(omega, e)`.
    pub fn pairing(&self, state: &StateVector, effect: &EffectVector) -> Result<f64> {
        let d = self.ambient_dim();
        check_len(d, state.coords.len())?;
        check_len(d, effect.coords.len())?;
        Ok(dot(&state.coords, &effect.coords))
    }

    /// Size of the worst violation of effect-cone membership (0 inside).
    pub fn effect_violation(&self, c: &[f64]) -> Result<f64> {
        check_len(self.ambient_dim(), c.len())?;
        Ok(match self {
            ModelSpec::Classical { .. } => c.iter().fold(0.0_f64, |w, &x| w.max(-x)),
            ModelSpec::Quantum { field, n } => {
                (-quantum_hermitian(*field, *n, c).min_eigenvalue()).max(0.0)
            }
            ModelSpec::Spin { .. } => spin_violation(c),
            ModelSpec::DirectSum(s) => {
                let mut worst = 0.0_f64;
                for (m, part) in s.iter().zip(Self::split(s, c)) {
                    worst = worst.max(m.effect_violation(part)?);
                }
                worst
            }
            ModelSpec::Polyhedral(p) => p.effect_residual(c),
        })
    }

    /// Size of the worst violation of state-cone membership (0 inside).
    pub fn state_violation(&self, c: &[f64]) -> Result<f64> {
        check_len(self.ambient_dim(), c.len())?;
        match self {
            ModelSpec::Polyhedral(p) => Ok(p
                .extreme_effects
                .iter()
                .map(|r| -dot(r, c))
                .fold(0.0_f64, f64::max)),
            ModelSpec::DirectSum(s) => {
                let mut worst = 0.0_f64;
                for (m, part) in s.iter().zip(Self::split(s, c)) {
                    worst = worst.max(m.state_violation(part)?);
                }
                Ok(worst)
            }
            // self-dual under the coordinate pairing
            _ => self.effect_violation(c),
        }
    }

    pub fn contains_effect(&self, e: &EffectVector, tol: f64) -> Result<bool> {
        Ok(self.effect_violation(&e.coords)? <= tol)
    }

    pub fn contains_state(&self, s: &StateVector, tol: f64) -> Result<bool> {
        Ok(self.state_violation(&s.coords)? <= tol)
    }

    /// Gaussian coordinates.
    pub fn sample_coords<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.ambient_dim())
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect()
    }

    /// A random effect: the Jordan square of a Gaussian element, or a random
    /// conic combination of generators for polyhedral models.
    pub fn sample_effect<R: Rng + ?Sized>(&self, rng: &mut R) -> EffectVector {
        match self {
            ModelSpec::Polyhedral(p) => {
                let mut c = vec![0.0; p.dim];
                for r in &p.extreme_effects {
                    let w: f64 = rng.sample(Exp1);
                    c.iter_mut().zip(r).for_each(|(a, b)| *a += w * b);
                }
                EffectVector::new(c)
            }
            _ => {
                let alg = JordanAlgebra::new(self).expect("catalog model has a Jordan product");
                let x = self.sample_coords(rng);
                EffectVector::new(alg.square(&x).expect("dimension matches"))
            }
        }
    }

    /// A random normalized state: a random convex combination of
    /// `ambient_dim + 1` random extreme states.
    pub fn sample_state<R: Rng + ?Sized>(&self, rng: &mut R) -> StateVector {
        let d = self.ambient_dim();
        loop {
            let mut c = vec![0.0; d];
            let mut total = 0.0;
            for _ in 0..=d {
                let w: f64 = rng.sample(Exp1);
                let v = self.sample_extreme_state(rng);
                c.iter_mut().zip(&v).for_each(|(a, b)| *a += w * b);
                total += w;
            }
            c.iter_mut().for_each(|a| *a /= total);
            if self.state_violation(&c).is_ok_and(|v| v <= 1e-12) {
                return StateVector::new(c);
            }
        }
    }

    /// A random pure (extreme, normalized) state.
    pub fn sample_extreme_state<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            ModelSpec::Classical { n } => {
                let mut c = vec![0.0; *n];
                c[rng.random_range(0..*n)] = 1.0;
                c
            }
            ModelSpec::Quantum { field, n } => {
                let v: Vec<Quaternion> = (0..*n).map(|_| random_scalar(*field, rng)).collect();
                quantum_projector_coords(*field, &v)
            }
            ModelSpec::Spin { d } => {
                let x: Vec<f64> = (0..*d)
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect();
                let r = norm(&x);
                let mut c = vec![1.0];
                c.extend(x.iter().map(|v| v / r));
                c
            }
            ModelSpec::DirectSum(s) => {
                let k = rng.random_range(0..s.len());
                let mut c = Vec::with_capacity(self.ambient_dim());
                for (i, m) in s.iter().enumerate() {
                    if i == k {
                        c.extend(m.sample_extreme_state(rng));
                    } else {
                        c.extend(core::iter::repeat_n(0.0, m.ambient_dim()));
                    }
                }
                c
            }
            ModelSpec::Polyhedral(p) => {
                let v = p.extreme_states();
                v[rng.random_range(0..v.len())].clone()
            }
        }
    }

    /// A finite family of extreme effect rays: the generators for polyhedral
    /// models; for matrix models the projectors onto `e_i` and
    /// `(e_i + u e_j)/sqrt 2` for every unit `u` of the field and its negative.
    pub fn extremal_effects(&self) -> Vec<EffectVector> {
        let raw: Vec<Vec<f64>> = match self {
            ModelSpec::Classical { n } => (0..*n)
                .map(|i| {
                    let mut c = vec![0.0; *n];
                    c[i] = 1.0;
                    c
                })
                .collect(),
            ModelSpec::Quantum { field, n } => {
                let units: &[Quaternion] = match field {
                    Field::Real => &[Quaternion::ONE],
                    Field::Complex => &[Quaternion::ONE, Quaternion::I],
                    Field::Quaternion => {
                        &[Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K]
                    }
                };
                let mut out = Vec::new();
                for i in 0..*n {
                    let mut v = vec![Quaternion::ZERO; *n];
                    v[i] = Quaternion::ONE;
                    out.push(quantum_projector_coords(*field, &v));
                    for j in i + 1..*n {
                        for &u in units {
                            for sign in [1.0, -1.0] {
                                let mut v = vec![Quaternion::ZERO; *n];
                                v[i] = Quaternion::ONE;
                                v[j] = u.scale(sign);
                                out.push(quantum_projector_coords(*field, &v));
                            }
                        }
                    }
                }
                out
            }
            ModelSpec::Spin { d } => (0..*d)
                .flat_map(|k| {
                    [1.0, -1.0].into_iter().map(move |s| {
                        let mut c = vec![0.0; d + 1];
                        c[0] = 1.0;
                        c[k + 1] = s;
                        c
                    })
                })
                .collect(),
            ModelSpec::DirectSum(s) => {
                let total = self.ambient_dim();
                let mut out = Vec::new();
                let mut offset = 0;
                for m in s {
                    for e in m.extremal_effects() {
                        let mut c = vec![0.0; total];
                        c[offset..offset + e.coords.len()].copy_from_slice(&e.coords);
                        out.push(c);
                    }
                    offset += m.ambient_dim();
                }
                out
            }
            ModelSpec::Polyhedral(p) => p.extreme_effects.clone(),
        };
        raw.into_iter().map(EffectVector::new).collect()
    }

    /// A finite family of extreme normalized states.
    pub fn extremal_states(&self) -> Vec<StateVector> {
        match self {
            ModelSpec::Polyhedral(p) => p
                .extreme_states()
                .into_iter()
                .map(StateVector::new)
                .collect(),
            ModelSpec::DirectSum(s) if !self.is_catalog() => {
                let total = self.ambient_dim();
                let mut out = Vec::new();
                let mut offset = 0;
                for m in s {
                    for st in m.extremal_states() {
                        let mut c = vec![0.0; total];
                        c[offset..offset + st.coords.len()].copy_from_slice(&st.coords);
                        out.push(StateVector::new(c));
                    }
                    offset += m.ambient_dim();
                }
                out
            }
            // Extremal catalog effects above have unit trace (or unit first
            // coordinate for spin factors), so they are normalized states too.
            _ => self
                .extremal_effects()
                .into_iter()
                .map(|e| StateVector::new(e.coords))
                .collect(),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Classical { n } => write!(f, "Classical({n})"),
            ModelSpec::Quantum { field, n } => write!(f, "Quantum({field}, {n})"),
            ModelSpec::Spin { d } => write!(f, "Spin({d})"),
            ModelSpec::DirectSum(s) => {
                f.write_str("DirectSum[")?;
                for (i, m) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("]")
            }
            ModelSpec::Polyhedral(p) => write!(
                f,
                "Polyhedral(dim {}, {} rays)",
                p.dim,
                p.extreme_effects.len()
            ),
        }
    }
}

pub(crate) fn spin_violation(c: &[f64]) -> f64 {
    let s = c[0];
    let y = norm(&c[1..]);
    (-s).max(y - s).max(0.0)
}

fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Quaternion {
    let mut g = || rng.sample::<f64, _>(StandardNormal);
    match field {
        Field::Real => Quaternion::real(g()),
        Field::Complex => Quaternion::new(g(), g(), 0.0, 0.0),
        Field::Quaternion => Quaternion::new(g(), g(), g(), g()),
    }
}

/// Coordinates of the rank-one projector onto `v` (entries in the field).
fn quantum_projector_coords(field: Field, v: &[Quaternion]) -> Vec<f64> {
    let n = v.len();
    let nrm: f64 = v.iter().map(|q| q.norm_sqr()).sum();
    let p = QuatMatrix::from_fn(n, |i, j| (v[i] * v[j].conj()).scale(1.0 / nrm));
    match field {
        Field::Real => coords::real_sym_to_coords(&CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(p[(i, j)].a, 0.0)
        })),
        Field::Complex => coords::herm_to_coords(&CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(p[(i, j)].a, p[(i, j)].b)
        })),
        Field::Quaternion => coords::quat_herm_to_coords(&p),
    }
}

/// Complex Hermitian matrix representing a quantum-model element: the real
/// symmetric matrix itself, the Hermitian matrix itself, or the
/// complexification of the quaternionic matrix.
pub(crate) fn quantum_hermitian(field: Field, n: usize, c: &[f64]) -> HermitianMatrix {
    let m = match field {
        Field::Real => coords::real_sym_from_coords(n, c),
        Field::Complex => coords::herm_from_coords(n, c),
        Field::Quaternion => coords::quat_herm_from_coords(n, c).to_complex(),
    };
    HermitianMatrix::hermitian_part(&m)
}
