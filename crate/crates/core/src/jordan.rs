//! Jordan-algebraic structure of catalog models.
//!
//! Products are taken in model coordinates: entrywise for classical models,
//! `(xy + yx)/2` for matrix models (quaternionic ones in native quaternion
//! arithmetic) and `(t, x) o (s, y) = (ts + x.y, t y + s x)` for spin factors.

use alloc::vec::Vec;

use crate::linalg::{coords, dist, dot, norm, HermitianMatrix, QuatMatrix};
use crate::models::{quantum_hermitian, Field, ModelSpec};
use crate::report::{Tracker, VerificationReport};
use crate::{seeded_rng, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct JordanElement {
    pub coords: Vec<f64>,
}

impl JordanElement {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

impl From<Vec<f64>> for JordanElement {
    fn from(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

/// The Jordan algebra of a catalog model.
#[derive(Debug, Clone, Copy)]
pub struct JordanAlgebra<'a> {
    model: &'a ModelSpec,
}

impl<'a> JordanAlgebra<'a> {
    pub fn new(model: &'a ModelSpec) -> Result<Self> {
        if model.is_catalog() {
            Ok(Self { model })
        } else {
            Err(Error::NoJordanStructure("a polyhedral model"))
        }
    }

    pub fn model(&self) -> &'a ModelSpec {
        self.model
    }

    fn check(&self, c: &[f64]) -> Result<()> {
        let d = self.model.ambient_dim();
        if c.len() == d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: d,
                found: c.len(),
            })
        }
    }

    pub fn unit(&self) -> JordanElement {
        JordanElement::new(self.model.unit_effect().coords)
    }

    pub fn product(&self, x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
        self.check(&x.coords)?;
        self.check(&y.coords)?;
        Ok(JordanElement::new(product(
            self.model, &x.coords, &y.coords,
        )))
    }

    pub fn square(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        Ok(product(self.model, x, x))
    }

    /// Jordan square root of the positive part of `v`, from its spectral
    /// decomposition.
    pub fn sqrt(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check(v)?;
        Ok(sqrt(self.model, v))
    }

    /// Whether `v` is the square of some element: the square root of its
    /// positive part must square back to `v` within `tol * max(1, |v|)`.
    pub fn is_square_cone_member(&self, v: &[f64], tol: f64) -> Result<bool> {
        let root = self.sqrt(v)?;
        let back = product(self.model, &root, &root);
        Ok(dist(&back, v) <= tol * norm(v).max(1.0))
    }

    /// Randomized check of commutativity, the unit law, the Jordan identity
    /// and associativity of the pairing with the product. Elements are drawn
    /// from the unit sphere in coordinates.
    pub fn check_axioms(&self, trials: usize, tol: f64, seed: u64) -> VerificationReport {
        let m = self.model;
        let mut rng = seeded_rng(seed, 0x10);
        let mut unit_law = Tracker::new("jordan_unit", tol);
        let mut commutative = Tracker::new("commutativity", tol);
        let mut jordan_identity = Tracker::new("jordan_identity", tol);
        let mut euclidean = Tracker::new("euclidean_inner_product", tol);
        let u = m.unit_effect().coords;

        let unit_sphere = |rng: &mut _| {
            let mut c = m.sample_coords(rng);
            let r = norm(&c);
            c.iter_mut().for_each(|v| *v /= r);
            c
        };

        for _ in 0..trials {
            let x = unit_sphere(&mut rng);
            let y = unit_sphere(&mut rng);
            let z = unit_sphere(&mut rng);

            let ux = product(m, &u, &x);
            unit_law.observe(dist(&ux, &x), || x.clone());

            let xy = product(m, &x, &y);
            let yx = product(m, &y, &x);
            commutative.observe(dist(&xy, &yx), || x.clone());

            let x2 = product(m, &x, &x);
            let lhs = product(m, &xy, &x2);
            let rhs = product(m, &x, &product(m, &y, &x2));
            jordan_identity.observe(dist(&lhs, &rhs), || x.clone());

            let a = dot(&x, &product(m, &z, &y));
            let b = dot(&product(m, &z, &x), &y);
            euclidean.observe((a - b).abs(), || z.clone());
        }

        let mut report = VerificationReport::new(alloc::format!("jordan axioms of {m}"));
        report.push(unit_law.finish());
        report.push(commutative.finish());
        report.push(jordan_identity.finish());
        report.push(euclidean.finish());
        report
    }
}

/// Jordan product in coordinates. Caller guarantees a catalog model and
/// matching lengths.
pub(crate) fn product(m: &ModelSpec, x: &[f64], y: &[f64]) -> Vec<f64> {
    match m {
        ModelSpec::Classical { .. } => x.iter().zip(y).map(|(a, b)| a * b).collect(),
        ModelSpec::Quantum {
            field: Field::Real,
            n,
        } => {
            let a = coords::real_sym_from_coords(*n, x);
            let b = coords::real_sym_from_coords(*n, y);
            coords::real_sym_to_coords(&a.jordan(&b))
        }
        ModelSpec::Quantum {
            field: Field::Complex,
            n,
        } => {
            let a = coords::herm_from_coords(*n, x);
            let b = coords::herm_from_coords(*n, y);
            coords::herm_to_coords(&a.jordan(&b))
        }
        ModelSpec::Quantum {
            field: Field::Quaternion,
            n,
        } => {
            let a = coords::quat_herm_from_coords(*n, x);
            let b = coords::quat_herm_from_coords(*n, y);
            coords::quat_herm_to_coords(&a.jordan(&b))
        }
        ModelSpec::Spin { .. } => {
            let (t, xv) = (x[0], &x[1..]);
            let (s, yv) = (y[0], &y[1..]);
            let mut out = Vec::with_capacity(x.len());
            out.push(t * s + dot(xv, yv));
            out.extend(xv.iter().zip(yv).map(|(a, b)| t * b + s * a));
            out
        }
        ModelSpec::DirectSum(s) => ModelSpec::split(s, x)
            .into_iter()
            .zip(ModelSpec::split(s, y))
            .zip(s)
            .flat_map(|((a, b), sm)| product(sm, a, b))
            .collect(),
        ModelSpec::Polyhedral(_) => unreachable!("no Jordan product on polyhedral models"),
    }
}

fn sqrt(m: &ModelSpec, v: &[f64]) -> Vec<f64> {
    match m {
        ModelSpec::Classical { .. } => v.iter().map(|x| libm::sqrt(x.max(0.0))).collect(),
        ModelSpec::Quantum { field, n } => {
            let root: HermitianMatrix = quantum_hermitian(*field, *n, v).psd_sqrt();
            match field {
                Field::Real => coords::real_sym_to_coords(root.as_matrix()),
                Field::Complex => root.coords(),
                Field::Quaternion => coords::quat_herm_to_coords(
                    &QuatMatrix::from_complex(root.as_matrix()).expect("even dimension"),
                ),
            }
        }
        ModelSpec::Spin { .. } => {
            let s = v[0];
            let r = norm(&v[1..]);
            if r == 0.0 {
                let mut out = alloc::vec![0.0; v.len()];
                out[0] = libm::sqrt(s.max(0.0));
                return out;
            }
            let hi = libm::sqrt((s + r).max(0.0));
            let lo = libm::sqrt((s - r).max(0.0));
            let mut out = Vec::with_capacity(v.len());
            out.push(0.5 * (hi + lo));
            out.extend(v[1..].iter().map(|y| 0.5 * (hi - lo) * y / r));
            out
        }
        ModelSpec::DirectSum(s) => ModelSpec::split(s, v)
            .into_iter()
            .zip(s)
            .flat_map(|(part, sm)| sqrt(sm, part))
            .collect(),
        ModelSpec::Polyhedral(_) => unreachable!("no Jordan product on polyhedral models"),
    }
}
