//! Decision procedures for polyhedral models: classical isomorphism versus
//! non-embeddability, and the explicit obstruction for the gbit.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::LinearMap;
use crate::linalg::{dist, dot, nnls, norm, RMatrix};
use crate::models::{ModelSpec, PolyhedralCone};
use crate::report::{Tracker, VerificationReport};
use crate::{seeded_rng, tol, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Isomorphic to the classical model with this many outcomes.
    ClassicalIsomorphic(usize),
    NotQuantumEmbeddable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `matrix` maps effects to classical effects: the unit to the all-ones
    /// vector and every generator onto a standard basis ray. `residual` is
    /// the worst deviation from that description.
    Isomorphism {
        matrix: RMatrix,
        residual: f64,
    },
    /// The irredundant extreme rays (unit length), more of them than `dim`.
    ExtremeRays {
        dim: usize,
        rays: Vec<Vec<f64>>,
    },
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Witness,
}

/// Merges numerically coincident rays, then drops rays that are nonnegative
/// combinations of the others.
pub fn irredundant_rays(cone: &PolyhedralCone) -> Vec<Vec<f64>> {
    let mut rays: Vec<Vec<f64>> = Vec::new();
    for r in cone.extreme_effects() {
        let s = norm(r);
        let unit: Vec<f64> = r.iter().map(|x| x / s).collect();
        if !rays.iter().any(|q| dist(q, &unit) < tol::RAY_ANGLE) {
            rays.push(unit);
        }
    }
    let mut k = 0;
    while k < rays.len() {
        let others: Vec<Vec<f64>> = rays
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, r)| r.clone())
            .collect();
        let redundant = !others.is_empty()
            && nnls(&RMatrix::from_columns(cone.dim(), &others), &rays[k]).residual <= tol::NNLS;
        if redundant {
            rays.remove(k);
        } else {
            k += 1;
        }
    }
    rays
}

/// A polyhedral model embeds into quantum theory exactly when it is a
/// simplex. Returns the isomorphism onto the classical model in that case
/// and the irredundant ray set otherwise.
pub fn decide_polyhedral(cone: &PolyhedralCone, tol: f64) -> Result<Decision> {
    let dim = cone.dim();
    let rays = irredundant_rays(cone);
    if rays.len() > dim {
        return Ok(Decision {
            verdict: Verdict::NotQuantumEmbeddable,
            witness: Witness::ExtremeRays { dim, rays },
        });
    }
    let r = RMatrix::from_columns(dim, &rays);
    let smallest = r.singular_values().first().copied().unwrap_or(0.0);
    if rays.len() < dim || smallest <= tol {
        return Err(Error::DegenerateCone(format!(
            "{} irredundant rays in dimension {dim} with smallest singular value {smallest:e}",
            rays.len()
        )));
    }
    let inv = r
        .inverse()
        .ok_or_else(|| Error::DegenerateCone("ray matrix is singular".into()))?;
    let lambda = inv.mul_vec(cone.unit());
    if lambda.iter().any(|&l| l <= tol) {
        return Err(Error::DegenerateCone(
            "unit lies on the boundary of the cone".into(),
        ));
    }
    let t = RMatrix::from_rows(
        dim,
        &(0..dim)
            .map(|i| inv.row(i).iter().map(|x| x / lambda[i]).collect())
            .collect::<Vec<_>>(),
    );
    let residual = isomorphism_residual(&t, cone);
    Ok(Decision {
        verdict: Verdict::ClassicalIsomorphic(dim),
        witness: Witness::Isomorphism {
            matrix: t,
            residual,
        },
    })
}

/// Worst deviation of `t` from mapping the unit to ones and each generator,
/// rescaled to unit length, onto some standard basis vector.
pub fn isomorphism_residual(t: &RMatrix, cone: &PolyhedralCone) -> f64 {
    let tu = t.mul_vec(cone.unit());
    let mut worst = tu.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
    for g in cone.extreme_effects() {
        let img = t.mul_vec(g);
        let s = norm(&img);
        let best = (0..img.len())
            .map(|k| {
                img.iter()
                    .enumerate()
                    .map(|(j, x)| (x / s - if j == k { 1.0 } else { 0.0 }).abs())
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    worst
}

/// The cone of a model whose effect cone is polyhedral among the catalog
/// entries: classical models, one-level quantum models, and direct sums of
/// these.
pub fn as_polyhedral(m: &ModelSpec) -> Option<PolyhedralCone> {
    let classical_dim = |m: &ModelSpec| -> Option<usize> {
        fn go(m: &ModelSpec) -> Option<usize> {
            match m {
                ModelSpec::Classical { n } => Some(*n),
                ModelSpec::Quantum { n: 1, .. } => Some(1),
                ModelSpec::DirectSum(s) => s.iter().map(go).sum(),
                _ => None,
            }
        }
        go(m)
    };
    if let ModelSpec::Polyhedral(c) = m {
        return Some(c.clone());
    }
    let n = classical_dim(m)?;
    let basis = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    PolyhedralCone::new(n, vec![1.0; n], basis).ok()
}

/// [`decide_polyhedral`] for any model spec; non-polyhedral models are
/// `Unknown`.
pub fn decide(m: &ModelSpec, tol: f64) -> Result<Decision> {
    match as_polyhedral(m) {
        Some(c) => decide_polyhedral(&c, tol),
        None => Ok(Decision {
            verdict: Verdict::Unknown,
            witness: Witness::None,
        }),
    }
}

/// Corner states of the gbit, ordered so that `w1 + w2 = w3 + w4`.
pub fn gbit_corners() -> Vec<Vec<f64>> {
    vec![
        vec![1.0, 1.0, 1.0],
        vec![1.0, -1.0, -1.0],
        vec![1.0, 1.0, -1.0],
        vec![1.0, -1.0, 1.0],
    ]
}

/// The map sending a gbit effect to its values on the four corners, which
/// lands in the classical 4-outcome effects with `x1 + x2 = x3 + x4`.
pub fn holevo_map(trials: usize, tol: f64, seed: u64) -> (LinearMap, VerificationReport) {
    let corners = gbit_corners();
    let map = LinearMap::new(RMatrix::from_rows(3, &corners));
    let gbit = ModelSpec::gbit();
    let mut report = VerificationReport::new("Holevo map gbit -> C4");

    let mut unital = Tracker::new("unitality", tol);
    let img = map.apply(&gbit.unit_effect().coords);
    unital.observe(
        img.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max),
        || img.clone(),
    );

    let mut positive = Tracker::new("positivity", tol);
    let mut relation = Tracker::new("image_equation", tol);
    let mut rng = seeded_rng(seed, 0x80);
    let mut effects: Vec<Vec<f64>> = gbit
        .extremal_effects()
        .into_iter()
        .map(|e| e.coords)
        .collect();
    effects.extend((0..trials).map(|_| gbit.sample_effect(&mut rng).coords));
    for e in &effects {
        let x = map.apply(e);
        positive.observe(x.iter().fold(0.0_f64, |a, &v| a.max(-v)), || e.clone());
        relation.observe((x[0] + x[1] - x[2] - x[3]).abs(), || e.clone());
    }
    report.push(unital.finish());
    report.push(positive.finish());
    report.push(relation.finish());
    (map, report)
}

/// Affine dimension of a finite point set.
pub fn affine_rank(points: &[Vec<f64>], tol: f64) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    RMatrix::from_rows(first.len(), &diffs).rank(tol)
}

/// Effect `effect` takes value 1 on corner `pair[0]` and 0 on `pair[1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distinguisher {
    pub pair: [usize; 2],
    pub effect: usize,
    pub values: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineRanks {
    pub gbit_states: usize,
    pub forced_images: usize,
}

/// Why no linear `psi` can complete the Holevo map to an embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct GbitCertificate {
    pub corners: Vec<Vec<f64>>,
    pub effects: Vec<Vec<f64>>,
    pub distinguishers: Vec<Distinguisher>,
    /// Distribution each corner must be sent to, or `None` when the
    /// probabilities leave more than one outcome possible.
    pub forced_images: Vec<Option<Vec<f64>>>,
    pub ranks: AffineRanks,
    /// `|w1 + w2 - w3 - w4|`, zero for the square.
    pub corner_relation: f64,
    /// `|psi(w1) + psi(w2) - psi(w3) - psi(w4)|` for the forced images.
    pub image_relation: f64,
    pub linear_psi_excluded: bool,
}

pub fn gbit_no_linear_psi_certificate(tol: f64) -> GbitCertificate {
    let corners = gbit_corners();
    let effects: Vec<Vec<f64>> = PolyhedralCone::gbit().extreme_effects().to_vec();
    let value = |c: usize, e: usize| dot(&corners[c], &effects[e]);

    let mut distinguishers = Vec::new();
    for i in 0..corners.len() {
        for j in i + 1..corners.len() {
            let found = (0..effects.len())
                .find(|&e| (value(i, e) - 1.0).abs() <= tol && value(j, e).abs() <= tol);
            if let Some(e) = found {
                distinguishers.push(Distinguisher {
                    pair: [i, j],
                    effect: e,
                    values: [value(i, e), value(j, e)],
                });
            }
        }
    }

    // psi(w_i) is a distribution p with p . phi(e) = e(w_i), where
    // phi(e)_k = e(w_k) lies in [0, 1]. Whenever e(w_i) is 0 or 1 this pins
    // the support of p to the outcomes k with e(w_k) = e(w_i).
    let forced_images: Vec<Option<Vec<f64>>> = (0..corners.len())
        .map(|i| {
            let support: Vec<usize> = (0..corners.len())
                .filter(|&k| {
                    (0..effects.len()).all(|e| {
                        let v = value(i, e);
                        let sharp = v.abs() <= tol || (v - 1.0).abs() <= tol;
                        !sharp || (value(k, e) - v).abs() <= tol
                    })
                })
                .collect();
            match support[..] {
                [k] => Some(
                    (0..corners.len())
                        .map(|j| if j == k { 1.0 } else { 0.0 })
                        .collect(),
                ),
                _ => None,
            }
        })
        .collect();

    let relation = |v: &[Vec<f64>]| -> f64 {
        let s: Vec<f64> = (0..v[0].len())
            .map(|k| v[0][k] + v[1][k] - v[2][k] - v[3][k])
            .collect();
        norm(&s)
    };
    let corner_relation = relation(&corners);
    let all_forced = forced_images.iter().all(Option::is_some);
    let images: Vec<Vec<f64>> = forced_images.iter().flatten().cloned().collect();
    let ranks = AffineRanks {
        gbit_states: affine_rank(&corners, tol),
        forced_images: if all_forced {
            affine_rank(&images, tol)
        } else {
            0
        },
    };
    let image_relation = if all_forced { relation(&images) } else { 0.0 };
    let all_pairs = distinguishers.len() == corners.len() * (corners.len() - 1) / 2;
    GbitCertificate {
        linear_psi_excluded: all_pairs && all_forced && ranks.forced_images > ranks.gbit_states,
        corners,
        effects,
        distinguishers,
        forced_images,
        ranks,
        corner_relation,
        image_relation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(n: usize) -> PolyhedralCone {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        PolyhedralCone::new(n, vec![1.0; n], basis).unwrap()
    }

    #[test]
    fn standard_simplex_is_classical() {
        let d = decide_polyhedral(&simplex(3), 1e-9).unwrap();
        assert_eq!(d.verdict, Verdict::ClassicalIsomorphic(3));
        match d.witness {
            Witness::Isomorphism { residual, .. } => assert!(residual < 1e-12),
            w => panic!("{w:?}"),
        }
    }

    #[test]
    fn duplicated_generator_is_pruned() {
        let mut rays: Vec<Vec<f64>> = simplex(3).extreme_effects().to_vec();
        rays.push(vec![2.0, 0.0, 0.0]);
        let c = PolyhedralCone::new(3, vec![1.0; 3], rays).unwrap();
        assert_eq!(
            decide_polyhedral(&c, 1e-9).unwrap().verdict,
            Verdict::ClassicalIsomorphic(3)
        );
    }

    #[test]
    fn redundant_interior_generator_is_pruned() {
        let mut rays: Vec<Vec<f64>> = simplex(3).extreme_effects().to_vec();
        rays.push(vec![1.0, 1.0, 0.0]);
        let c = PolyhedralCone::new(3, vec![1.0; 3], rays).unwrap();
        assert_eq!(irredundant_rays(&c).len(), 3);
    }

    #[test]
    fn gbit_is_not_embeddable() {
        let d = decide_polyhedral(&PolyhedralCone::gbit(), 1e-9).unwrap();
        assert_eq!(d.verdict, Verdict::NotQuantumEmbeddable);
        assert!(matches!(d.witness, Witness::ExtremeRays { dim: 3, ref rays } if rays.len() == 4));
    }

    #[test]
    fn classical_catalog_agrees() {
        for n in 1..=4 {
            let d = decide(&ModelSpec::Classical { n }, 1e-9).unwrap();
            assert_eq!(d.verdict, Verdict::ClassicalIsomorphic(n));
        }
        assert_eq!(
            decide(&ModelSpec::Spin { d: 3 }, 1e-9).unwrap().verdict,
            Verdict::Unknown
        );
    }

    #[test]
    fn corners_match_vertex_enumeration() {
        let v = PolyhedralCone::gbit().extreme_states();
        for c in gbit_corners() {
            assert!(v.iter().any(|w| dist(w, &c) < 1e-12));
        }
    }

    #[test]
    fn holevo_examples() {
        let (map, report) = holevo_map(200, 1e-10, 3);
        assert!(report.passed(), "{report:?}");
        assert_eq!(map.apply(&[1.0, 0.0, 0.0]), vec![1.0; 4]);
        assert_eq!(map.apply(&[0.5, 0.5, 0.0]), vec![1.0, 0.0, 1.0, 0.0]);
        let x = map.apply(&[0.5, 0.0, 0.5]);
        assert_eq!(x[0] + x[1], x[2] + x[3]);
    }

    #[test]
    fn certificate_contents() {
        let c = gbit_no_linear_psi_certificate(1e-9);
        assert_eq!(
            c.ranks,
            AffineRanks {
                gbit_states: 2,
                forced_images: 3
            }
        );
        assert_eq!(c.distinguishers.len(), 6);
        // corners (1,1,1) and (1,1,-1) are told apart by e3
        let d = c.distinguishers.iter().find(|d| d.pair == [0, 2]).unwrap();
        assert_eq!(d.effect, 2);
        assert!(c.corner_relation < 1e-15);
        assert!((c.image_relation - 2.0).abs() < 1e-15);
        assert!(c.linear_psi_excluded);
    }

    #[test]
    fn affine_rank_examples() {
        let square = vec![
            vec![1.0, 1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
        ];
        assert_eq!(affine_rank(&square, 1e-9), 2);
        let deltas: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        assert_eq!(affine_rank(&deltas, 1e-9), 3);
        assert_eq!(affine_rank(&[], 1e-9), 0);
    }
}
