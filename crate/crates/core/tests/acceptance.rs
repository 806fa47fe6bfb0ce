//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use qembed_core::decide::{
    decide_polyhedral, gbit_no_linear_psi_certificate, holevo_map, Verdict, Witness,
};
use qembed_core::embedding::{
    build_embedding, pad_embedding, reduce_to_minimal, verify_embedding, Embedding,
};
use qembed_core::jordan::JordanAlgebra;
use qembed_core::linalg::{CMatrix, HermitianMatrix};
use qembed_core::models::{Field, ModelSpec, PolyhedralCone};
use qembed_core::projector::{
    check_kadison, check_lemma3, check_lemma4, choi, is_completely_positive,
    projector_from_embedding, verify_projector,
};
use qembed_core::report::VerificationReport;
use qembed_core::seeded_rng;
use rand::Rng;

const TOL: f64 = 1e-9;
const TRIALS: usize = 200;
const SEED: u64 = 42;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn random_direct_sum(seed: u64) -> ModelSpec {
    let mut rng = seeded_rng(seed, 99);
    let pool = [
        ModelSpec::Classical { n: 1 },
        ModelSpec::Classical { n: 2 },
        ModelSpec::Quantum {
            field: Field::Real,
            n: 2,
        },
        ModelSpec::Quantum {
            field: Field::Complex,
            n: 2,
        },
        ModelSpec::Quantum {
            field: Field::Quaternion,
            n: 1,
        },
        ModelSpec::Spin { d: 2 },
        ModelSpec::Spin { d: 3 },
        ModelSpec::Spin { d: 4 },
    ];
    let k = rng.random_range(2..=3);
    ModelSpec::direct_sum(
        (0..k)
            .map(|_| pool[rng.random_range(0..pool.len())].clone())
            .collect(),
    )
    .unwrap()
}

fn catalog() -> Vec<ModelSpec> {
    let mut out = Vec::new();
    out.extend((1..=5).map(|n| ModelSpec::Classical { n }));
    out.extend((1..=4).map(|n| ModelSpec::Quantum {
        field: Field::Complex,
        n,
    }));
    out.extend([2, 3].map(|n| ModelSpec::Quantum {
        field: Field::Real,
        n,
    }));
    out.extend([1, 2].map(|n| ModelSpec::Quantum {
        field: Field::Quaternion,
        n,
    }));
    out.extend((2..=7).map(|d| ModelSpec::Spin { d }));
    out.extend((1..=3).map(random_direct_sum));
    out
}

fn first_failure(r: &VerificationReport) -> String {
    r.checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("{}: {} failed ({:e})", r.subject, c.check, c.max_residual))
        .unwrap_or_default()
}

fn criterion_1() -> Outcome {
    let models = catalog();
    let mut worst: f64 = 0.0;
    for m in &models {
        let e = build_embedding(m).unwrap();
        let r = verify_embedding(&e, TRIALS, TOL, SEED);
        if !r.passed() || r.checks.len() != 6 {
            return outcome(false, first_failure(&r));
        }
        worst = worst.max(r.max_residual());
    }
    outcome(
        worst < TOL,
        format!(
            "{} models, six checks each, max residual {worst:.2e}",
            models.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let table = [
        (ModelSpec::Spin { d: 4 }, 4),
        (ModelSpec::Spin { d: 6 }, 8),
        (ModelSpec::Spin { d: 5 }, 4),
        (ModelSpec::Spin { d: 7 }, 8),
        (
            ModelSpec::Quantum {
                field: Field::Quaternion,
                n: 2,
            },
            4,
        ),
    ];
    let mut rows = Vec::new();
    let mut ok = true;
    for (m, want) in &table {
        let got = build_embedding(m).unwrap().n();
        ok &= got == *want;
        rows.push(format!("{m}:{got}"));
    }
    outcome(ok, rows.join(" "))
}

fn criterion_3() -> Outcome {
    let mut worst_l3: f64 = 0.0;
    let mut worst_kad: f64 = 0.0;
    let mut count = 0;
    for m in catalog() {
        let e = reduce_to_minimal(&build_embedding(&m).unwrap(), TOL).unwrap();
        let p = projector_from_embedding(&e).unwrap();
        let l3 = check_lemma3(&p, &e, TRIALS, TOL, SEED);
        let l4 = check_lemma4(&p, &e, TRIALS, TOL, SEED);
        let kad = check_kadison(&p, TRIALS, TOL, SEED);
        for r in [&l3, &l4, &kad] {
            if !r.passed() {
                return outcome(false, first_failure(r));
            }
        }
        let l4_checks = [
            "positive_image_is_square",
            "squares_in_positive_image",
            "self_duality",
        ];
        if !l4_checks
            .iter()
            .all(|c| l4.get(c).is_some_and(|c| c.passed))
        {
            return outcome(false, format!("{m}: missing cone-of-squares check"));
        }
        worst_l3 = worst_l3.max(l3.max_residual());
        worst_kad = worst_kad.max(kad.max_residual());
        count += 1;
    }
    outcome(
        worst_l3 < TOL && worst_kad <= TOL,
        format!("{count} reduced embeddings, Jordan residual {worst_l3:.2e}, Kadison violation {worst_kad:.2e}"),
    )
}

/// Choi matrix of X -> (X + conj X)/2 on Q2, written out directly:
/// (sum_ij E_ij (x) E_ij + SWAP)/2.
fn real_projection_choi_oracle() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(2 * i + i, 2 * j + j)] += Complex64::new(0.5, 0.0);
            m[(2 * i + j, 2 * j + i)] += Complex64::new(0.5, 0.0);
        }
    }
    m
}

fn criterion_4() -> Outcome {
    let cp_expected = [
        ModelSpec::Classical { n: 3 },
        ModelSpec::Quantum {
            field: Field::Complex,
            n: 3,
        },
        ModelSpec::direct_sum(vec![
            ModelSpec::Quantum {
                field: Field::Complex,
                n: 2,
            },
            ModelSpec::Classical { n: 2 },
        ])
        .unwrap(),
        ModelSpec::Spin { d: 3 },
    ];
    let not_cp = [
        ModelSpec::Quantum {
            field: Field::Real,
            n: 2,
        },
        ModelSpec::Quantum {
            field: Field::Quaternion,
            n: 2,
        },
        ModelSpec::Spin { d: 2 },
        ModelSpec::Spin { d: 4 },
        ModelSpec::Spin { d: 5 },
        ModelSpec::Spin { d: 6 },
    ];
    let projector = |m: &ModelSpec| projector_from_embedding(&build_embedding(m).unwrap()).unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    for m in &cp_expected {
        let (cp, min) = is_completely_positive(&projector(m), TOL);
        ok &= cp;
        if !cp {
            notes.push(format!("{m} not CP ({min:.3})"));
        }
    }
    for m in &not_cp {
        let (cp, min) = is_completely_positive(&projector(m), TOL);
        ok &= !cp && min <= -0.1;
        notes.push(format!("{m}:{min:.3}"));
    }
    let real = projector(&ModelSpec::Quantum {
        field: Field::Real,
        n: 2,
    });
    let choi_dev = (choi(&real).matrix().as_matrix() - &real_projection_choi_oracle()).max_abs();
    let oracle_min = HermitianMatrix::new(real_projection_choi_oracle())
        .unwrap()
        .min_eigenvalue();
    let (_, min) = is_completely_positive(&real, TOL);
    ok &= choi_dev < 1e-12 && (min - oracle_min).abs() < TOL && (oracle_min + 0.5).abs() < TOL;
    notes.push(format!("real-projection oracle deviation {choi_dev:.1e}"));
    outcome(
        ok,
        format!(
            "{} CP; negative witnesses {}",
            cp_expected.len(),
            notes.join(" ")
        ),
    )
}

fn simplex(n: usize, rng: &mut impl Rng) -> PolyhedralCone {
    // Image of the standard simplex under a random well-conditioned map.
    let m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2.0 } else { 0.0 } + rng.random_range(-0.3..0.3))
                .collect()
        })
        .collect();
    let rays: Vec<Vec<f64>> = (0..n).map(|k| (0..n).map(|i| m[i][k]).collect()).collect();
    let unit: Vec<f64> = (0..n).map(|i| m[i].iter().sum()).collect();
    PolyhedralCone::new(n, unit, rays).unwrap()
}

fn pentagon() -> PolyhedralCone {
    let rays = (0..5).map(|k| {
        let t = 2.0 * PI * k as f64 / 5.0;
        vec![1.0, t.cos(), t.sin()]
    });
    PolyhedralCone::new(3, vec![1.0, 0.0, 0.0], rays.collect()).unwrap()
}

fn cube() -> PolyhedralCone {
    let mut rays = Vec::new();
    for s in 0..8 {
        let sign = |b: usize| if s >> b & 1 == 1 { -1.0 } else { 1.0 };
        rays.push(vec![1.0, sign(0), sign(1), sign(2)]);
    }
    PolyhedralCone::new(4, vec![1.0, 0.0, 0.0, 0.0], rays).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = seeded_rng(SEED, 5);
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let d = decide_polyhedral(&simplex(n, &mut rng), TOL).unwrap();
        match (d.verdict, d.witness) {
            (Verdict::ClassicalIsomorphic(k), Witness::Isomorphism { residual, .. }) if k == n => {
                worst = worst.max(residual)
            }
            (v, _) => return outcome(false, format!("simplex of dim {n}: {v:?}")),
        }
    }
    let mut rays = Vec::new();
    for (name, cone) in [
        ("gbit", PolyhedralCone::gbit()),
        ("pentagon", pentagon()),
        ("cube", cube()),
    ] {
        let d = decide_polyhedral(&cone, TOL).unwrap();
        match (d.verdict, d.witness) {
            (Verdict::NotQuantumEmbeddable, Witness::ExtremeRays { dim, rays: r })
                if r.len() > dim =>
            {
                rays.push(format!("{name} {}>{dim}", r.len()))
            }
            (v, _) => return outcome(false, format!("{name}: {v:?}")),
        }
    }
    outcome(
        worst < TOL,
        format!(
            "simplices 1..6 residual {worst:.1e}; rays vs dim: {}",
            rays.join(", ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let (_, report) = holevo_map(TRIALS, 1e-10, SEED);
    let image = report
        .get("image_equation")
        .map_or(f64::INFINITY, |c| c.max_residual);
    let cert = gbit_no_linear_psi_certificate(TOL);
    let mut covered = [false; 4];
    let mut effects = Vec::new();
    for d in &cert.distinguishers {
        covered[d.pair[0]] = true;
        covered[d.pair[1]] = true;
        if !effects.contains(&d.effect) {
            effects.push(d.effect);
        }
    }
    let ok = report.passed()
        && image < 1e-10
        && cert.ranks.gbit_states == 2
        && cert.ranks.forced_images == 3
        && cert.distinguishers.len() == 6
        && covered.iter().all(|&c| c)
        && effects.len() == 4
        && cert.linear_psi_excluded;
    outcome(
        ok,
        format!(
            "image residual {image:.1e}; affine ranks {} vs {}; {} corner pairs separated by {} effects",
            cert.ranks.gbit_states,
            cert.ranks.forced_images,
            cert.distinguishers.len(),
            effects.len()
        ),
    )
}

fn full_suite(e: &Embedding) -> VerificationReport {
    let mut r = verify_embedding(e, TRIALS, TOL, SEED);
    let p = projector_from_embedding(e).unwrap();
    r.extend(verify_projector(&p, e, TRIALS, TOL, SEED));
    r.extend(check_lemma3(&p, e, TRIALS, TOL, SEED));
    r.extend(check_lemma4(&p, e, TRIALS, TOL, SEED));
    r.extend(check_kadison(&p, TRIALS, TOL, SEED));
    r.extend(
        JordanAlgebra::new(e.model())
            .unwrap()
            .check_axioms(TRIALS, TOL, SEED),
    );
    r
}

fn criterion_7() -> Outcome {
    let m = ModelSpec::Classical { n: 2 };
    let padded = pad_embedding(&build_embedding(&m).unwrap(), 1).unwrap();
    let reduced = reduce_to_minimal(&padded, TOL).unwrap();
    let suite = full_suite(&reduced);
    let min = reduced
        .psi_of(&m.maximally_mixed_state())
        .unwrap()
        .min_eigenvalue();
    let ok = padded.n() == 3 && reduced.n() == 2 && suite.passed() && min > 0.0;
    let detail = if suite.passed() {
        String::new()
    } else {
        format!("; {}", first_failure(&suite))
    };
    outcome(
        ok,
        format!(
            "Q{} -> Q{}, {} checks passed, min eigenvalue of uniform state {min:.3}{detail}",
            padded.n(),
            reduced.n(),
            suite.checks.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("catalog embeddings verify", criterion_1),
        ("quantum dimension table", criterion_2),
        (
            "Jordan, cone-of-squares and Kadison identities",
            criterion_3,
        ),
        ("complete positivity classification", criterion_4),
        ("polyhedral decision", criterion_5),
        ("gbit certificate", criterion_6),
        ("support reduction", criterion_7),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failures += 1;
        }
        println!(
            "{} criterion {} ({name}): {}",
            if o.ok { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    println!(
        "{} of 7 criteria passed in {:.1}s",
        7 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
