use qembed_core::decide::{as_polyhedral, decide, Verdict};
use qembed_core::embedding::{build_embedding, pad_embedding, reduce_to_minimal, verify_embedding};
use qembed_core::models::{Field, ModelSpec};
use qembed_core::projector::{
    classify_decoherence, dual_projector, projector_from_embedding, verify_projector, Block,
    DecoherenceClass,
};
use qembed_core::Error;

#[test]
fn reports_depend_only_on_seed() {
    let e = build_embedding(&ModelSpec::Spin { d: 5 }).unwrap();
    let a = verify_embedding(&e, 30, 1e-9, 11);
    let b = verify_embedding(&e, 30, 1e-9, 11);
    assert_eq!(a, b);
    let c = verify_embedding(&e, 30, 1e-9, 12);
    assert!(c.passed());
}

#[test]
fn padded_direct_sum_reduces_back() {
    let m = ModelSpec::direct_sum(vec![
        ModelSpec::Quantum {
            field: Field::Real,
            n: 2,
        },
        ModelSpec::Spin { d: 3 },
    ])
    .unwrap();
    let e = build_embedding(&m).unwrap();
    assert_eq!(e.n(), 4);
    let padded = pad_embedding(&e, 2).unwrap();
    let reduced = reduce_to_minimal(&padded, 1e-9).unwrap();
    assert_eq!(reduced.n(), 4);
    let p = projector_from_embedding(&reduced).unwrap();
    assert!(verify_projector(&p, &reduced, 50, 1e-9, 1).passed());
}

#[test]
fn dual_projector_fails_to_see_full_rank_before_reduction() {
    let padded =
        pad_embedding(&build_embedding(&ModelSpec::Classical { n: 2 }).unwrap(), 1).unwrap();
    let p = projector_from_embedding(&padded).unwrap();
    let r = verify_projector(&p, &padded, 20, 1e-9, 1);
    assert!(!r.get("dual_fixes_full_rank_state").unwrap().passed);
    let reduced = reduce_to_minimal(&padded, 1e-9).unwrap();
    let ps = dual_projector(&reduced).unwrap();
    assert_eq!(ps.n(), 2);
}

#[test]
fn complete_positivity_gives_block_structure() {
    let cases = [
        (
            ModelSpec::Spin { d: 3 },
            vec![Block {
                size: 2,
                multiplicity: 1,
            }],
        ),
        (
            ModelSpec::Quantum {
                field: Field::Complex,
                n: 3,
            },
            vec![Block {
                size: 3,
                multiplicity: 1,
            }],
        ),
        (
            ModelSpec::direct_sum(vec![
                ModelSpec::Classical { n: 1 },
                ModelSpec::Quantum {
                    field: Field::Complex,
                    n: 2,
                },
            ])
            .unwrap(),
            vec![
                Block {
                    size: 2,
                    multiplicity: 1,
                },
                Block {
                    size: 1,
                    multiplicity: 1,
                },
            ],
        ),
    ];
    for (m, want) in cases {
        match classify_decoherence(&build_embedding(&m).unwrap(), 1e-9).unwrap() {
            DecoherenceClass::CpDecoherence {
                blocks,
                closure_residual,
            } => {
                assert_eq!(blocks, want, "{m}");
                assert!(closure_residual < 1e-9);
            }
            other => panic!("{m}: {other:?}"),
        }
    }
}

#[test]
fn classical_models_take_both_decision_paths() {
    for m in [
        ModelSpec::Classical { n: 3 },
        ModelSpec::direct_sum(vec![
            ModelSpec::Classical { n: 2 },
            ModelSpec::Quantum {
                field: Field::Real,
                n: 1,
            },
        ])
        .unwrap(),
    ] {
        assert!(as_polyhedral(&m).is_some());
        assert_eq!(
            decide(&m, 1e-9).unwrap().verdict,
            Verdict::ClassicalIsomorphic(3)
        );
        assert!(build_embedding(&m).is_ok());
    }
}

#[test]
fn polyhedral_models_are_routed_to_decide() {
    assert_eq!(
        build_embedding(&ModelSpec::gbit()).unwrap_err(),
        Error::NotEmbeddableHere
    );
    assert_eq!(
        decide(&ModelSpec::gbit(), 1e-9).unwrap().verdict,
        Verdict::NotQuantumEmbeddable
    );
}
