use std::path::PathBuf;
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    crate_dir()
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(crate_dir().join("tests/golden").join(name)).unwrap()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qembed(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qembed"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn embed_spin4_reports_dimension_four() {
    let r = qembed(&["embed", &fixture("spin4.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("Spin(4) embeds into Q4"));
    let r = qembed(&["embed", &fixture("spin4.json"), "--json"]);
    assert_eq!(r.stdout, golden("embed_spin4.json"));
}

#[test]
fn decide_gbit_is_not_embeddable() {
    let r = qembed(&["decide", &fixture("gbit.json"), "--json"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, golden("decide_gbit.json"));
    let r = qembed(&["decide", &fixture("gbit.json")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, golden("decide_gbit.txt"));
}

#[test]
fn decide_classical_exits_zero() {
    let r = qembed(&["decide", &fixture("classical3.json"), "--json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verdict"], "classical_isomorphic");
    assert_eq!(v["n"], 3);
}

#[test]
fn classify_real_qubit_is_not_physical() {
    let r = qembed(&["classify", &fixture("real2.json"), "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, golden("classify_real2.json"));
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert!((v["min_choi_eigenvalue"].as_f64().unwrap() + 0.5).abs() < 1e-9);
    let r = qembed(&["classify", &fixture("classical3.json"), "--json"]);
    assert_eq!(r.stdout, golden("classify_classical3.json"));
}

#[test]
fn choi_export() {
    let r = qembed(&["choi", &fixture("real2.json"), "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, golden("choi_real2.json"));
}

#[test]
fn demo_certificate() {
    let r = qembed(&["demo", "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, golden("demo.json"));
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let cert = &v["certificate"];
    assert_eq!(cert["verdict"], "not_quantum_embeddable");
    assert_eq!(cert["ranks"]["gbit_states"], 2);
    assert_eq!(cert["ranks"]["forced_images"], 3);
    assert_eq!(cert["distinguishers"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_catalog_model_passes() {
    let r = qembed(&["verify", &fixture("direct_sum.json"), "--trials", "40"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("all checks passed"));
}

#[test]
fn verify_rejects_broken_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    let r = qembed(&[
        "embed",
        &fixture("spin4.json"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for row in v["phi"].as_array_mut().unwrap() {
        for x in row.as_array_mut().unwrap() {
            *x = serde_json::json!(x.as_f64().unwrap() * 1.01);
        }
    }
    std::fs::write(&path, v.to_string()).unwrap();
    let r = qembed(&["verify", path.to_str().unwrap(), "--json", "--trials", "20"]);
    assert_eq!(r.code, 1);
    let out: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let checks = out["reports"][0]["checks"].as_array().unwrap();
    let unitality = checks.iter().find(|c| c["check"] == "unitality").unwrap();
    assert_eq!(unitality["status"], "fail");
    // |0.01 I_4| in Frobenius norm
    assert!((unitality["max_residual"].as_f64().unwrap() - 0.02).abs() < 1e-12);
}

#[test]
fn reduce_shrinks_padded_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let e = qembed_core::embedding::pad_embedding(
        &qembed_core::embedding::build_embedding(&qembed_core::models::ModelSpec::Classical {
            n: 2,
        })
        .unwrap(),
        1,
    )
    .unwrap();
    let path = dir.path().join("padded.json");
    std::fs::write(
        &path,
        serde_json::to_string(&qembed::format::EmbeddingDto::from(&e)).unwrap(),
    )
    .unwrap();
    let r = qembed(&["reduce", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("Q3 reduced to Q2"));
}

#[test]
fn out_file_matches_json_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let r = qembed(&[
        "choi",
        &fixture("real2.json"),
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), r.stdout);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "verify",
            "spin4.json",
            "--json",
            "--trials",
            "30",
            "--seed",
            "9",
        ],
        vec!["classify", "classical3.json", "--json"],
    ] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        args[1] = fixture(&args[1]);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = qembed(&args);
        let b = qembed(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn parse_errors_are_located() {
    let r = qembed(&["embed", &fixture("truncated.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("truncated.json:4:"), "{}", r.stderr);
    let r = qembed(&["embed", &fixture("bad_field.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("bad_field.json:3:"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qembed(&["embed", "/nonexistent/model.json"]).code, 2);
    assert_eq!(qembed(&["frobnicate"]).code, 2);
    assert_eq!(qembed(&["demo", "--tol", "-1"]).code, 2);
    assert_eq!(qembed(&["demo", "--trials", "0"]).code, 2);
    assert_eq!(qembed(&["embed"]).code, 2);
}

#[test]
fn polyhedral_models_are_not_embedded() {
    let r = qembed(&["embed", &fixture("gbit.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("qembed decide"));
}
