//! Command execution, independent of argument parsing and process exit.

use std::fmt::Write;
use std::path::PathBuf;

use serde::Serialize;

use qembed_core::decide::{decide, gbit_no_linear_psi_certificate, holevo_map};
use qembed_core::embedding::{build_embedding, reduce_to_minimal, verify_embedding, Embedding};
use qembed_core::jordan::JordanAlgebra;
use qembed_core::models::ModelSpec;
use qembed_core::projector::{
    check_kadison, check_lemma3, check_lemma4, choi, classify_decoherence,
    projector_from_embedding, verify_projector, DecoherenceClass,
};
use qembed_core::report::VerificationReport;
use qembed_core::Error;

use crate::format::{
    CertificateDto, ChoiDto, ClassifyDto, DecisionDto, DemoOutput, EmbeddingDto, ModelDto,
    ReportRecord, Status, VerdictDto, VerifyOutput,
};
use crate::render;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Embed,
    Verify,
    Reduce,
    Choi,
    Classify,
    Decide,
    Demo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Model or embedding file; unused by `demo`.
    pub model_path: Option<PathBuf>,
    pub tol: f64,
    pub trials: usize,
    pub seed: u64,
    pub json_output: bool,
    pub out_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, model_path: Option<PathBuf>) -> Self {
        Self {
            command,
            model_path,
            tol: 1e-9,
            trials: 200,
            seed: 42,
            json_output: false,
            out_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunOutput {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }

    fn failed(msg: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_FAILED,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Contents of an input file.
#[derive(Debug, Clone)]
pub enum Input {
    Model(ModelSpec),
    Embedding(Embedding),
}

impl Input {
    pub fn model(&self) -> &ModelSpec {
        match self {
            Input::Model(m) => m,
            Input::Embedding(e) => e.model(),
        }
    }
}

fn located(path: &str, e: &serde_json::Error) -> String {
    if e.line() == 0 {
        format!("{path}: {e}")
    } else {
        format!("{path}:{}:{}: {e}", e.line(), e.column())
    }
}

/// Parses a model file or, when the top-level object has a `model` key, an
/// embedding file.
pub fn parse_input(path: &str, text: &str) -> Result<Input, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| located(path, &e))?;
    if value.get("model").is_some() {
        let dto: EmbeddingDto = serde_json::from_str(text).map_err(|e| located(path, &e))?;
        dto.to_embedding()
            .map(Input::Embedding)
            .map_err(|e| format!("{path}: invalid embedding: {e}"))
    } else {
        let dto: ModelDto = serde_json::from_str(text).map_err(|e| located(path, &e))?;
        dto.to_model()
            .map(Input::Model)
            .map_err(|e| format!("{path}: {e}"))
    }
}

fn load(cfg: &RunConfig) -> Result<Input, RunOutput> {
    let Some(path) = &cfg.model_path else {
        return Err(RunOutput::usage("a model or embedding file is required"));
    };
    let name = path.display().to_string();
    let text =
        std::fs::read_to_string(path).map_err(|e| RunOutput::usage(format!("{name}: {e}")))?;
    parse_input(&name, &text).map_err(RunOutput::usage)
}

fn embedding_of(input: &Input) -> Result<Embedding, RunOutput> {
    match input {
        Input::Embedding(e) => Ok(e.clone()),
        Input::Model(m) => build_embedding(m).map_err(|e| match e {
            Error::NotEmbeddableHere => RunOutput::failed(format!(
                "{m}: no embedding is constructed for polyhedral models; run `qembed decide` on this file"
            )),
            other => RunOutput::failed(format!("{m}: {other}")),
        }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// Emits `doc` (JSON on stdout with `--json`, `human` otherwise) and writes
/// the JSON to `--out` when given.
fn emit<T: Serialize>(cfg: &RunConfig, code: u8, doc: &T, human: String) -> RunOutput {
    let json = to_json(doc);
    let mut stderr = String::new();
    if let Some(path) = &cfg.out_path {
        if let Err(e) = std::fs::write(path, &json) {
            return RunOutput::usage(format!("{}: {e}", path.display()));
        }
        let _ = writeln!(stderr, "wrote {}", path.display());
    }
    let stdout = if cfg.json_output { json } else { human };
    RunOutput {
        exit_code: code,
        stdout,
        stderr,
    }
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return RunOutput::usage(format!("--tol must be positive (got {})", cfg.tol));
    }
    if cfg.trials == 0 {
        return RunOutput::usage("--trials must be at least 1");
    }
    if cfg.command == Command::Demo {
        return demo(cfg);
    }
    let input = match load(cfg) {
        Ok(i) => i,
        Err(out) => return out,
    };
    let result = match cfg.command {
        Command::Embed => embed(cfg, &input),
        Command::Verify => verify(cfg, &input),
        Command::Reduce => reduce(cfg, &input),
        Command::Choi => choi_cmd(cfg, &input),
        Command::Classify => classify(cfg, &input),
        Command::Decide => decide_cmd(cfg, &input),
        Command::Demo => unreachable!(),
    };
    result.unwrap_or_else(|out| out)
}

fn embed(cfg: &RunConfig, input: &Input) -> Result<RunOutput, RunOutput> {
    let e = embedding_of(input)?;
    let human = format!(
        "{} embeds into Q{}\nphi, psi: {} x {} real matrices\n",
        e.model(),
        e.n(),
        e.phi().target_dim(),
        e.phi().source_dim()
    );
    Ok(emit(cfg, EXIT_OK, &EmbeddingDto::from(&e), human))
}

fn reduce(cfg: &RunConfig, input: &Input) -> Result<RunOutput, RunOutput> {
    let e = embedding_of(input)?;
    let r = reduce_to_minimal(&e, cfg.tol)
        .map_err(|err| RunOutput::failed(format!("{}: {err}", e.model())))?;
    let human = format!("{}: Q{} reduced to Q{}\n", e.model(), e.n(), r.n());
    Ok(emit(cfg, EXIT_OK, &EmbeddingDto::from(&r), human))
}

fn verify(cfg: &RunConfig, input: &Input) -> Result<RunOutput, RunOutput> {
    let e = embedding_of(input)?;
    let (trials, tol, seed) = (cfg.trials, cfg.tol, cfg.seed);
    let mut reports: Vec<VerificationReport> = vec![verify_embedding(&e, trials, tol, seed)];
    let mut reduced_n = e.n();
    if reports[0].passed() {
        match reduce_to_minimal(&e, tol).and_then(|r| projector_from_embedding(&r).map(|p| (r, p)))
        {
            Ok((r, p)) => {
                reduced_n = r.n();
                reports.push(verify_projector(&p, &r, trials, tol, seed));
                reports.push(check_lemma3(&p, &r, trials, tol, seed));
                reports.push(check_lemma4(&p, &r, trials, tol, seed));
                reports.push(check_kadison(&p, trials, tol, seed));
            }
            Err(err) => {
                let mut failed = VerificationReport::new("reduction");
                failed.push_flag(&err.to_string(), false, Vec::new());
                reports.push(failed);
            }
        }
    }
    if let Ok(j) = JordanAlgebra::new(e.model()) {
        reports.push(j.check_axioms(trials, tol, seed));
    }
    let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
    let ok = reports.iter().all(VerificationReport::passed);
    let doc = VerifyOutput {
        status: Status::from_bool(ok),
        n: e.n(),
        reduced_n,
        reports: records,
    };
    let mut human = String::new();
    for r in &doc.reports {
        let _ = writeln!(human, "{}", render::report(r));
    }
    let _ = writeln!(
        human,
        "{}: {}",
        e.model(),
        if ok {
            "all checks passed"
        } else {
            "verification FAILED"
        }
    );
    Ok(emit(
        cfg,
        if ok { EXIT_OK } else { EXIT_FAILED },
        &doc,
        human,
    ))
}

fn choi_cmd(cfg: &RunConfig, input: &Input) -> Result<RunOutput, RunOutput> {
    let e = embedding_of(input)?;
    let p = projector_from_embedding(&e)
        .map_err(|err| RunOutput::failed(format!("{}: {err}", e.model())))?;
    let doc = ChoiDto::new(e.n(), &choi(&p), cfg.tol);
    let human = format!(
        "Choi matrix of the projection for {} ({}x{})\nspectrum: {}\ntrace: {:.6}\n{}\n",
        e.model(),
        e.n() * e.n(),
        e.n() * e.n(),
        render::vector(&doc.eigenvalues),
        doc.trace,
        if doc.completely_positive {
            "completely positive".to_string()
        } else {
            format!(
                "not completely positive: min eigenvalue {:.6}",
                doc.min_eigenvalue
            )
        }
    );
    Ok(emit(cfg, EXIT_OK, &doc, human))
}

fn classify(cfg: &RunConfig, input: &Input) -> Result<RunOutput, RunOutput> {
    let e = embedding_of(input)?;
    let fail = |err: Error| RunOutput::failed(format!("{}: {err}", e.model()));
    let r = reduce_to_minimal(&e, cfg.tol).map_err(fail)?;
    let class = classify_decoherence(&r, cfg.tol).map_err(fail)?;
    let code = match class {
        DecoherenceClass::CpDecoherence {
            closure_residual, ..
        } if closure_residual.is_nan() || closure_residual > cfg.tol => EXIT_FAILED,
        _ => EXIT_OK,
    };
    let mut human = format!("{}: {class}\n", e.model());
    if let DecoherenceClass::CpDecoherence {
        closure_residual, ..
    } = class
    {
        let _ = writeln!(human, "product closure residual: {closure_residual:.3e}");
    }
    Ok(emit(cfg, code, &ClassifyDto::from(&class), human))
}

fn decide_cmd(cfg: &RunConfig, input: &Input) -> Result<RunOutput, RunOutput> {
    let m = input.model();
    let d = decide(m, cfg.tol).map_err(|err| RunOutput::usage(format!("{m}: {err}")))?;
    let doc = DecisionDto::from(&d);
    let human = match (&doc.verdict, &doc.witness) {
        (VerdictDto::ClassicalIsomorphic, crate::format::WitnessDto::Isomorphism { residual, .. }) => format!(
            "{m}: classical, isomorphic to C{} (witness residual {residual:.3e})\n",
            doc.n.unwrap_or(0)
        ),
        (VerdictDto::NotQuantumEmbeddable, crate::format::WitnessDto::ExtremeRays { dim, rays }) => format!(
            "{m}: not quantum-embeddable: {} extreme rays in dimension {dim}, so the cone is not a simplex\n",
            rays.len()
        ),
        _ => format!("{m}: unknown (not a polyhedral model)\n"),
    };
    let code = if doc.verdict == VerdictDto::ClassicalIsomorphic {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(emit(cfg, code, &doc, human))
}

fn demo(cfg: &RunConfig) -> RunOutput {
    let (map, report) = holevo_map(cfg.trials, cfg.tol, cfg.seed);
    let cert = gbit_no_linear_psi_certificate(cfg.tol);
    let ok = report.passed() && cert.linear_psi_excluded;
    let doc = DemoOutput {
        status: Status::from_bool(ok),
        holevo_map: map.matrix().to_rows(),
        holevo_report: ReportRecord::from(&report),
        certificate: CertificateDto::from(&cert),
    };
    let mut human = String::new();
    let _ = writeln!(
        human,
        "Holevo map: gbit effect e -> (e(w1), e(w2), e(w3), e(w4))"
    );
    for (k, row) in doc.holevo_map.iter().enumerate() {
        let _ = writeln!(human, "  w{} = {}", k + 1, render::vector(row));
    }
    let _ = writeln!(human, "{}", render::report(&doc.holevo_report));
    let _ = writeln!(human, "perfectly distinguishable corner pairs:");
    for d in &doc.certificate.distinguishers {
        let _ = writeln!(
            human,
            "  w{} vs w{}: effect e{} gives {:.3} and {:.3}",
            d.pair[0] + 1,
            d.pair[1] + 1,
            d.effect + 1,
            d.values[0],
            d.values[1]
        );
    }
    let _ = writeln!(
        human,
        "affine rank of the corners: {}; of their forced images in C4: {}",
        doc.certificate.ranks.gbit_states, doc.certificate.ranks.forced_images
    );
    let _ = writeln!(
        human,
        "w1 + w2 - w3 - w4 = {:.3e} but the images differ by {:.3e}: {}",
        cert.corner_relation,
        cert.image_relation,
        if cert.linear_psi_excluded {
            "no linear psi exists"
        } else {
            "inconclusive"
        }
    );
    emit(cfg, if ok { EXIT_OK } else { EXIT_FAILED }, &doc, human)
}
