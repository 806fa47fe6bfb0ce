//! JSON file formats: model and embedding files, reports, Choi matrices,
//! decisions and the gbit certificate.

use serde::{Deserialize, Serialize};

use qembed_core::decide::{Decision, GbitCertificate, Verdict, Witness};
use qembed_core::embedding::{Embedding, LinearMap};
use qembed_core::linalg::RMatrix;
use qembed_core::models::{Field, ModelSpec};
use qembed_core::projector::{Block, ChoiMatrix, DecoherenceClass};
use qembed_core::report::{CheckResult, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldDto {
    Real,
    Complex,
    Quaternion,
}

/// Model file, e.g. `{"type":"spin","d":4}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelDto {
    Classical {
        n: usize,
    },
    Quantum {
        field: FieldDto,
        n: usize,
    },
    Spin {
        d: usize,
    },
    DirectSum {
        summands: Vec<ModelDto>,
    },
    Polyhedral {
        dim: usize,
        unit: Vec<f64>,
        extreme_effects: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ModelKind {
    Classical,
    Quantum,
    Spin,
    DirectSum,
    Polyhedral,
}

/// Flat form of a model object. Deserializing it directly (rather than
/// through a tagged enum) keeps line and column information in errors.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "type")]
    kind: ModelKind,
    n: Option<usize>,
    field: Option<FieldDto>,
    d: Option<usize>,
    summands: Option<Vec<RawModel>>,
    dim: Option<usize>,
    unit: Option<Vec<f64>>,
    extreme_effects: Option<Vec<Vec<f64>>>,
}

impl RawModel {
    fn into_dto(self, at: &str) -> Result<ModelDto, String> {
        let (name, allowed): (&str, &[&str]) = match self.kind {
            ModelKind::Classical => ("classical", &["n"]),
            ModelKind::Quantum => ("quantum", &["field", "n"]),
            ModelKind::Spin => ("spin", &["d"]),
            ModelKind::DirectSum => ("direct_sum", &["summands"]),
            ModelKind::Polyhedral => ("polyhedral", &["dim", "unit", "extreme_effects"]),
        };
        let present = [
            ("n", self.n.is_some()),
            ("field", self.field.is_some()),
            ("d", self.d.is_some()),
            ("summands", self.summands.is_some()),
            ("dim", self.dim.is_some()),
            ("unit", self.unit.is_some()),
            ("extreme_effects", self.extreme_effects.is_some()),
        ];
        for (key, here) in present {
            if here && !allowed.contains(&key) {
                return Err(format!("{at}field `{key}` does not apply to {name} models"));
            }
            if !here && allowed.contains(&key) {
                return Err(format!("{at}{name} model needs field `{key}`"));
            }
        }
        Ok(match self.kind {
            ModelKind::Classical => ModelDto::Classical { n: self.n.unwrap() },
            ModelKind::Quantum => ModelDto::Quantum {
                field: self.field.unwrap(),
                n: self.n.unwrap(),
            },
            ModelKind::Spin => ModelDto::Spin { d: self.d.unwrap() },
            ModelKind::DirectSum => ModelDto::DirectSum {
                summands: self
                    .summands
                    .unwrap()
                    .into_iter()
                    .enumerate()
                    .map(|(k, s)| s.into_dto(&format!("{at}summands[{k}]: ")))
                    .collect::<Result<_, _>>()?,
            },
            ModelKind::Polyhedral => ModelDto::Polyhedral {
                dim: self.dim.unwrap(),
                unit: self.unit.unwrap(),
                extreme_effects: self.extreme_effects.unwrap(),
            },
        })
    }
}

impl<'de> Deserialize<'de> for ModelDto {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        RawModel::deserialize(d)?
            .into_dto("")
            .map_err(serde::de::Error::custom)
    }
}

impl ModelDto {
    pub fn to_model(&self) -> qembed_core::Result<ModelSpec> {
        match self {
            ModelDto::Classical { n } => ModelSpec::classical(*n),
            ModelDto::Quantum { field, n } => {
                let f = match field {
                    FieldDto::Real => Field::Real,
                    FieldDto::Complex => Field::Complex,
                    FieldDto::Quaternion => Field::Quaternion,
                };
                ModelSpec::quantum(f, *n)
            }
            ModelDto::Spin { d } => ModelSpec::spin(*d),
            ModelDto::DirectSum { summands } => ModelSpec::direct_sum(
                summands
                    .iter()
                    .map(ModelDto::to_model)
                    .collect::<Result<_, _>>()?,
            ),
            ModelDto::Polyhedral {
                dim,
                unit,
                extreme_effects,
            } => ModelSpec::polyhedral(*dim, unit.clone(), extreme_effects.clone()),
        }
    }
}

impl From<&ModelSpec> for ModelDto {
    fn from(m: &ModelSpec) -> Self {
        match m {
            ModelSpec::Classical { n } => ModelDto::Classical { n: *n },
            ModelSpec::Quantum { field, n } => ModelDto::Quantum {
                field: match field {
                    Field::Real => FieldDto::Real,
                    Field::Complex => FieldDto::Complex,
                    Field::Quaternion => FieldDto::Quaternion,
                },
                n: *n,
            },
            ModelSpec::Spin { d } => ModelDto::Spin { d: *d },
            ModelSpec::DirectSum(s) => ModelDto::DirectSum {
                summands: s.iter().map(ModelDto::from).collect(),
            },
            ModelSpec::Polyhedral(c) => ModelDto::Polyhedral {
                dim: c.dim(),
                unit: c.unit().to_vec(),
                extreme_effects: c.extreme_effects().to_vec(),
            },
        }
    }
}

/// Embedding file: `phi` and `psi` as lists of rows, each `n^2 x dim A` in
/// isometric coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDto {
    pub model: ModelDto,
    pub n: usize,
    pub phi: Vec<Vec<f64>>,
    pub psi: Vec<Vec<f64>>,
}

fn rows_to_map(name: &str, rows: &[Vec<f64>]) -> Result<LinearMap, String> {
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(k) = rows.iter().position(|r| r.len() != cols) {
        return Err(format!(
            "{name}: row {k} has {} entries, expected {cols}",
            rows[k].len()
        ));
    }
    Ok(LinearMap::new(RMatrix::from_rows(cols, rows)))
}

impl EmbeddingDto {
    pub fn to_embedding(&self) -> Result<Embedding, String> {
        let model = self.model.to_model().map_err(|e| e.to_string())?;
        let phi = rows_to_map("phi", &self.phi)?;
        let psi = rows_to_map("psi", &self.psi)?;
        Embedding::new(model, self.n, phi, psi).map_err(|e| e.to_string())
    }
}

impl From<&Embedding> for EmbeddingDto {
    fn from(e: &Embedding) -> Self {
        Self {
            model: ModelDto::from(e.model()),
            n: e.n(),
            phi: e.phi().matrix().to_rows(),
            psi: e.psi().matrix().to_rows(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One check. A non-finite residual is written as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub witness: Vec<f64>,
}

impl From<&CheckResult> for CheckRecord {
    fn from(c: &CheckResult) -> Self {
        Self {
            check: c.check.clone(),
            status: Status::from_bool(c.passed),
            max_residual: c.max_residual,
            witness: c.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub subject: String,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
}

impl From<&VerificationReport> for ReportRecord {
    fn from(r: &VerificationReport) -> Self {
        Self {
            subject: r.subject.clone(),
            status: Status::from_bool(r.passed()),
            checks: r.checks.iter().map(CheckRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub status: Status,
    /// Quantum dimension before and after reduction.
    pub n: usize,
    pub reduced_n: usize,
    pub reports: Vec<ReportRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiDto {
    pub n: usize,
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
    pub trace: f64,
    pub eigenvalues: Vec<f64>,
    /// Rows of `[re, im]` pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl ChoiDto {
    pub fn new(n: usize, c: &ChoiMatrix, tol: f64) -> Self {
        let eigenvalues = c.eigenvalues();
        let min_eigenvalue = eigenvalues.first().copied().unwrap_or(0.0);
        let m = c.matrix().as_matrix();
        Self {
            n,
            completely_positive: min_eigenvalue >= -tol * n as f64,
            min_eigenvalue,
            trace: c.trace(),
            eigenvalues,
            matrix: (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| [m[(i, j)].re, m[(i, j)].im])
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockDto {
    pub size: usize,
    pub multiplicity: usize,
}

impl From<&Block> for BlockDto {
    fn from(b: &Block) -> Self {
        Self {
            size: b.size,
            multiplicity: b.multiplicity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassifyDto {
    CpDecoherence {
        blocks: Vec<BlockDto>,
        closure_residual: f64,
    },
    NotPhysical {
        min_choi_eigenvalue: f64,
    },
}

impl From<&DecoherenceClass> for ClassifyDto {
    fn from(c: &DecoherenceClass) -> Self {
        match c {
            DecoherenceClass::CpDecoherence {
                blocks,
                closure_residual,
            } => ClassifyDto::CpDecoherence {
                blocks: blocks.iter().map(BlockDto::from).collect(),
                closure_residual: *closure_residual,
            },
            DecoherenceClass::NotPhysical {
                min_choi_eigenvalue,
            } => ClassifyDto::NotPhysical {
                min_choi_eigenvalue: *min_choi_eigenvalue,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictDto {
    ClassicalIsomorphic,
    NotQuantumEmbeddable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessDto {
    Isomorphism {
        matrix: Vec<Vec<f64>>,
        residual: f64,
    },
    ExtremeRays {
        dim: usize,
        rays: Vec<Vec<f64>>,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionDto {
    pub verdict: VerdictDto,
    /// Number of classical outcomes for `classical_isomorphic`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub witness: WitnessDto,
}

impl From<&Decision> for DecisionDto {
    fn from(d: &Decision) -> Self {
        let (verdict, n) = match d.verdict {
            Verdict::ClassicalIsomorphic(n) => (VerdictDto::ClassicalIsomorphic, Some(n)),
            Verdict::NotQuantumEmbeddable => (VerdictDto::NotQuantumEmbeddable, None),
            Verdict::Unknown => (VerdictDto::Unknown, None),
        };
        let witness = match &d.witness {
            Witness::Isomorphism { matrix, residual } => WitnessDto::Isomorphism {
                matrix: matrix.to_rows(),
                residual: *residual,
            },
            Witness::ExtremeRays { dim, rays } => WitnessDto::ExtremeRays {
                dim: *dim,
                rays: rays.clone(),
            },
            Witness::None => WitnessDto::None,
        };
        Self {
            verdict,
            n,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RanksDto {
    pub gbit_states: usize,
    pub forced_images: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinguisherDto {
    pub pair: [usize; 2],
    pub effect: usize,
    pub values: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateWitnessDto {
    pub corners: Vec<Vec<f64>>,
    pub effects: Vec<Vec<f64>>,
    pub forced_images: Vec<Option<Vec<f64>>>,
    pub corner_relation: f64,
    pub image_relation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub verdict: VerdictDto,
    pub ranks: RanksDto,
    pub distinguishers: Vec<DistinguisherDto>,
    pub witness: CertificateWitnessDto,
}

impl From<&GbitCertificate> for CertificateDto {
    fn from(c: &GbitCertificate) -> Self {
        Self {
            verdict: if c.linear_psi_excluded {
                VerdictDto::NotQuantumEmbeddable
            } else {
                VerdictDto::Unknown
            },
            ranks: RanksDto {
                gbit_states: c.ranks.gbit_states,
                forced_images: c.ranks.forced_images,
            },
            distinguishers: c
                .distinguishers
                .iter()
                .map(|d| DistinguisherDto {
                    pair: d.pair,
                    effect: d.effect,
                    values: d.values,
                })
                .collect(),
            witness: CertificateWitnessDto {
                corners: c.corners.clone(),
                effects: c.effects.clone(),
                forced_images: c.forced_images.clone(),
                corner_relation: c.corner_relation,
                image_relation: c.image_relation,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoOutput {
    pub status: Status,
    /// Rows of the Holevo map, one per corner state.
    pub holevo_map: Vec<Vec<f64>>,
    pub holevo_report: ReportRecord,
    pub certificate: CertificateDto,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_examples_parse() {
        let ds: ModelDto = serde_json::from_str(
            r#"{"type":"direct_sum","summands":[{"type":"quantum","field":"complex","n":3},{"type":"spin","d":4}]}"#,
        )
        .unwrap();
        assert_eq!(ds.to_model().unwrap().ambient_dim(), 9 + 5);
        let gbit: ModelDto = serde_json::from_str(
            r#"{"type":"polyhedral","dim":3,"unit":[1,0,0],"extreme_effects":[[0.5,0.5,0],[0.5,-0.5,0],[0.5,0,0.5],[0.5,0,-0.5]]}"#,
        )
        .unwrap();
        assert_eq!(gbit.to_model().unwrap(), ModelSpec::gbit());
    }

    #[test]
    fn field_names_are_case_sensitive() {
        assert!(serde_json::from_str::<ModelDto>(r#"{"type":"Spin","d":4}"#).is_err());
        assert!(
            serde_json::from_str::<ModelDto>(r#"{"type":"quantum","field":"Real","n":2}"#).is_err()
        );
        assert!(serde_json::from_str::<ModelDto>(r#"{"type":"spin","D":4}"#).is_err());
        assert!(serde_json::from_str::<ModelDto>(r#"{"type":"spin","d":4,"extra":1}"#).is_err());
    }

    #[test]
    fn fields_must_match_the_type() {
        let err = serde_json::from_str::<ModelDto>(r#"{"type":"spin","n":4}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("`n` does not apply to spin"), "{err}");
        let err = serde_json::from_str::<ModelDto>(
            r#"{"type":"direct_sum","summands":[{"type":"quantum","n":2}]}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(
            err.contains("summands[0]: quantum model needs field `field`"),
            "{err}"
        );
    }

    #[test]
    fn type_errors_carry_positions() {
        let err = serde_json::from_str::<ModelDto>(
            "{\n\"type\": \"quantum\",\n\"field\": \"Complex\", \"n\": 2}",
        )
        .unwrap_err();
        assert_eq!(err.line(), 3);
    }

    #[test]
    fn model_round_trip() {
        let m = ModelSpec::direct_sum(vec![
            ModelSpec::gbit(),
            ModelSpec::Quantum {
                field: Field::Real,
                n: 2,
            },
        ])
        .unwrap();
        let json = serde_json::to_string(&ModelDto::from(&m)).unwrap();
        let back: ModelDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_model().unwrap(), m);
    }

    #[test]
    fn embedding_round_trip() {
        let e = qembed_core::embedding::build_embedding(&ModelSpec::Spin { d: 3 }).unwrap();
        let json = serde_json::to_string(&EmbeddingDto::from(&e)).unwrap();
        let back: EmbeddingDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_embedding().unwrap(), e);
    }

    #[test]
    fn ragged_embedding_rows_are_rejected() {
        let dto = EmbeddingDto {
            model: ModelDto::Classical { n: 1 },
            n: 1,
            phi: vec![vec![1.0], vec![]],
            psi: vec![vec![1.0]],
        };
        assert!(dto.to_embedding().unwrap_err().contains("row 1"));
    }
}
