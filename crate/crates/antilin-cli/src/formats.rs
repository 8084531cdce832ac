//! On-disk formats: operator-set JSON files, search-report and certificate
//! JSON, and Gram-matrix CSV.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use antilin::basis::GramMatrix;
use antilin::construct::{OrthoSet, SetKind};
use antilin::search::{Certificate, SearchReport, Strategy};
use antilin::{CMat, Complex64};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// matrix[row][col] = [re, im].
pub type MatrixDto = Vec<Vec<[f64; 2]>>;

/// JSON file holding a set of anti-linear operator matrices.
#[derive(Debug, Serialize, Deserialize)]
pub struct OperatorSetFile {
    pub schema_version: String,
    pub dim: usize,
    /// "conjugation", "skew", or "general" (unconstrained operators).
    pub kind: String,
    #[serde(default)]
    pub meta: String,
    /// Tolerance the set was validated at when written.
    pub tol: f64,
    pub matrices: Vec<MatrixDto>,
}

fn mat_to_dto(m: &CMat) -> MatrixDto {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn dto_to_mat(dto: &MatrixDto, dim: usize, index: usize) -> Result<CMat, CliError> {
    if dto.len() != dim || dto.iter().any(|row| row.len() != dim) {
        return Err(CliError::data(format!(
            "matrix {index} is not {dim}x{dim}"
        )));
    }
    let rows: Vec<Vec<Complex64>> = dto
        .iter()
        .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    CMat::from_rows(&rows)
        .map_err(|e| CliError::data(format!("matrix {index} is malformed: {e}")))
}

impl OperatorSetFile {
    pub fn from_ortho_set(set: &OrthoSet, tol: f64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: set.dim(),
            kind: set.kind().label().to_string(),
            meta: set.meta().to_string(),
            tol,
            matrices: set.ops().iter().map(|op| mat_to_dto(op.matrix())).collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
        let file: Self = serde_json::from_str(&text)
            .map_err(|e| CliError::data(format!("cannot parse {}: {e}", path.display())))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::data(format!(
                "unsupported schema_version {:?} in {} (expected {:?})",
                file.schema_version,
                path.display(),
                SCHEMA_VERSION
            )));
        }
        if file.dim == 0 {
            return Err(CliError::data(format!(
                "{}: dim must be at least 1",
                path.display()
            )));
        }
        Ok(file)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::data(format!("cannot serialize set: {e}")))?;
        text.push('\n');
        fs::write(path, text)
            .map_err(|e| CliError::data(format!("cannot write {}: {e}", path.display())))
    }

    /// The declared kind, or `None` for "general".
    pub fn set_kind(&self) -> Result<Option<SetKind>, CliError> {
        match self.kind.as_str() {
            "conjugation" => Ok(Some(SetKind::Conjugation)),
            "skew" => Ok(Some(SetKind::Skew)),
            "general" => Ok(None),
            other => Err(CliError::data(format!(
                "unknown kind {other:?} (expected conjugation, skew, or general)"
            ))),
        }
    }

    pub fn matrices(&self) -> Result<Vec<CMat>, CliError> {
        self.matrices
            .iter()
            .enumerate()
            .map(|(i, dto)| dto_to_mat(dto, self.dim, i))
            .collect()
    }
}

pub fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Joint => "joint",
        Strategy::Greedy => "greedy",
    }
}

/// Deterministic JSON view of a search report: everything except wall time,
/// which would break byte-for-byte reproducibility.
#[derive(Debug, Serialize, Deserialize)]
pub struct SearchReportDto {
    pub schema_version: String,
    pub dim: usize,
    pub kind: String,
    pub target_k: usize,
    pub strategy: String,
    pub seed: u64,
    pub restarts: u32,
    pub max_iters: u32,
    pub step_size: f64,
    pub tol_loss: f64,
    /// Smallest loss over the restarts that ran; absent if none ran.
    pub best_loss: Option<f64>,
    pub best_restart: Option<u32>,
    pub per_restart_losses: Vec<f64>,
    pub iterations_used: u64,
    pub budget_exhausted: bool,
    pub succeeded: bool,
}

impl SearchReportDto {
    pub fn from_report(report: &SearchReport) -> Self {
        let cfg = &report.config;
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: cfg.dim,
            kind: cfg.kind.label().to_string(),
            target_k: cfg.target_k,
            strategy: strategy_name(cfg.strategy).to_string(),
            seed: cfg.seed,
            restarts: cfg.restarts,
            max_iters: cfg.max_iters,
            step_size: cfg.step_size,
            tol_loss: cfg.tol_loss,
            best_loss: report.best_loss.is_finite().then_some(report.best_loss),
            best_restart: report.best_restart,
            per_restart_losses: report.per_restart_losses.clone(),
            iterations_used: report.iterations_used,
            budget_exhausted: report.budget_exhausted,
            succeeded: report.succeeded(),
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::data(format!("cannot serialize report: {e}")))?;
        text.push('\n');
        Ok(text)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CertificateDto {
    pub schema_version: String,
    pub dim: usize,
    pub kind: String,
    pub size: usize,
    pub tol: f64,
    pub max_structure_residual: f64,
    pub max_unitarity_residual: f64,
    pub max_offdiag_gram: f64,
    pub max_diag_deviation: f64,
    pub passed: bool,
}

impl CertificateDto {
    pub fn from_certificate(cert: &Certificate) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: cert.dim,
            kind: cert.kind.label().to_string(),
            size: cert.size,
            tol: cert.tol,
            max_structure_residual: cert.max_structure_residual,
            max_unitarity_residual: cert.max_unitarity_residual,
            max_offdiag_gram: cert.max_offdiag_gram,
            max_diag_deviation: cert.max_diag_deviation,
            passed: cert.passed,
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::data(format!("cannot serialize certificate: {e}")))?;
        text.push('\n');
        Ok(text)
    }
}

/// Gram matrix as CSV, one row per line, cells `re±imi` with 17 significant
/// digits.
pub fn gram_to_csv(gram: &GramMatrix) -> String {
    let k = gram.size();
    let mut out = String::new();
    for a in 0..k {
        let row: Vec<String> = (0..k).map(|b| gram.format_entry(a, b)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::data(format!("cannot write {}: {e}", path.display())))
}
