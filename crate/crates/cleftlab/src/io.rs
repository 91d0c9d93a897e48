//! JSON file formats: algebras, modules and bimodules, construction
//! manifests, suite configurations, and the report objects the CLI emits.
//!
//! References to algebras and bimodules inside files are path-or-id
//! strings: anything containing a path separator or ending in `.json` is
//! read as a file (relative paths resolve against the referencing file's
//! directory); anything else must name a catalog builtin. Loaded algebras
//! must carry the session's field modulus — mixing primes is an input
//! error, not a silent coercion.
//!
//! Report serialization goes through `serde_json::Value`, whose object
//! keys are ordered, so identical reports serialize to identical bytes.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraData};
use crate::catalog;
use crate::cleft::{
    morita_context_ring, theta_extension, triangular_matrix_ring, trivial_extension,
    truncated_tensor_ring, CleftSuite, CleftVerification, ThetaExtensionData,
};
use crate::error::{Error, Result};
use crate::exactlinalg::{Fp, Matrix};
use crate::gorenstein::{GorensteinReport, TransferReport};
use crate::homology::Dimension;
use crate::modules::{Bimodule, RightModule};
use crate::perfect::{NilpotencyIndex, PerfectCutoffs, PerfectReport, DEFAULT_NILPOTENCY_CUTOFF};
use crate::singularity::{EhiReport, LsgfReport, SingCriterion, SingEquivReport};

/// The ground field, as stored in algebra files.
#[derive(Serialize, Deserialize, Clone, Copy, Debug)]
pub struct FieldFile {
    pub p: u64,
}

/// Algebra file: structure constants as a dim×dim table of sparse
/// `[k, coeff]` lists (b_i·b_j = Σ coeff·b_k), coefficients mod p.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AlgebraFile {
    pub field: FieldFile,
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub structure_constants: Vec<Vec<Vec<[u64; 2]>>>,
    pub unit: Vec<u64>,
    pub idempotents: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<Vec<u64>>>,
}

/// Module file; a bimodule adds `left_action` and (when the left algebra
/// differs from the right one) `algebra_left`. Matrices are dense
/// row-major integer arrays, one per algebra basis element.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModuleFile {
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_action: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_left: Option<String>,
}

/// Construction manifest. `construct` selects the recipe; `gamma`,
/// `bimodule`, `theta`, `cutoff` feed the θ/trivial/tensor recipes, while
/// `a`, `b`, `n`, `m` feed the triangular and Morita ones.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ConstructionManifest {
    pub construct: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
}

/// Companion descriptor emitted next to a constructed Λ: the splitting
/// maps and the kernel basis indices inside Λ.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SuiteDescriptor {
    pub f: Vec<Vec<u64>>,
    pub g: Vec<Vec<u64>>,
    pub m_basis: Vec<usize>,
}

/// Cutoffs carried by a suite configuration.
#[derive(Serialize, Deserialize, Clone, Copy, Debug)]
pub struct SuiteCutoffs {
    pub resolution: usize,
    pub nilpotency: usize,
    pub ext_window: usize,
}

impl Default for SuiteCutoffs {
    fn default() -> SuiteCutoffs {
        SuiteCutoffs { resolution: 24, nilpotency: DEFAULT_NILPOTENCY_CUTOFF, ext_window: 8 }
    }
}

/// One verification case: an id plus either an inline manifest or a path
/// to a manifest file.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SuiteCase {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<ConstructionManifest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// Top-level configuration for `verify suite`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SuiteConfig {
    pub p: u64,
    #[serde(default)]
    pub cutoffs: SuiteCutoffs,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub cases: Vec<SuiteCase>,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
}

/// Default reproducibility seed.
pub const DEFAULT_SEED: u64 = 0xC1EF;

fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// The full check battery, in execution order.
pub const CHECK_NAMES: &[&str] = &["identities", "perfect", "transfer", "singularity", "ehi"];

fn default_checks() -> Vec<String> {
    CHECK_NAMES.iter().map(|s| s.to_string()).collect()
}

impl SuiteConfig {
    /// Structural validation: prime modulus, positive cutoffs, known check
    /// names, and exactly one source per case.
    pub fn validate(&self) -> Result<()> {
        Fp::new(self.p)?;
        if self.cutoffs.resolution == 0 || self.cutoffs.nilpotency == 0 || self.cutoffs.ext_window == 0
        {
            return Err(Error::InputError("cutoffs must be at least 1".into()));
        }
        for check in &self.checks {
            if !CHECK_NAMES.contains(&check.as_str()) {
                return Err(Error::InputError(format!(
                    "unknown check {check:?}; expected one of {CHECK_NAMES:?}"
                )));
            }
        }
        for case in &self.cases {
            if case.manifest.is_some() == case.path.is_some() {
                return Err(Error::InputError(format!(
                    "case {:?} must have exactly one of `manifest` or `path`",
                    case.id
                )));
            }
        }
        Ok(())
    }

    /// Per-operation cutoffs derived from the configured ones.
    pub fn perfect_cutoffs(&self) -> PerfectCutoffs {
        PerfectCutoffs {
            nilpotency: self.cutoffs.nilpotency,
            resolution: self.cutoffs.resolution,
            ext_window: self.cutoffs.ext_window,
            seed: self.seed,
        }
    }
}

// ---------------------------------------------------------------------------
// Reading and writing

/// Read a JSON file into `T`, mapping all failures onto input errors.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InputError(format!("cannot parse {}: {e}", path.display())))
}

/// Serialize a value to pretty JSON with a trailing newline.
pub fn to_json_string(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report values serialize");
    out.push('\n');
    out
}

/// Write a value as pretty JSON.
pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    std::fs::write(path, to_json_string(value))
        .map_err(|e| Error::InputError(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Algebra files

/// Unpack an algebra file into raw table data (no validation beyond shape).
pub fn algebra_data_from_file(file: &AlgebraFile) -> Result<AlgebraData> {
    let field = Fp::new(file.field.p)?;
    let dim = file.dim;
    if file.basis_names.len() != dim {
        return Err(Error::InputError(format!(
            "dim = {dim} but {} basis names were given",
            file.basis_names.len()
        )));
    }
    if file.structure_constants.len() != dim
        || file.structure_constants.iter().any(|row| row.len() != dim)
    {
        return Err(Error::InputError("structure_constants must be a dim×dim table".into()));
    }
    let mut structure = vec![0u64; dim * dim * dim];
    for (i, row) in file.structure_constants.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            for &[k, coeff] in cell {
                let k = k as usize;
                if k >= dim {
                    return Err(Error::InputError(format!(
                        "structure constant ({i}, {j}) references basis index {k} ≥ dim"
                    )));
                }
                let slot = &mut structure[(i * dim + j) * dim + k];
                *slot = field.add(*slot, field.reduce(coeff));
            }
        }
    }
    Ok(AlgebraData {
        field,
        basis_names: file.basis_names.clone(),
        structure,
        unit: file.unit.clone(),
        idempotents: file.idempotents.clone(),
        radical: file.radical.clone(),
    })
}

/// Validate and build an algebra from a file.
pub fn algebra_from_file(file: &AlgebraFile) -> Result<Arc<Algebra>> {
    Ok(Arc::new(Algebra::new(algebra_data_from_file(file)?)?))
}

/// Serialize an algebra into the file format (sparse table, radical
/// included so round trips re-validate it).
pub fn algebra_to_file(a: &Algebra) -> AlgebraFile {
    let dim = a.dim();
    let mut table = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let cell: Vec<[u64; 2]> =
                (0..dim).filter(|&k| a.c(i, j, k) != 0).map(|k| [k as u64, a.c(i, j, k)]).collect();
            row.push(cell);
        }
        table.push(row);
    }
    let radical_rows: Vec<Vec<u64>> =
        (0..a.radical().dim()).map(|r| a.radical().basis().row(r).to_vec()).collect();
    AlgebraFile {
        field: FieldFile { p: a.field().p() },
        dim,
        basis_names: a.basis_names().to_vec(),
        structure_constants: table,
        unit: a.unit().to_vec(),
        idempotents: a.idempotents().to_vec(),
        radical: Some(radical_rows),
    }
}

// ---------------------------------------------------------------------------
// Reference resolution

fn is_path_reference(reference: &str) -> bool {
    reference.contains('/') || reference.ends_with(".json")
}

/// Read an algebra file; a `construct` output (object with a `lambda` key)
/// is accepted and unwrapped.
pub fn read_algebra_file(path: &Path) -> Result<AlgebraFile> {
    let value: Value = read_json(path)?;
    let inner = value.get("lambda").cloned().unwrap_or(value);
    serde_json::from_value(inner)
        .map_err(|e| Error::InputError(format!("cannot parse {}: {e}", path.display())))
}

/// Resolve a path-or-id algebra reference. File-based algebras must match
/// the session field.
pub fn resolve_algebra(reference: &str, base: &Path, field: Fp) -> Result<Arc<Algebra>> {
    if is_path_reference(reference) {
        let path = base.join(reference);
        let file = read_algebra_file(&path)?;
        let algebra = algebra_from_file(&file)?;
        if algebra.field() != field {
            return Err(Error::InputError(format!(
                "algebra {} has p = {} but the session uses p = {}",
                path.display(),
                algebra.field().p(),
                field.p()
            )));
        }
        Ok(algebra)
    } else {
        catalog::builtin_algebra(reference, field)
    }
}

fn matrix_from_rows(field: Fp, rows: &[Vec<u64>], expect_rows: usize, expect_cols: usize) -> Result<Matrix> {
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(Error::InputError(format!(
            "matrix must be {expect_rows}×{expect_cols}, got {}×{}",
            rows.len(),
            rows.first().map_or(0, Vec::len)
        )));
    }
    let mut out = Matrix::zero(field, expect_rows, expect_cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out.set(i, j, field.reduce(v));
        }
    }
    Ok(out)
}

fn matrix_to_rows(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn matrices_from_file(
    field: Fp,
    mats: &[Vec<Vec<u64>>],
    count: usize,
    dim: usize,
    what: &str,
) -> Result<Vec<Matrix>> {
    if mats.len() != count {
        return Err(Error::InputError(format!(
            "{what} must have one matrix per algebra basis element ({count}), got {}",
            mats.len()
        )));
    }
    mats.iter().map(|rows| matrix_from_rows(field, rows, dim, dim)).collect()
}

/// Load a right module from a file.
pub fn module_from_file(file: &ModuleFile, base: &Path, field: Fp) -> Result<RightModule> {
    let algebra = resolve_algebra(&file.algebra, base, field)?;
    let action = matrices_from_file(field, &file.action, algebra.dim(), file.dim, "action")?;
    RightModule::new(algebra, file.dim, action)
}

/// Serialize a right module; `algebra` is the path-or-id to record.
pub fn module_to_file(module: &RightModule, algebra: String) -> ModuleFile {
    ModuleFile {
        algebra,
        dim: module.dim(),
        action: module.action().iter().map(matrix_to_rows).collect(),
        left_action: None,
        algebra_left: None,
    }
}

/// Load a bimodule from a file (requires `left_action`; `algebra_left`
/// defaults to `algebra`).
pub fn bimodule_from_file(file: &ModuleFile, base: &Path, field: Fp) -> Result<Bimodule> {
    let right = resolve_algebra(&file.algebra, base, field)?;
    let left_ref = file.algebra_left.as_ref().unwrap_or(&file.algebra);
    let left = resolve_algebra(left_ref, base, field)?;
    let left_mats = file
        .left_action
        .as_ref()
        .ok_or_else(|| Error::InputError("bimodule file is missing left_action".into()))?;
    let left_action = matrices_from_file(field, left_mats, left.dim(), file.dim, "left_action")?;
    let right_action = matrices_from_file(field, &file.action, right.dim(), file.dim, "action")?;
    Bimodule::new(left, right, file.dim, left_action, right_action)
}

/// Serialize a bimodule with the given algebra references.
pub fn bimodule_to_file(m: &Bimodule, algebra: String, algebra_left: Option<String>) -> ModuleFile {
    ModuleFile {
        algebra,
        dim: m.dim(),
        action: m.right_action().iter().map(matrix_to_rows).collect(),
        left_action: Some(m.left_action().iter().map(matrix_to_rows).collect()),
        algebra_left,
    }
}

/// Resolve a reference to a right module: a module file loads directly; an
/// algebra reference (builtin id, algebra file, or `construct` output)
/// yields its regular module.
pub fn resolve_module(reference: &str, base: &Path, field: Fp) -> Result<RightModule> {
    if is_path_reference(reference) {
        let path = base.join(reference);
        let value: Value = read_json(&path)?;
        if value.get("action").is_some() {
            let file: ModuleFile = serde_json::from_value(value)
                .map_err(|e| Error::InputError(format!("cannot parse {}: {e}", path.display())))?;
            let nested = path.parent().map(Path::to_path_buf).unwrap_or_default();
            return module_from_file(&file, &nested, field);
        }
    }
    Ok(RightModule::regular(resolve_algebra(reference, base, field)?))
}

/// Resolve a path-or-id bimodule reference.
pub fn resolve_bimodule(reference: &str, base: &Path, field: Fp) -> Result<Bimodule> {
    if is_path_reference(reference) {
        let path = base.join(reference);
        let file: ModuleFile = read_json(&path)?;
        let nested = path.parent().map(Path::to_path_buf).unwrap_or_default();
        bimodule_from_file(&file, &nested, field)
    } else {
        catalog::builtin_bimodule(reference, field)
    }
}

// ---------------------------------------------------------------------------
// Construction manifests

fn required<'a>(field: &'a Option<String>, name: &str, construct: &str) -> Result<&'a str> {
    field
        .as_deref()
        .ok_or_else(|| Error::InputError(format!("construct {construct:?} requires {name:?}")))
}

/// Build a cleft suite from a manifest. `base` anchors relative paths.
pub fn build_suite(manifest: &ConstructionManifest, base: &Path, field: Fp) -> Result<CleftSuite> {
    match manifest.construct.as_str() {
        "theta" => {
            let gamma = resolve_algebra(required(&manifest.gamma, "gamma", "theta")?, base, field)?;
            let m = resolve_bimodule(required(&manifest.bimodule, "bimodule", "theta")?, base, field)?;
            let theta = match &manifest.theta {
                Some(rows) => matrix_from_rows(field, rows, m.dim(), m.dim() * m.dim())?,
                None => Matrix::zero(field, m.dim(), m.dim() * m.dim()),
            };
            theta_extension(&ThetaExtensionData { gamma, m, theta })
        }
        "trivial" => {
            let gamma = resolve_algebra(required(&manifest.gamma, "gamma", "trivial")?, base, field)?;
            let m =
                resolve_bimodule(required(&manifest.bimodule, "bimodule", "trivial")?, base, field)?;
            trivial_extension(&gamma, &m)
        }
        "tensor" => {
            let gamma = resolve_algebra(required(&manifest.gamma, "gamma", "tensor")?, base, field)?;
            let m =
                resolve_bimodule(required(&manifest.bimodule, "bimodule", "tensor")?, base, field)?;
            truncated_tensor_ring(&gamma, &m, manifest.cutoff.unwrap_or(DEFAULT_NILPOTENCY_CUTOFF))
        }
        "triangular" => {
            let a = resolve_algebra(required(&manifest.a, "a", "triangular")?, base, field)?;
            let b = resolve_algebra(required(&manifest.b, "b", "triangular")?, base, field)?;
            let n = resolve_bimodule(required(&manifest.n, "n", "triangular")?, base, field)?;
            triangular_matrix_ring(&a, &b, &n)
        }
        "morita" => {
            let a = resolve_algebra(required(&manifest.a, "a", "morita")?, base, field)?;
            let b = resolve_algebra(required(&manifest.b, "b", "morita")?, base, field)?;
            let n = resolve_bimodule(required(&manifest.n, "n", "morita")?, base, field)?;
            let m = resolve_bimodule(required(&manifest.m, "m", "morita")?, base, field)?;
            morita_context_ring(&a, &b, &n, &m)
        }
        other => Err(Error::InputError(format!(
            "unknown construct {other:?}; expected theta|trivial|tensor|triangular|morita"
        ))),
    }
}

/// The descriptor for a constructed suite.
pub fn suite_descriptor(suite: &CleftSuite) -> SuiteDescriptor {
    let m_basis = (0..suite.m_embedding.cols())
        .map(|c| {
            (0..suite.m_embedding.rows())
                .find(|&r| suite.m_embedding.get(r, c) != 0)
                .expect("embedding columns are unit vectors")
        })
        .collect();
    SuiteDescriptor {
        f: matrix_to_rows(&suite.f.matrix),
        g: matrix_to_rows(&suite.g.matrix),
        m_basis,
    }
}

// ---------------------------------------------------------------------------
// Report serialization

/// `Dimension` as JSON: a number when finite, otherwise a string.
pub fn dimension_json(d: Dimension) -> Value {
    match d {
        Dimension::Finite(n) => json!(n),
        Dimension::Infinite => json!("infinite"),
        Dimension::Unknown => json!("unknown"),
    }
}

pub fn gorenstein_json(r: &GorensteinReport) -> Value {
    json!({
        "id_right": dimension_json(r.id_right),
        "id_left": dimension_json(r.id_left),
        "silp": dimension_json(r.silp_proxy),
        "spli": dimension_json(r.spli_proxy),
        "verdict": r.verdict.to_string(),
    })
}

pub fn perfect_json(r: &PerfectReport) -> Value {
    let nilpotency = match r.nilpotency {
        NilpotencyIndex::Within(s) => json!(s),
        NilpotencyIndex::NotWithin(c) => json!(format!("not within {c}")),
    };
    json!({
        "nilpotency": nilpotency,
        "fd_left": dimension_json(r.fd_left),
        "pd_right": dimension_json(r.pd_right),
        "tor_table": r.tor_table,
        "condition_r": {"passed": r.condition_r.passed, "witness": r.condition_r.witness},
        "vanishing_bound": r.vanishing_bound,
        "coperfect": r.coperfect,
        "coperfect_spot_check": r.coperfect_spot_check,
        "verdict": r.verdict.to_string(),
    })
}

pub fn transfer_json(r: &TransferReport) -> Value {
    json!({
        "gamma": gorenstein_json(&r.gamma_report),
        "lambda": gorenstein_json(&r.lambda_report),
        "perfect": perfect_json(&r.perfect),
        "s": r.s,
        "n": r.n,
        "n_prime": r.n_prime,
        "biconditional": r.biconditional,
        "silp_chain": r.silp_chain,
        "spli_chain": r.spli_chain,
        "verdict": r.verdict.to_string(),
    })
}

pub fn criterion_json(c: &SingCriterion) -> Value {
    match c {
        SingCriterion::Vanishes => json!("vanishes"),
        SingCriterion::Fails { simple, degree } => {
            json!({"fails": {"simple": simple, "degree": degree}})
        }
        SingCriterion::Unknown(reason) => json!({"unknown": reason}),
    }
}

pub fn lsgf_json(r: &LsgfReport) -> Value {
    let table: Vec<Value> = r
        .table
        .iter()
        .map(|row| {
            Value::Array(
                row.iter().map(|cell| json!({"dim": cell.dim, "pd": dimension_json(cell.pd)})).collect(),
            )
        })
        .collect();
    json!({
        "criterion": criterion_json(&r.criterion),
        "bound": r.bound,
        "table": table,
        "guard": r.guard,
        "seed": r.seed,
    })
}

pub fn sing_json(r: &SingEquivReport) -> Value {
    let checks: Vec<Value> = r
        .consistency_checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    json!({
        "criterion": criterion_json(&r.criterion),
        "lsgf": r.lsgf.as_ref().map(lsgf_json),
        "consistency_checks": checks,
        "gldim_biconditional": r.gldim_biconditional,
        "conclusion": r.conclusion,
        "verdict": r.verdict.to_string(),
        "seed": r.seed,
    })
}

pub fn ehi_json(r: &EhiReport) -> Value {
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|p| {
            json!({
                "lambda_dims": p.lambda_dims,
                "gamma_dims": p.gamma_dims,
                "agree_from": p.agree_from,
            })
        })
        .collect();
    json!({
        "window": [r.window.0, r.window.1],
        "pairs": pairs,
        "threshold": r.threshold,
        "agrees_beyond_threshold": r.agrees_beyond_threshold,
        "seed": r.seed,
    })
}

pub fn verification_json(v: &CleftVerification) -> Value {
    let checks: Vec<Value> = v
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    json!({"checks": checks, "all_passed": v.all_passed()})
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn algebra_files_round_trip() {
        for name in catalog::ALGEBRA_NAMES {
            let a = catalog::builtin_algebra(name, f101()).unwrap();
            let file = algebra_to_file(&a);
            let text = serde_json::to_string(&file).unwrap();
            let parsed: AlgebraFile = serde_json::from_str(&text).unwrap();
            let b = algebra_from_file(&parsed).unwrap();
            assert_eq!(a.structure(), b.structure(), "{name} round-trips");
            assert_eq!(a.unit(), b.unit());
            assert_eq!(a.idempotents(), b.idempotents());
        }
    }

    #[test]
    fn algebra_files_reject_bad_indices() {
        let a = catalog::k_times_k(f101()).unwrap();
        let mut file = algebra_to_file(&a);
        file.structure_constants[0][0].push([9, 1]);
        assert!(algebra_from_file(&file).is_err());
    }

    #[test]
    fn bimodule_files_round_trip() {
        let m = catalog::builtin_bimodule("e4", f101()).unwrap();
        let file = bimodule_to_file(&m, "ka2".into(), None);
        let back = bimodule_from_file(&file, Path::new("."), f101()).unwrap();
        assert_eq!(back.dim(), m.dim());
        assert_eq!(back.left_action(), m.left_action());
        assert_eq!(back.right_action(), m.right_action());
    }

    #[test]
    fn manifests_rebuild_the_curated_suites() {
        let base = Path::new(".");
        let e2 = ConstructionManifest {
            construct: "trivial".into(),
            gamma: Some("k-times-k".into()),
            bimodule: Some("e2".into()),
            theta: None,
            cutoff: None,
            a: None,
            b: None,
            n: None,
            m: None,
        };
        let built = build_suite(&e2, base, f101()).unwrap();
        let curated = catalog::e2_suite(f101()).unwrap();
        assert_eq!(built.lambda.structure(), curated.lambda.structure());

        let e3 = ConstructionManifest {
            construct: "triangular".into(),
            gamma: None,
            bimodule: None,
            theta: None,
            cutoff: None,
            a: Some("dual-numbers".into()),
            b: Some("f101".into()),
            n: Some("e3-n".into()),
            m: None,
        };
        let built = build_suite(&e3, base, f101()).unwrap();
        let curated = catalog::e3_suite(f101()).unwrap();
        assert_eq!(built.lambda.structure(), curated.lambda.structure());

        let e4 = ConstructionManifest {
            construct: "tensor".into(),
            gamma: Some("ka2".into()),
            bimodule: Some("e4".into()),
            theta: None,
            cutoff: Some(8),
            a: None,
            b: None,
            n: None,
            m: None,
        };
        let built = build_suite(&e4, base, f101()).unwrap();
        let curated = catalog::e4_suite(f101()).unwrap();
        assert_eq!(built.lambda.structure(), curated.lambda.structure());
    }

    #[test]
    fn manifests_report_missing_fields() {
        let broken = ConstructionManifest {
            construct: "trivial".into(),
            gamma: Some("k-times-k".into()),
            bimodule: None,
            theta: None,
            cutoff: None,
            a: None,
            b: None,
            n: None,
            m: None,
        };
        let err = build_suite(&broken, Path::new("."), f101()).unwrap_err();
        assert!(err.to_string().contains("bimodule"));
        let unknown = ConstructionManifest { construct: "frobenius".into(), ..broken };
        assert!(build_suite(&unknown, Path::new("."), f101()).is_err());
    }

    #[test]
    fn algebra_references_resolve_from_files() {
        let dir = std::env::temp_dir().join("cleftlab-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ka2.json");
        let a = catalog::ka2(f101()).unwrap();
        write_json(&path, &serde_json::to_value(algebra_to_file(&a)).unwrap()).unwrap();
        let loaded = resolve_algebra("ka2.json", &dir, f101()).unwrap();
        assert_eq!(loaded.structure(), a.structure());
        // A mismatched session prime is refused.
        assert!(resolve_algebra("ka2.json", &dir, Fp::new(7).unwrap()).is_err());
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn suite_descriptor_records_the_kernel_basis() {
        let suite = catalog::e2_suite(f101()).unwrap();
        let desc = suite_descriptor(&suite);
        assert_eq!(desc.m_basis, vec![2], "M sits at the last Λ basis slot");
        assert_eq!(desc.f.len(), 2, "f: Λ → Γ has dim Γ rows");
        assert_eq!(desc.f[0].len(), 3);
        assert_eq!(desc.g.len(), 3);
    }

    #[test]
    fn config_validation_catches_bad_inputs() {
        let mut config = SuiteConfig {
            p: 101,
            cutoffs: SuiteCutoffs::default(),
            seed: DEFAULT_SEED,
            cases: vec![SuiteCase { id: "x".into(), manifest: None, path: None }],
            checks: default_checks(),
        };
        assert!(config.validate().is_err(), "a case needs a source");
        config.cases.clear();
        assert!(config.validate().is_ok());
        config.checks.push("divination".into());
        assert!(config.validate().is_err());
        config.checks = default_checks();
        config.p = 100;
        assert!(config.validate().is_err(), "100 is not prime");
    }

    #[test]
    fn report_serialization_is_deterministic() {
        let suite = catalog::e2_suite(f101()).unwrap();
        let report = crate::gorenstein::transfer_report(
            &suite,
            &PerfectCutoffs { nilpotency: 16, resolution: 24, ext_window: 6, seed: DEFAULT_SEED },
        );
        let a = to_json_string(&transfer_json(&report));
        let b = to_json_string(&transfer_json(&report));
        assert_eq!(a, b);
        assert!(a.contains("\"silp_chain\""));
        assert!(a.contains("\"verdict\""));
    }
}
