//! Python bindings for cleftlab's report surface.
//!
//! The module exposes the curated catalog plus the report entry points, with
//! every report returned as the same JSON-shaped dict the CLI writes, so a
//! notebook can poke at verdicts without shelling out. Modules are named by
//! compact specs (`"regular"`, `"simple:<t>"`, `"random:<seed>"`): desk-scale
//! exploration needs named samples, not a full module-type binding.

use std::path::Path;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;

use cleftlab::algebra::Algebra;
use cleftlab::catalog::{
    builtin_algebra, builtin_bimodule, builtin_suite, ALGEBRA_NAMES, BIMODULE_NAMES, SUITE_NAMES,
};
use cleftlab::cleft::{verify_cleft_identities, CleftSuite};
use cleftlab::error::Error;
use cleftlab::exactlinalg::Fp;
use cleftlab::homology::global_dimension;
use cleftlab::io::{self, DEFAULT_SEED};
use cleftlab::modules::{random_module, seeded_rng, RightModule};
use cleftlab::perfect::{NilpotencyIndex, PerfectCutoffs};
use cleftlab::{gorenstein, homology, perfect, singularity};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_field(p: u64) -> PyResult<Fp> {
    Fp::new(p).map_err(to_py_err)
}

/// Convert a JSON value into the matching Python object.
fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    match value {
        serde_json::Value::Null => Ok(py.None()),
        serde_json::Value::Bool(b) => b.into_py_any(py),
        serde_json::Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                u.into_py_any(py)
            } else if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        serde_json::Value::String(s) => s.into_py_any(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

/// Resolve a module spec over the given algebra.
fn module_from_spec(algebra: &Arc<Algebra>, spec: &str) -> PyResult<RightModule> {
    if spec == "regular" {
        return Ok(RightModule::regular(algebra.clone()));
    }
    if let Some(t) = spec.strip_prefix("simple:") {
        let t: usize = t
            .parse()
            .map_err(|_| PyValueError::new_err(format!("bad simple index in spec {spec:?}")))?;
        if t >= algebra.idempotents().len() {
            return Err(PyValueError::new_err(format!(
                "simple index {t} out of range (the algebra has {} simples)",
                algebra.idempotents().len()
            )));
        }
        return Ok(RightModule::simple(algebra.clone(), t));
    }
    if let Some(s) = spec.strip_prefix("random:") {
        let seed: u64 = s
            .parse()
            .map_err(|_| PyValueError::new_err(format!("bad seed in spec {spec:?}")))?;
        return Ok(random_module(algebra, &mut seeded_rng(seed), 3));
    }
    Err(PyValueError::new_err(format!(
        "unknown module spec {spec:?} (use \"regular\", \"simple:<t>\", or \"random:<seed>\")"
    )))
}

fn make_cutoffs(nilpotency: usize, resolution: usize, ext_window: usize, seed: u64) -> PerfectCutoffs {
    PerfectCutoffs { nilpotency, resolution, ext_window, seed }
}

/// All simples, the regular module, and `extra` seeded random modules — the
/// sampling the CLI uses.
fn standard_samples(algebra: &Arc<Algebra>, extra: usize, seed: u64) -> Vec<RightModule> {
    let mut samples: Vec<RightModule> = (0..algebra.idempotents().len())
        .map(|t| RightModule::simple(algebra.clone(), t))
        .collect();
    samples.push(RightModule::regular(algebra.clone()));
    let mut rng = seeded_rng(seed);
    for _ in 0..extra {
        samples.push(random_module(algebra, &mut rng, 3));
    }
    samples
}

fn resolve_suite(name: &str, p: u64) -> PyResult<CleftSuite> {
    builtin_suite(name, parse_field(p)?).map_err(to_py_err)
}

/// Names of the built-in algebras.
#[pyfunction]
fn algebra_names() -> Vec<String> {
    ALGEBRA_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Names of the built-in bimodules.
#[pyfunction]
fn bimodule_names() -> Vec<String> {
    BIMODULE_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Names of the built-in cleft-extension suites.
#[pyfunction]
fn suite_names() -> Vec<String> {
    SUITE_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Basic facts about a built-in algebra.
#[pyfunction]
#[pyo3(signature = (name, p = 101, cutoff = 24, seed = DEFAULT_SEED))]
fn algebra_info(py: Python<'_>, name: &str, p: u64, cutoff: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let algebra = builtin_algebra(name, parse_field(p)?).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("name", name)?;
    dict.set_item("p", p)?;
    dict.set_item("dim", algebra.dim())?;
    dict.set_item("basis", algebra.basis_names().to_vec())?;
    dict.set_item("radical_dim", algebra.radical().dim())?;
    dict.set_item("simples", algebra.idempotents().len())?;
    let gldim = io::dimension_json(global_dimension(&algebra, cutoff, seed));
    dict.set_item("global_dimension", json_to_py(py, &gldim)?)?;
    dict.into_py_any(py)
}

/// Validate an algebra JSON file; returns the violation listing (empty =
/// valid). Shape errors (bad indices, missing keys) raise instead.
#[pyfunction]
fn validate_algebra_file(path: &str) -> PyResult<Vec<String>> {
    let file = io::read_algebra_file(Path::new(path)).map_err(to_py_err)?;
    let data = io::algebra_data_from_file(&file).map_err(to_py_err)?;
    let violations = Algebra::validate(&data).map_err(to_py_err)?;
    Ok(violations.iter().map(|v| v.to_string()).collect())
}

/// Perfectness report for a built-in bimodule.
#[pyfunction]
#[pyo3(signature = (bimodule, p = 101, nilpotency = 16, resolution = 24, ext_window = 8, seed = DEFAULT_SEED))]
fn perfect_report(
    py: Python<'_>,
    bimodule: &str,
    p: u64,
    nilpotency: usize,
    resolution: usize,
    ext_window: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let m = builtin_bimodule(bimodule, parse_field(p)?).map_err(to_py_err)?;
    let report = perfect::perfect_report(&m, &make_cutoffs(nilpotency, resolution, ext_window, seed));
    json_to_py(py, &io::perfect_json(&report))
}

/// Iwanaga-Gorenstein report for a built-in algebra.
#[pyfunction]
#[pyo3(signature = (algebra, p = 101, cutoff = 24, seed = DEFAULT_SEED))]
fn gorenstein_report(py: Python<'_>, algebra: &str, p: u64, cutoff: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let a = builtin_algebra(algebra, parse_field(p)?).map_err(to_py_err)?;
    let report = gorenstein::gorenstein_report(&a, cutoff, seed);
    json_to_py(py, &io::gorenstein_json(&report))
}

/// Gorenstein transfer report (Theorem B(i) check) for a built-in suite.
#[pyfunction]
#[pyo3(signature = (suite, p = 101, nilpotency = 16, resolution = 24, ext_window = 8, seed = DEFAULT_SEED))]
fn transfer_report(
    py: Python<'_>,
    suite: &str,
    p: u64,
    nilpotency: usize,
    resolution: usize,
    ext_window: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let suite = resolve_suite(suite, p)?;
    let report =
        gorenstein::transfer_report(&suite, &make_cutoffs(nilpotency, resolution, ext_window, seed));
    json_to_py(py, &io::transfer_json(&report))
}

/// Singular-equivalence report (Theorem B(ii) check) for a built-in suite.
#[pyfunction]
#[pyo3(signature = (suite, samples = 20, p = 101, nilpotency = 16, resolution = 24, ext_window = 8, seed = DEFAULT_SEED))]
#[allow(clippy::too_many_arguments)]
fn sing_equiv_report(
    py: Python<'_>,
    suite: &str,
    samples: usize,
    p: u64,
    nilpotency: usize,
    resolution: usize,
    ext_window: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let suite = resolve_suite(suite, p)?;
    let cutoffs = make_cutoffs(nilpotency, resolution, ext_window, seed);
    let report = perfect::perfect_report(&suite.m, &cutoffs);
    let samples = standard_samples(&suite.lambda, samples, seed);
    let sing = singularity::sing_equiv_report(&suite, &report, &samples, &cutoffs).map_err(to_py_err)?;
    json_to_py(py, &io::sing_json(&sing))
}

/// Eventually-homological-isomorphism probe for a built-in suite.
#[pyfunction]
#[pyo3(signature = (suite, pairs = 20, k0 = 0, p = 101, nilpotency = 16, resolution = 24, ext_window = 8, seed = DEFAULT_SEED))]
#[allow(clippy::too_many_arguments)]
fn ehi_probe(
    py: Python<'_>,
    suite: &str,
    pairs: usize,
    k0: usize,
    p: u64,
    nilpotency: usize,
    resolution: usize,
    ext_window: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let suite = resolve_suite(suite, p)?;
    let cutoffs = make_cutoffs(nilpotency, resolution, ext_window, seed);
    let report = perfect::perfect_report(&suite.m, &cutoffs);
    let mut rng = seeded_rng(seed);
    let pairs: Vec<(RightModule, RightModule)> = (0..pairs)
        .map(|_| {
            (random_module(&suite.lambda, &mut rng, 3), random_module(&suite.lambda, &mut rng, 3))
        })
        .collect();
    let probe = singularity::ehi_probe(&suite, &pairs, (k0, ext_window), &report, &cutoffs)
        .map_err(to_py_err)?;
    json_to_py(py, &io::ehi_json(&probe))
}

/// Check the cleft-extension identities on a built-in suite.
#[pyfunction]
#[pyo3(signature = (suite, extra_samples = 3, p = 101, nilpotency = 16, resolution = 24, ext_window = 8, seed = DEFAULT_SEED))]
#[allow(clippy::too_many_arguments)]
fn verify_identities(
    py: Python<'_>,
    suite: &str,
    extra_samples: usize,
    p: u64,
    nilpotency: usize,
    resolution: usize,
    ext_window: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let suite = resolve_suite(suite, p)?;
    let cutoffs = make_cutoffs(nilpotency, resolution, ext_window, seed);
    let report = perfect::perfect_report(&suite.m, &cutoffs);
    let max_n = match report.nilpotency {
        NilpotencyIndex::Within(s) => s.max(1),
        NilpotencyIndex::NotWithin(_) => 2,
    };
    let samples = standard_samples(&suite.lambda, extra_samples, seed);
    let verification = verify_cleft_identities(&suite, &samples, max_n).map_err(to_py_err)?;
    json_to_py(py, &io::verification_json(&verification))
}

/// dim Ext^i(x, y) for i = 0, …, window over a built-in algebra.
#[pyfunction]
#[pyo3(signature = (algebra, x = "regular", y = "regular", window = 8, p = 101))]
fn ext_dims(algebra: &str, x: &str, y: &str, window: usize, p: u64) -> PyResult<Vec<usize>> {
    let a = builtin_algebra(algebra, parse_field(p)?).map_err(to_py_err)?;
    let x = module_from_spec(&a, x)?;
    let y = module_from_spec(&a, y)?;
    Ok(homology::ext_dims(&x, &y, window))
}

/// dim Tor_i(x, m) for i = 0, …, window against a built-in bimodule; the
/// module spec is interpreted over the bimodule's left algebra.
#[pyfunction]
#[pyo3(signature = (bimodule, x = "regular", window = 8, p = 101))]
fn tor_dims(bimodule: &str, x: &str, window: usize, p: u64) -> PyResult<Vec<usize>> {
    let m = builtin_bimodule(bimodule, parse_field(p)?).map_err(to_py_err)?;
    let x = module_from_spec(m.left_algebra(), x)?;
    homology::tor_dims(&x, &m, window).map_err(to_py_err)
}

/// Projective dimension of a module over a built-in algebra, as a JSON-style
/// value (an int, "infinite", or "unknown").
#[pyfunction]
#[pyo3(signature = (algebra, x = "regular", cutoff = 24, p = 101, seed = DEFAULT_SEED))]
fn projective_dimension(
    py: Python<'_>,
    algebra: &str,
    x: &str,
    cutoff: usize,
    p: u64,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let a = builtin_algebra(algebra, parse_field(p)?).map_err(to_py_err)?;
    let x = module_from_spec(&a, x)?;
    json_to_py(py, &io::dimension_json(homology::projective_dimension(&x, cutoff, seed)))
}

#[pymodule]
fn cleftlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(algebra_names, m)?)?;
    m.add_function(wrap_pyfunction!(bimodule_names, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_info, m)?)?;
    m.add_function(wrap_pyfunction!(validate_algebra_file, m)?)?;
    m.add_function(wrap_pyfunction!(perfect_report, m)?)?;
    m.add_function(wrap_pyfunction!(gorenstein_report, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_report, m)?)?;
    m.add_function(wrap_pyfunction!(sing_equiv_report, m)?)?;
    m.add_function(wrap_pyfunction!(ehi_probe, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    m.add_function(wrap_pyfunction!(ext_dims, m)?)?;
    m.add_function(wrap_pyfunction!(tor_dims, m)?)?;
    m.add_function(wrap_pyfunction!(projective_dimension, m)?)?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    Ok(())
}
