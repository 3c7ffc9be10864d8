//! Python bindings: corpus generation, trusty codes, validation and the
//! competency questions. Structured results cross as JSON and are decoded
//! with the standard `json` module, so field names match the HTTP API.

use std::collections::HashMap;
use std::path::PathBuf;

use linkflows_core::linkflows::{generate_corpus, CorpusSpec};
use linkflows_core::nanopub::{self, make_trusty as trusty};
use linkflows_core::rdf::parse_trig;
use linkflows_core::store::{
    read_nanopubs, write_nanopubs, CommentFilter, Cq6Mode, CqQuestion, QuadStore, StoreError,
};
use linkflows_core::{Iri, Nanopublication};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn store_error(e: StoreError) -> PyErr {
    match e {
        StoreError::UnknownArticle(_) => PyKeyError::new_err(e.to_string()),
        e => value_error(e),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn parse_one(trig: &str) -> Result<Nanopublication, String> {
    let quads = parse_trig(trig).map_err(|e| e.to_string())?;
    Nanopublication::from_quads(quads).map_err(|e| e.to_string())
}

fn question(n: u8, threshold: u8, mode: &str) -> Result<CqQuestion, String> {
    let mode = match mode {
        "compulsory" => Cq6Mode::Compulsory,
        "negative-compulsory" => Cq6Mode::NegativeCompulsory,
        other => return Err(format!("unknown mode {other}")),
    };
    CqQuestion::new(n, threshold, mode)
        .ok_or_else(|| format!("no competency question {n} with threshold {threshold}"))
}

fn trusty_trig(trig: &str, base: &str) -> Result<String, String> {
    let n = parse_one(trig)?;
    let base = Iri::new(base).map_err(|e| e.to_string())?;
    trusty(&n, &base)
        .map(|p| p.to_trig())
        .map_err(|e| e.to_string())
}

fn violated_rules(trig: &str) -> Result<Vec<String>, String> {
    let n = parse_one(trig)?;
    Ok(nanopub::validate(&n)
        .violations
        .iter()
        .map(|v| v.rule.id().to_owned())
        .collect())
}

/// Writes the corpus for `seed` to `out` as one TriG file per
/// nanopublication and returns its statistics.
#[pyfunction]
#[pyo3(signature = (out, seed = 42))]
fn gen_corpus<'py>(py: Python<'py>, out: PathBuf, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let corpus = generate_corpus(&CorpusSpec::with_seed(seed)).map_err(value_error)?;
    std::fs::create_dir_all(&out).map_err(value_error)?;
    write_nanopubs(&out, &corpus.nanopubs).map_err(store_error)?;
    let store = QuadStore::load(corpus.nanopubs).map_err(store_error)?;
    to_py(
        py,
        &serde_json::to_value(store.stats()).map_err(value_error)?,
    )
}

/// Returns the trusty version of a TriG nanopublication, as TriG.
#[pyfunction]
#[pyo3(signature = (trig, base = "https://w3id.org/np/"))]
fn make_trusty(trig: &str, base: &str) -> PyResult<String> {
    trusty_trig(trig, base).map_err(value_error)
}

/// True if the nanopublication's URI carries a matching artifact code.
#[pyfunction]
fn verify(trig: &str) -> PyResult<bool> {
    let n = parse_one(trig).map_err(value_error)?;
    Ok(nanopub::verify_trusty(&n) == Ok(true))
}

#[pyfunction]
fn artifact_code(trig: &str) -> PyResult<Option<String>> {
    let n = parse_one(trig).map_err(value_error)?;
    Ok(n.artifact_code().map(|c| c.as_str().to_owned()))
}

/// Rule ids of every violated well-formedness rule; empty if valid.
#[pyfunction]
fn validate(trig: &str) -> PyResult<Vec<String>> {
    violated_rules(trig).map_err(value_error)
}

#[pyclass(frozen)]
struct Store {
    inner: QuadStore,
}

#[pymethods]
impl Store {
    /// Loads a TriG/N-Quads file or a directory of them.
    #[new]
    fn new(path: PathBuf) -> PyResult<Self> {
        let nanopubs = read_nanopubs(&path).map_err(store_error)?;
        Ok(Store {
            inner: QuadStore::load(nanopubs).map_err(store_error)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (seed = 42))]
    fn from_seed(seed: u64) -> PyResult<Self> {
        let corpus = generate_corpus(&CorpusSpec::with_seed(seed)).map_err(value_error)?;
        Ok(Store {
            inner: QuadStore::load(corpus.nanopubs).map_err(store_error)?,
        })
    }

    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(
            py,
            &serde_json::to_value(self.inner.stats()).map_err(value_error)?,
        )
    }

    fn articles<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(
            py,
            &serde_json::to_value(self.inner.domain().articles()).map_err(value_error)?,
        )
    }

    /// Payload of question `n` for `article`: `{question, article, alias, result}`.
    #[pyo3(signature = (article, n, threshold = 4, mode = "compulsory"))]
    fn cq<'py>(
        &self,
        py: Python<'py>,
        article: &str,
        n: u8,
        threshold: u8,
        mode: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let q = question(n, threshold, mode).map_err(value_error)?;
        to_py(py, &self.inner.cq_payload(article, q).map_err(store_error)?)
    }

    #[pyo3(signature = (article, n, threshold = 4, mode = "compulsory"))]
    fn cq_text(&self, article: &str, n: u8, threshold: u8, mode: &str) -> PyResult<String> {
        let q = question(n, threshold, mode).map_err(value_error)?;
        self.inner.cq_text(article, q).map_err(store_error)
    }

    /// Comments matching the given filters, e.g. `positivity="negative"`.
    #[pyo3(signature = (**filters))]
    fn comments<'py>(
        &self,
        py: Python<'py>,
        filters: Option<HashMap<String, String>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let filters = filters.unwrap_or_default();
        let filter =
            CommentFilter::from_pairs(filters.iter().map(|(k, v)| (k.as_str(), v.as_str())))
                .map_err(store_error)?;
        let list = self.inner.comments(&filter).map_err(store_error)?;
        to_py(py, &serde_json::to_value(list).map_err(value_error)?)
    }
}

#[pymodule]
fn linkflows(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gen_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(make_trusty, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(artifact_code, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_class::<Store>()?;
    Ok(())
}
