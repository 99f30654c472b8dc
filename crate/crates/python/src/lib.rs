//! Python bindings. Partitions, paths and polynomials are wrapped as
//! immutable classes; reports and certificates come back as plain dicts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use setpart_core::motzkin::StepKind;
use setpart_core::partition::BlockWord;
use setpart_core::statistics::{CoordKind, ElementStatistic, StatSum};
use setpart_core::verify::{Suite, VerifyOptions};
use setpart_core as core;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    PyModule::import(py, "json")?.call_method1("loads", (text,))
}

fn stat_value<P: BlockWord + ?Sized>(p: &P, name: &str, l: Option<usize>) -> PyResult<i64> {
    StatSum::parse(name, l).and_then(|s| s.eval(p)).map_err(err)
}

fn stat_dict<P: BlockWord + ?Sized>(p: &P, names: Vec<String>, l: Option<usize>) -> PyResult<BTreeMap<String, i64>> {
    names
        .into_iter()
        .map(|name| stat_value(p, &name, l).map(|v| (name, v)))
        .collect()
}

/// A set partition of `[n]` with blocks ordered by increasing minima.
#[pyclass(name = "SetPartition", module = "setpart", skip_from_py_object, frozen, eq, ord, hash)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PySetPartition(core::SetPartition);

#[pymethods]
impl PySetPartition {
    /// Accepts slash notation (`"1,3/2"`) or a list of blocks.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = value.extract::<String>() {
            return text.parse().map(Self).map_err(err);
        }
        let blocks: Vec<Vec<usize>> = value
            .extract()
            .map_err(|_| PyTypeError::new_err("expected a string or a list of blocks"))?;
        core::SetPartition::from_blocks(&blocks).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_rgf(word: Vec<usize>) -> PyResult<Self> {
        core::SetPartition::from_word(word).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.num_blocks()
    }

    fn blocks(&self) -> Vec<Vec<usize>> {
        self.0.blocks()
    }

    fn rgf(&self) -> Vec<usize> {
        self.0.word().to_vec()
    }

    /// Value of a statistic or a sum such as `"mak+bmaj"`.
    #[pyo3(signature = (name, l=None))]
    fn stat(&self, name: &str, l: Option<usize>) -> PyResult<i64> {
        stat_value(&self.0, name, l)
    }

    #[pyo3(signature = (names=vec!["mak".into(), "makp".into(), "lmak".into(), "lmakp".into()], l=None))]
    fn stats(&self, names: Vec<String>, l: Option<usize>) -> PyResult<BTreeMap<String, i64>> {
        stat_dict(&self.0, names, l)
    }

    /// Per-element row of a coordinate statistic or of `rinv`, `nrinv`,
    /// `linv`; entry `i - 1` belongs to element `i`.
    fn row(&self, name: &str) -> PyResult<Vec<i64>> {
        if let Ok(kind) = name.parse::<CoordKind>() {
            return Ok(core::statistics::coord_row(&self.0, kind));
        }
        ElementStatistic::parse(name).map(|s| s.row(&self.0)).map_err(err)
    }

    fn mak_l(&self, l: usize) -> PyResult<i64> {
        core::statistics::mak_l(&self.0, l).map_err(err)
    }

    fn stat_i(&self, i: usize) -> PyResult<i64> {
        core::statistics::stat_i(&self.0, i).map_err(err)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &core::classify(&self.0))
    }

    /// `(l, gamma)` sequences.
    fn trace(&self) -> (Vec<usize>, Vec<usize>) {
        let t = core::trace_profile(&self.0);
        (t.l, t.gamma)
    }

    fn phi(&self) -> PyResult<Self> {
        core::phi(&self.0).map(Self).map_err(err)
    }

    fn phi_certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let cert = core::phi_with_certificate(&self.0).map_err(err)?;
        to_python(py, &cert)
    }

    fn phi_i(&self, i: usize) -> PyResult<Self> {
        core::phi_i(&self.0, i).map(Self).map_err(err)
    }

    fn motzkin(&self) -> PyMotzkinPath {
        PyMotzkinPath(core::encode(&self.0))
    }

    /// Blocks rearranged by a permutation of `1..=k`.
    fn arrange(&self, order: Vec<usize>) -> PyResult<PyOrderedSetPartition> {
        self.0.arrange(&order).map(PyOrderedSetPartition).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SetPartition('{}')", self.0)
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }
}

/// A set partition whose blocks come in an arbitrary order.
#[pyclass(name = "OrderedSetPartition", module = "setpart", skip_from_py_object, frozen, eq, ord, hash)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyOrderedSetPartition(core::OrderedSetPartition);

#[pymethods]
impl PyOrderedSetPartition {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = value.extract::<String>() {
            return text.parse().map(Self).map_err(err);
        }
        let blocks: Vec<Vec<usize>> = value
            .extract()
            .map_err(|_| PyTypeError::new_err("expected a string or a list of blocks"))?;
        core::OrderedSetPartition::from_blocks(&blocks).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.num_blocks()
    }

    fn blocks(&self) -> Vec<Vec<usize>> {
        self.0.blocks()
    }

    fn word(&self) -> Vec<usize> {
        self.0.word().to_vec()
    }

    fn canonical(&self) -> PySetPartition {
        PySetPartition(self.0.canonical())
    }

    #[pyo3(signature = (name, l=None))]
    fn stat(&self, name: &str, l: Option<usize>) -> PyResult<i64> {
        stat_value(&self.0, name, l)
    }

    #[pyo3(signature = (names=vec!["mak".into(), "makp".into(), "lmak".into(), "lmakp".into(), "bmaj".into()], l=None))]
    fn stats(&self, names: Vec<String>, l: Option<usize>) -> PyResult<BTreeMap<String, i64>> {
        stat_dict(&self.0, names, l)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("OrderedSetPartition('{}')", self.0)
    }
}

/// A polynomial in `q` with integer coefficients.
#[pyclass(name = "QPolynomial", module = "setpart", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyQPolynomial(core::QPolynomial);

#[pymethods]
impl PyQPolynomial {
    /// From text such as `"3*q + q^2"` or a dense coefficient list.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = value.extract::<String>() {
            return text.parse().map(Self).map_err(err);
        }
        let coeffs: Vec<BigInt> = value
            .extract()
            .map_err(|_| PyTypeError::new_err("expected a string or a coefficient list"))?;
        Ok(Self(core::QPolynomial::from_dense(coeffs)))
    }

    /// Dense coefficients, constant term first.
    fn coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    fn coeff(&self, e: usize) -> BigInt {
        self.0.coeff(e)
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval_at_one(&self) -> BigInt {
        self.0.eval_at_one()
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QPolynomial('{}')", self.0)
    }
}

/// A valued Motzkin path; labels are `None` on up steps.
#[pyclass(name = "MotzkinPath", module = "setpart", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyMotzkinPath(core::LabeledMotzkinPath);

#[pymethods]
impl PyMotzkinPath {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    /// `(kind, label, starred)` per step with kind `"NE"`, `"E"` or `"SE"`.
    fn steps(&self) -> Vec<(&'static str, Option<usize>, bool)> {
        self.0
            .steps()
            .iter()
            .map(|s| {
                let kind = match s.kind {
                    StepKind::NE => "NE",
                    StepKind::E => "E",
                    StepKind::SE => "SE",
                };
                let label = (s.kind != StepKind::NE).then_some(s.label);
                (kind, label, s.starred)
            })
            .collect()
    }

    fn heights(&self) -> Vec<usize> {
        self.0.heights()
    }

    fn decode(&self) -> PyResult<PySetPartition> {
        core::decode(&self.0).map(PySetPartition).map_err(err)
    }

    fn reflect(&self) -> PyResult<Self> {
        core::reflect(&self.0).map(Self).map_err(err)
    }

    fn ascii(&self) -> String {
        self.0.render_ascii()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MotzkinPath('{}')", self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Partitions of `[n]` in restricted growth order, all block counts when
/// `k` is omitted.
#[pyfunction]
#[pyo3(signature = (n, k=None))]
fn enumerate(n: usize, k: Option<usize>) -> Vec<PySetPartition> {
    match k {
        Some(k) => core::enumerate_partitions(n, k).map(PySetPartition).collect(),
        None => core::enumerate_all(n).map(PySetPartition).collect(),
    }
}

#[pyfunction]
fn enumerate_ordered(n: usize, k: usize) -> Vec<PyOrderedSetPartition> {
    core::enumerate_ordered(n, k).map(PyOrderedSetPartition).collect()
}

#[pyfunction]
fn bell(n: usize) -> u128 {
    core::bell(n)
}

#[pyfunction]
fn stirling2(n: usize, k: usize) -> u128 {
    core::stirling2(n, k)
}

#[pyfunction]
fn q_int(k: usize) -> PyQPolynomial {
    PyQPolynomial(core::q_int(k))
}

#[pyfunction]
fn q_factorial(k: usize) -> PyQPolynomial {
    PyQPolynomial(core::q_factorial(k))
}

#[pyfunction]
fn q_stirling(n: usize, k: usize) -> PyQPolynomial {
    PyQPolynomial(core::q_stirling(n, k))
}

#[pyfunction]
fn shifted_stirling(n: usize, k: usize) -> PyResult<PyQPolynomial> {
    core::shifted_stirling(n, k).map(PyQPolynomial).map_err(err)
}

/// `sum q^stat` over partitions of `[n]` into `k` blocks, or over ordered
/// ones with `ordered=True`.
#[pyfunction]
#[pyo3(signature = (n, k, statistic, l=None, ordered=false))]
fn generating_function(n: usize, k: usize, statistic: &str, l: Option<usize>, ordered: bool) -> PyResult<PyQPolynomial> {
    let stat = StatSum::parse(statistic, l).map_err(err)?;
    let poly = if ordered {
        core::generating_function(core::enumerate_ordered(n, k), |p| stat.eval(p))
    } else {
        core::generating_function(core::enumerate_partitions(n, k), |p| stat.eval(p))
    };
    poly.map(PyQPolynomial).map_err(err)
}

#[pyfunction]
fn phi(p: &PySetPartition) -> PyResult<PySetPartition> {
    p.phi()
}

#[pyfunction]
fn phi_i(p: &PySetPartition, i: usize) -> PyResult<PySetPartition> {
    p.phi_i(i)
}

#[pyfunction]
fn encode(p: &PySetPartition) -> PyMotzkinPath {
    p.motzkin()
}

#[pyfunction]
fn decode(path: &PyMotzkinPath) -> PyResult<PySetPartition> {
    path.decode()
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

/// Runs one verification suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, n_max=None, max_witnesses=10, threads=1))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    n_max: Option<usize>,
    max_witnesses: usize,
    threads: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let opts = VerifyOptions {
        n_max,
        max_witnesses,
        threads,
    };
    let report = py.detach(|| setpart_core::verify::run(suite, &opts)).map_err(err)?;
    to_python(py, &report)
}

#[pymodule]
fn setpart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySetPartition>()?;
    m.add_class::<PyOrderedSetPartition>()?;
    m.add_class::<PyQPolynomial>()?;
    m.add_class::<PyMotzkinPath>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_ordered, m)?)?;
    m.add_function(wrap_pyfunction!(bell, m)?)?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(q_int, m)?)?;
    m.add_function(wrap_pyfunction!(q_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(q_stirling, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_stirling, m)?)?;
    m.add_function(wrap_pyfunction!(generating_function, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_i, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
