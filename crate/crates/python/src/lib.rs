//! Python bindings: polynomials, rule vectors, states, generators and the
//! modeling pipeline.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mpca::automata::{self, CaState, RuleVector};
use mpca::gf2::{self, BitSequence, FieldCtx, Poly};
use mpca::modeler;
use mpca::registers::{self, CcsgConfig, Lfsr, RegisterState, ShrinkConfig};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

// lists of ints rather than `bytes`
fn bits_of(seq: &BitSequence) -> Vec<u32> {
    seq.iter().map(u32::from).collect()
}

fn seed(text: Option<&str>) -> PyResult<Option<RegisterState>> {
    text.map(|s| s.parse().map_err(err)).transpose()
}

#[pyclass(name = "Poly", module = "mpca", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPoly(pub Poly);

#[pymethods]
impl PyPoly {
    /// Parses "x^5+x^2+1" or "0x25@5".
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPoly).map_err(err)
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.deg()
    }

    fn exponents(&self) -> Vec<usize> {
        self.0.exponents()
    }

    fn to_hex(&self) -> String {
        self.0.to_hex_string()
    }

    fn is_irreducible(&self) -> PyResult<bool> {
        gf2::poly_is_irreducible(&self.0).map_err(err)
    }

    fn is_primitive(&self) -> PyResult<bool> {
        gf2::poly_is_primitive(&self.0).map_err(err)
    }

    /// `(base, k)` with `self = base^k`, base irreducible.
    fn irreducible_power(&self) -> PyResult<(PyPoly, u64)> {
        gf2::irreducible_power(&self.0)
            .map(|(b, k)| (PyPoly(b), k))
            .map_err(err)
    }

    fn __mul__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(self.0.mul(&other.0))
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(&self.0 + &other.0)
    }

    fn __pow__(&self, k: u32, _modulo: Option<Py<PyAny>>) -> PyPoly {
        PyPoly(self.0.pow(k as u64))
    }

    fn __mod__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        gf2::poly_mod(&self.0, &other.0).map(PyPoly).map_err(err)
    }

    fn gcd(&self, other: &PyPoly) -> PyResult<PyPoly> {
        gf2::poly_gcd(&self.0, &other.0).map(PyPoly).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

#[pyclass(
    name = "RuleVector",
    module = "mpca",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyRuleVector(pub RuleVector);

#[pymethods]
impl PyRuleVector {
    /// Binary "01111", hex "8C031@20" or words "90 150 150".
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyRuleVector).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn bits(&self) -> Vec<u32> {
        self.0.bits().iter().map(|&b| b as u32).collect()
    }

    fn to_hex(&self) -> String {
        self.0.to_hex()
    }

    fn reversed(&self) -> PyRuleVector {
        PyRuleVector(self.0.reversed())
    }

    fn char_poly(&self) -> PyPoly {
        PyPoly(automata::ca_char_poly(&self.0))
    }

    fn concat_double(&self) -> PyRuleVector {
        PyRuleVector(automata::concat_double(&self.0))
    }

    fn step(&self, state: &PyCaState) -> PyResult<PyCaState> {
        automata::ca_step(&self.0, &state.0)
            .map(PyCaState)
            .map_err(err)
    }

    /// `steps + 1` states starting with `state`.
    fn evolve(&self, state: &PyCaState, steps: usize) -> PyResult<Vec<PyCaState>> {
        automata::evolve(&self.0, &state.0, steps)
            .map(|v| v.into_iter().map(PyCaState).collect())
            .map_err(err)
    }

    #[pyo3(signature = (state, n, cell = 1))]
    fn cell_sequence(&self, state: &PyCaState, n: usize, cell: usize) -> PyResult<Vec<u32>> {
        automata::cell_sequence(&self.0, &state.0, cell, n)
            .map(|s| bits_of(&s))
            .map_err(err)
    }

    /// Initial state whose sequence at `cell` starts with `bits`.
    #[pyo3(signature = (bits, cell = 1))]
    fn embed(&self, bits: Vec<u8>, cell: usize) -> PyResult<PyCaState> {
        automata::embed_sequence_at(&self.0, &BitSequence::from_bits(bits), cell)
            .map(PyCaState)
            .map_err(err)
    }

    /// Cycle census grouped by length and dominant state class.
    #[pyo3(signature = (jobs = 1))]
    fn cycles<'py>(&self, py: Python<'py>, jobs: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let opts = automata::CensusOptions {
            jobs,
            ..Default::default()
        };
        let rows = py
            .detach(|| automata::enumerate_cycles_with(&self.0, opts))
            .map_err(err)?;
        rows.iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("cycle_length", r.cycle_length)?;
                d.set_item("state_class", r.state_class.name())?;
                d.set_item("representative", r.representative.to_hex())?;
                d.set_item("count_of_cycles", r.count_of_cycles)?;
                d.set_item("total_states", r.total_states)?;
                let counts = PyDict::new(py);
                for (c, n) in automata::StateClass::ALL.iter().zip(r.class_counts) {
                    counts.set_item(c.name(), n)?;
                }
                d.set_item("class_counts", counts)?;
                Ok(d)
            })
            .collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RuleVector('{}')", self.0)
    }
}

#[pyclass(
    name = "CaState",
    module = "mpca",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyCaState(pub CaState);

#[pymethods]
impl PyCaState {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyCaState).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn bits(&self) -> Vec<u32> {
        self.0.bits().iter().map(|&b| b as u32).collect()
    }

    fn to_hex(&self) -> String {
        self.0.to_hex()
    }

    fn state_class(&self) -> &'static str {
        automata::classify_state(&self.0).name()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CaState('{}')", self.0)
    }
}

#[pyfunction]
#[pyo3(signature = (poly, bound = automata::DEFAULT_SYNTHESIS_BOUND))]
fn synthesize_ca(poly: &PyPoly, bound: usize) -> PyResult<(PyRuleVector, PyRuleVector)> {
    automata::synthesize_ca_with_bound(&poly.0, bound)
        .map(|(a, b)| (PyRuleVector(a), PyRuleVector(b)))
        .map_err(err)
}

#[pyfunction]
fn build_mpca(poly: &PyPoly, p: u64) -> PyResult<(PyRuleVector, PyRuleVector)> {
    automata::build_mpca(&poly.0, p)
        .map(|(a, b)| (PyRuleVector(a), PyRuleVector(b)))
        .map_err(err)
}

/// `(lc, minimal polynomial)` of a 0/1 sequence.
#[pyfunction]
fn berlekamp_massey(bits: Vec<u8>) -> (usize, PyPoly) {
    let r = gf2::berlekamp_massey(&BitSequence::from_bits(bits));
    (r.lc, PyPoly(r.charpoly))
}

#[pyfunction]
fn min_period(bits: Vec<u8>, bound: usize) -> PyResult<usize> {
    gf2::min_period(&BitSequence::from_bits(bits), bound).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (poly, n, seed = None))]
fn lfsr_bits(poly: &PyPoly, n: usize, seed: Option<&str>) -> PyResult<Vec<u32>> {
    let s = self::seed(seed)?.unwrap_or_else(|| RegisterState::ones(poly.0.deg().unwrap_or(0)));
    let mut r = Lfsr::new(poly.0.clone(), &s).map_err(err)?;
    Ok(bits_of(&registers::lfsr_bits(&mut r, n)))
}

fn shrink_cfg(
    p1: &PyPoly,
    p2: &PyPoly,
    s1: Option<&str>,
    s2: Option<&str>,
) -> PyResult<ShrinkConfig> {
    ShrinkConfig::from_parts(p1.0.clone(), seed(s1)?, p2.0.clone(), seed(s2)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p1, p2, n, s1 = None, s2 = None))]
fn shrink(
    p1: &PyPoly,
    p2: &PyPoly,
    n: usize,
    s1: Option<&str>,
    s2: Option<&str>,
) -> PyResult<Vec<u32>> {
    let cfg = shrink_cfg(p1, p2, s1, s2)?;
    registers::shrink(&cfg, n).map(|s| bits_of(&s)).map_err(err)
}

fn ccsg_cfg(
    p1: &PyPoly,
    p2: &PyPoly,
    df_stages: Vec<usize>,
    df_base: u64,
    s1: Option<&str>,
    s2: Option<&str>,
) -> PyResult<CcsgConfig> {
    CcsgConfig::from_parts(
        p1.0.clone(),
        seed(s1)?,
        p2.0.clone(),
        seed(s2)?,
        df_stages,
        df_base,
    )
    .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p1, p2, n, df_stages = Vec::new(), df_base = 1, s1 = None, s2 = None))]
fn ccsg_generate(
    p1: &PyPoly,
    p2: &PyPoly,
    n: usize,
    df_stages: Vec<usize>,
    df_base: u64,
    s1: Option<&str>,
    s2: Option<&str>,
) -> PyResult<Vec<u32>> {
    let cfg = ccsg_cfg(p1, p2, df_stages, df_base, s1, s2)?;
    registers::ccsg_generate(&cfg, n)
        .map(|s| bits_of(&s))
        .map_err(err)
}

#[pyfunction]
fn cyclotomic_coset(e: u64, l: u32) -> PyResult<Vec<u64>> {
    modeler::cyclotomic_coset(e, l)
        .map(|c| c.members)
        .map_err(err)
}

/// Minimal polynomial of `α^e` in GF(2)[X]/(modulus).
#[pyfunction]
fn coset_char_poly(modulus: &PyPoly, e: u64) -> PyResult<PyPoly> {
    let ctx = FieldCtx::new(modulus.0.clone()).map_err(err)?;
    modeler::coset_char_poly(&ctx, e).map(PyPoly).map_err(err)
}

#[pyfunction]
fn predict_counts(l: u32, p: u32) -> PyResult<(Vec<u128>, u128)> {
    automata::predict_counts(l, p)
        .map(|c| (c.per_class, c.total))
        .map_err(err)
}

#[pyfunction]
fn model_shrinking_generator(
    l1: u32,
    p2: &PyPoly,
) -> PyResult<(PyPoly, PyRuleVector, PyRuleVector, u64)> {
    modeler::model_shrinking_generator(l1, &p2.0)
        .map(|m| {
            (
                PyPoly(m.basic_poly),
                PyRuleVector(m.ca1),
                PyRuleVector(m.ca2),
                m.p,
            )
        })
        .map_err(err)
}

fn kv_dict<'py>(py: Python<'py>, kv: &str) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for line in kv.lines() {
        if let Some((k, v)) = line.split_once('=') {
            d.set_item(k, v)?;
        }
    }
    Ok(d)
}

/// Verification report as a dict of strings (same keys as `--format kv`).
#[pyfunction]
#[pyo3(signature = (p1, p2, rule, s1 = None, s2 = None))]
fn verify_model<'py>(
    py: Python<'py>,
    p1: &PyPoly,
    p2: &PyPoly,
    rule: &PyRuleVector,
    s1: Option<&str>,
    s2: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = shrink_cfg(p1, p2, s1, s2)?;
    let report = py
        .detach(|| modeler::verify_model(&cfg, &rule.0))
        .map_err(err)?;
    let d = kv_dict(py, &report.to_kv())?;
    d.set_item("verdict", report.verdict)?;
    d.set_item("diagnostics", report.diagnostics)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (p1, p2, df_stages = Vec::new(), df_base = 1, s1 = None, s2 = None))]
fn model_ccsg<'py>(
    py: Python<'py>,
    p1: &PyPoly,
    p2: &PyPoly,
    df_stages: Vec<usize>,
    df_base: u64,
    s1: Option<&str>,
    s2: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = ccsg_cfg(p1, p2, df_stages, df_base, s1, s2)?;
    let m = py.detach(|| modeler::model_ccsg(&cfg)).map_err(err)?;
    let d = kv_dict(py, &m.to_kv())?;
    d.set_item("verdict", m.report.verdict)?;
    d.set_item("p", m.p)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "mpca")]
pub fn mpca_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyRuleVector>()?;
    m.add_class::<PyCaState>()?;
    m.add_function(wrap_pyfunction!(synthesize_ca, m)?)?;
    m.add_function(wrap_pyfunction!(build_mpca, m)?)?;
    m.add_function(wrap_pyfunction!(berlekamp_massey, m)?)?;
    m.add_function(wrap_pyfunction!(min_period, m)?)?;
    m.add_function(wrap_pyfunction!(lfsr_bits, m)?)?;
    m.add_function(wrap_pyfunction!(shrink, m)?)?;
    m.add_function(wrap_pyfunction!(ccsg_generate, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_coset, m)?)?;
    m.add_function(wrap_pyfunction!(coset_char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(predict_counts, m)?)?;
    m.add_function(wrap_pyfunction!(model_shrinking_generator, m)?)?;
    m.add_function(wrap_pyfunction!(verify_model, m)?)?;
    m.add_function(wrap_pyfunction!(model_ccsg, m)?)?;
    Ok(())
}
