//! Python bindings: `import tangle_kh`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tangle_kh_core::complex::{BigradedComplex, ComplexError, DEFAULT_CROSSING_CAP};
use tangle_kh_core::diagram::TangleDiagram;
use tangle_kh_core::homology::{betti as betti_table, graded_euler_state_sum, jones_specialization, poincare_polynomial};
use tangle_kh_core::linalg::Field;
use tangle_kh_core::reduction::{self, ReductionError};
use tangle_kh_core::tables::{self, Table};

fn field(name: &str) -> PyResult<Field> {
    name.parse().map_err(PyValueError::new_err)
}

fn complex_err(e: ComplexError) -> PyErr {
    match e {
        ComplexError::CrossingCap { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn reduction_err(e: ReductionError) -> PyErr {
    match e {
        ReductionError::Complex(c) => complex_err(c),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// An oriented planar tangle diagram.
#[pyclass(name = "Tangle", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyTangle {
    inner: TangleDiagram,
}

#[pymethods]
impl PyTangle {
    /// Parses the line notation (`B`, `X+`, `X-`, `X`, `A`, `O` declarations).
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        TangleDiagram::parse(text).map(|inner| PyTangle { inner }).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        TangleDiagram::from_json(text).map(|inner| PyTangle { inner }).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    #[getter]
    fn crossing_count(&self) -> usize {
        self.inner.crossing_count()
    }

    /// `(n_plus, n_minus)`.
    fn crossing_counts(&self) -> (usize, usize) {
        self.inner.crossing_counts()
    }

    #[getter]
    fn arc_count(&self) -> usize {
        self.inner.arc_count()
    }

    #[getter]
    fn free_loops(&self) -> usize {
        self.inner.free_loops()
    }

    #[getter]
    fn boundary(&self) -> Vec<String> {
        self.inner.boundary_points().to_vec()
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    fn has_circles(&self) -> bool {
        self.inner.has_circles()
    }

    fn mirror(&self) -> Self {
        PyTangle { inner: self.inner.mirror() }
    }

    fn disjoint_union(&self, other: &PyTangle) -> Self {
        PyTangle { inner: self.inner.disjoint_union(&other.inner) }
    }

    fn connected_components(&self) -> Vec<PyTangle> {
        self.inner.connected_components().into_iter().map(|inner| PyTangle { inner }).collect()
    }

    fn __str__(&self) -> String {
        self.inner.serialize()
    }

    fn __repr__(&self) -> String {
        let (p, m) = self.inner.crossing_counts();
        format!("Tangle(crossings={}, n_plus={p}, n_minus={m}, arcs={})", self.inner.crossing_count(), self.inner.arc_count())
    }
}

fn build(t: &PyTangle, field_name: &str, max_crossings: usize) -> PyResult<BigradedComplex> {
    BigradedComplex::build_capped(&t.inner, field(field_name)?, max_crossings).map_err(complex_err)
}

/// `{(k, q): dim H^{k,q}}`, nonzero entries only.
#[pyfunction]
#[pyo3(signature = (tangle, field = "Q", max_crossings = DEFAULT_CROSSING_CAP))]
fn betti(py: Python<'_>, tangle: &PyTangle, field: &str, max_crossings: usize) -> PyResult<BTreeMap<(i32, i32), usize>> {
    let c = py.detach(|| build(tangle, field, max_crossings))?;
    Ok(py.detach(|| betti_table(&c).dims))
}

/// Poincaré polynomial as a string such as `"y^-1 + x"`.
#[pyfunction]
#[pyo3(signature = (tangle, field = "Q", max_crossings = DEFAULT_CROSSING_CAP))]
fn poincare(py: Python<'_>, tangle: &PyTangle, field: &str, max_crossings: usize) -> PyResult<String> {
    py.detach(|| {
        let c = build(tangle, field, max_crossings)?;
        Ok(poincare_polynomial(&betti_table(&c)).to_string())
    })
}

/// True iff `P(-1, y)` equals the graded Euler characteristic of the cube.
#[pyfunction]
#[pyo3(signature = (tangle, field = "Q"))]
fn euler_check(py: Python<'_>, tangle: &PyTangle, field: &str) -> PyResult<bool> {
    py.detach(|| {
        let c = build(tangle, field, DEFAULT_CROSSING_CAP)?;
        Ok(jones_specialization(&poincare_polynomial(&betti_table(&c))) == graded_euler_state_sum(&tangle.inner))
    })
}

/// Arc reduction of a simple, circle-free tangle: `([(arc, kind), ...], polynomial)`.
#[pyfunction]
fn reduce(tangle: &PyTangle) -> PyResult<(Vec<(String, &'static str)>, String)> {
    let (trace, p) = reduction::reduce(&tangle.inner).map_err(reduction_err)?;
    let steps = trace.steps.iter().map(|s| (s.arc.to_string(), s.kind.name())).collect();
    Ok((steps, p.to_string()))
}

/// Closed-form Poincaré polynomial of a simple tangle.
#[pyfunction]
fn simple_poincare(arcs: usize, n_plus: usize, n_minus: usize) -> PyResult<String> {
    reduction::simple_poincare(arcs, n_plus, n_minus).map(|p| p.to_string()).map_err(reduction_err)
}

/// `{(k, q): count}` of generators of a simple tangle.
#[pyfunction]
fn generator_expansion(arcs: usize, n_plus: usize, n_minus: usize) -> PyResult<BTreeMap<(i32, i32), u64>> {
    reduction::generator_expansion(arcs, n_plus, n_minus).map(|m| m.counts).map_err(reduction_err)
}

/// A built-in table diagram by name, e.g. `"3_1"` or `"4arcs"`.
#[pyfunction]
fn fixture(name: &str) -> PyResult<PyTangle> {
    let source = tables::fixture_source(name).ok_or_else(|| PyValueError::new_err(format!("no fixture `{name}`")))?;
    PyTangle::new(source)
}

/// Verifies the golden tables (1, 2, or both when `None`); one dict per row.
#[pyfunction]
#[pyo3(signature = (table = None, field = "Q"))]
fn verify_tables<'py>(py: Python<'py>, table: Option<u8>, field: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let which = match table {
        None => None,
        Some(1) => Some(Table::One),
        Some(2) => Some(Table::Two),
        Some(n) => return Err(PyValueError::new_err(format!("no table {n}"))),
    };
    let f = self::field(field)?;
    let reports = py.detach(|| tables::verify_tables(which, f)).map_err(complex_err)?;
    reports
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("table", r.entry.table.number())?;
            d.set_item("type", r.entry.tangle_type)?;
            d.set_item("signs", r.entry.sign_label())?;
            d.set_item("status", r.status.label())?;
            d.set_item("printed", r.entry.printed_poly().to_string())?;
            d.set_item("computed", r.computed.iter().map(ToString::to_string).collect::<Vec<_>>())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
pub fn tangle_kh(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTangle>()?;
    m.add_function(wrap_pyfunction!(betti, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(euler_check, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(simple_poincare, m)?)?;
    m.add_function(wrap_pyfunction!(generator_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    Ok(())
}
