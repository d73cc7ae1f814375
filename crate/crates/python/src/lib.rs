//! Python bindings for `evenset`.
//!
//! Classes are passed as lists of integers in the lattice basis
//! (`H, E1, ..` on the plane, `L1, L2, E1, ..` on the quadric). Reports with
//! nested structure come back as plain dicts mirroring the CLI's JSON.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use evenset::doublecover::{self, Regularity};
use evenset::evenset::EvenSetReport;
use evenset::lattice::{Ambient, DivClass};
use evenset::search::SearchOptions;
use evenset::{catalog, cli};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn regularity(s: Option<&str>) -> PyResult<Regularity> {
    s.map_or(Ok(Regularity::Unknown), |s| s.parse().map_err(value_err))
}

fn classes(curves: Vec<Vec<BigInt>>) -> Vec<DivClass> {
    curves.into_iter().map(DivClass::new).collect()
}

#[pyclass(name = "SurfaceLattice", frozen, skip_from_py_object, module = "evenset_py")]
#[derive(Clone)]
struct PyLattice(evenset::SurfaceLattice);

#[pymethods]
impl PyLattice {
    #[new]
    #[pyo3(signature = (ambient, k))]
    fn new(ambient: &str, k: usize) -> PyResult<Self> {
        let ambient: Ambient = ambient.parse().map_err(value_err)?;
        Ok(PyLattice(evenset::SurfaceLattice::new(ambient, k)))
    }

    #[getter]
    fn ambient(&self) -> &'static str {
        self.0.ambient().name()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn canonical(&self) -> Vec<BigInt> {
        self.0.canonical().into_coeffs()
    }

    fn canonical_square(&self) -> i64 {
        self.0.canonical_square()
    }

    fn gram_matrix(&self) -> Vec<Vec<i64>> {
        self.0.gram_matrix()
    }

    fn pair(&self, a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<BigInt> {
        self.0.pair(&DivClass::new(a), &DivClass::new(b)).map_err(value_err)
    }

    fn square(&self, d: Vec<BigInt>) -> PyResult<BigInt> {
        self.0.square(&DivClass::new(d)).map_err(value_err)
    }

    /// True when `d^2 = -4` and `K.d = 2`.
    fn is_minus_four(&self, d: Vec<BigInt>) -> PyResult<bool> {
        self.0.is_neg_r_class(&DivClass::new(d), 4).map_err(value_err)
    }

    fn format(&self, d: Vec<BigInt>) -> PyResult<String> {
        let d = DivClass::new(d);
        self.0.check(&d).map_err(value_err)?;
        Ok(self.0.format(&d))
    }

    fn __repr__(&self) -> String {
        format!("SurfaceLattice('{}', {})", self.0.ambient().name(), self.0.k())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// A verified even set.
#[pyclass(name = "EvenSet", frozen, module = "evenset_py")]
struct PyEvenSet(EvenSetReport);

#[pymethods]
impl PyEvenSet {
    #[getter]
    fn lattice(&self) -> PyLattice {
        PyLattice(self.0.lattice)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn kx2(&self) -> i64 {
        self.0.kx2
    }

    #[getter]
    fn curves(&self) -> Vec<Vec<BigInt>> {
        self.0.curves.iter().map(|c| c.coeffs().to_vec()).collect()
    }

    #[getter]
    fn half_class(&self) -> Vec<BigInt> {
        self.0.half_class.coeffs().to_vec()
    }

    fn is_anticanonical(&self) -> bool {
        self.0.half_is_anticanonical()
    }

    /// Invariants and verdict for the double cover branched along the set.
    #[pyo3(signature = (regularity = None))]
    fn classify<'py>(&self, py: Python<'py>, regularity: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let c = doublecover::classify_with(&self.0, self::regularity(regularity)?);
        to_py(py, &c)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn __repr__(&self) -> String {
        let l = self.0.lattice;
        format!("EvenSet(n={}, lattice=SurfaceLattice('{}', {}))", self.0.n, l.ambient().name(), l.k())
    }
}

/// Check that `curves` form an even set on `lattice`; raises `ValueError` otherwise.
#[pyfunction]
fn verify_even_set(lattice: &PyLattice, curves: Vec<Vec<BigInt>>) -> PyResult<PyEvenSet> {
    evenset::verify_even_set(&lattice.0, &classes(curves)).map(PyEvenSet).map_err(value_err)
}

/// `(name, description)` for every catalog entry.
#[pyfunction]
fn catalog_list() -> Vec<(&'static str, &'static str)> {
    catalog::list()
}

/// The lattice and curves of a catalog entry.
#[pyfunction]
fn catalog_entry(name: &str) -> PyResult<(PyLattice, Vec<Vec<BigInt>>)> {
    let e = catalog::build(name).map_err(value_err)?;
    Ok((PyLattice(e.lattice), e.curves.iter().map(|c| c.coeffs().to_vec()).collect()))
}

/// Rebuild an entry and compare against its expected invariants and fibres.
#[pyfunction]
fn catalog_check<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let e = catalog::build(name).map_err(value_err)?;
    let c = catalog::check(&e).map_err(value_err)?;
    let d = to_py(py, &c)?;
    d.set_item("passed", c.passed())?;
    Ok(d)
}

#[pyfunction]
fn catalog_export(name: &str) -> PyResult<String> {
    cli::catalog_export(name).map_err(value_err)
}

fn report<'py>(py: Python<'py>, outcome: cli::Outcome) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &outcome.report)
}

/// Same report as `evenset --json verify` on config text.
#[pyfunction]
fn verify_config<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    report(py, cli::verify(text, None))
}

#[pyfunction]
#[pyo3(signature = (text, regularity = None))]
fn classify_config<'py>(py: Python<'py>, text: &str, regularity: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let r = regularity.map(|s| s.parse::<Regularity>().map_err(value_err)).transpose()?;
    report(py, cli::classify(text, None, r))
}

/// Validate, minimalize and classify the fibre sections of config text.
#[pyfunction]
#[pyo3(signature = (text, budget = None))]
fn fiber_config<'py>(py: Python<'py>, text: &str, budget: Option<i64>) -> PyResult<Bound<'py, PyAny>> {
    report(py, cli::fiber(text, None, budget))
}

/// Even sets of `n` (-4)-classes with coefficients bounded by `bound`.
#[pyfunction]
#[pyo3(signature = (ambient, k, bound, n, dedup = true, strict_transforms = false))]
fn search(
    py: Python<'_>,
    ambient: &str,
    k: usize,
    bound: i64,
    n: usize,
    dedup: bool,
    strict_transforms: bool,
) -> PyResult<Vec<Vec<Vec<i64>>>> {
    let mut opts = SearchOptions::new(ambient.parse().map_err(value_err)?, k, bound, n);
    opts.dedup = dedup;
    opts.strict_transforms = strict_transforms;
    py.detach(|| evenset::search::search(&opts)).map(|r| r.sets).map_err(value_err)
}

#[pyfunction]
fn miyaoka_check(n: i64, ks2: i64, c2: i64) -> bool {
    doublecover::miyaoka_check(n, ks2, c2)
}

#[pyfunction]
#[pyo3(signature = (ks2, n, regularity = None))]
fn general_type_feasible(ks2: i64, n: i64, regularity: Option<&str>) -> PyResult<bool> {
    Ok(doublecover::general_type_feasibility(ks2, n, self::regularity(regularity)?).passed)
}

#[pymodule]
pub fn evenset_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PyEvenSet>()?;
    m.add_function(wrap_pyfunction!(verify_even_set, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_list, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entry, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_check, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_export, m)?)?;
    m.add_function(wrap_pyfunction!(verify_config, m)?)?;
    m.add_function(wrap_pyfunction!(classify_config, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_config, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(miyaoka_check, m)?)?;
    m.add_function(wrap_pyfunction!(general_type_feasible, m)?)?;
    Ok(())
}
