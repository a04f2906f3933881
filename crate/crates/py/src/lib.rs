//! Python bindings. Rationals cross the boundary as "p/q" strings; composite
//! results come back as plain dicts and lists.

use gieseker_core::charts::{self, verify_charts};
use gieseker_core::semistability::{counterexample_gl2, schmitt_slope, tf_semistability_verdict};
use gieseker_core::{
    fiber_description, ApartmentPoint, BalancedWeights, CyclicType, Error, LacedBundleData, Lacing, McKayData, Mode,
    Rational, RepresentationWeights, WeightedFiltration,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvariantViolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_point(coords: Vec<String>) -> PyResult<ApartmentPoint> {
    coords
        .iter()
        .map(|s| s.parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .map(ApartmentPoint::new)
        .map_err(py_err)
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(Rational::to_string).collect()
}

/// Serializes through JSON so nested results arrive as dicts and lists.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

#[pyclass(name = "RootDatum", frozen)]
struct PyRootDatum(gieseker_core::RootDatum);

#[pymethods]
impl PyRootDatum {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        gieseker_core::RootDatum::from_label(label).map(PyRootDatum).map_err(py_err)
    }

    #[getter]
    fn lie_type(&self) -> String {
        self.0.lie_type.to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.0.cartan.clone()
    }

    #[getter]
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.0.positive_roots.clone()
    }

    #[getter]
    fn highest_root(&self) -> Vec<i64> {
        self.0.highest_root_coeffs.clone()
    }

    #[getter]
    fn coxeter_number(&self) -> i64 {
        self.0.coxeter_number
    }

    fn alcove_vertices(&self) -> Vec<Vec<String>> {
        self.0.alcove_vertices().iter().map(|v| strings(v.coords())).collect()
    }

    fn in_alcove(&self, point: Vec<String>) -> PyResult<bool> {
        self.0.in_alcove(&parse_point(point)?).map_err(py_err)
    }

    fn basic_affine_roots(&self, point: Vec<String>) -> PyResult<Vec<String>> {
        Ok(strings(&self.0.basic_affine_roots(&parse_point(point)?).map_err(py_err)?))
    }

    /// Dict with `members`, `index`, `barycenter` and `denominator`.
    fn facet<'py>(&self, py: Python<'py>, members: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.facet(&members).map_err(py_err)?)
    }

    /// List of `(root, m_r)` pairs.
    fn parahoric_indices(&self, points: Vec<Vec<String>>) -> PyResult<Vec<(Vec<i64>, i64)>> {
        let pts = points.into_iter().map(parse_point).collect::<PyResult<Vec<_>>>()?;
        Ok(self.0.parahoric_indices(&pts).map_err(py_err)?.into_iter().collect())
    }

    fn __repr__(&self) -> String {
        format!("RootDatum('{}')", self.0.lie_type)
    }
}

#[pyclass(name = "CyclicType", frozen)]
struct PyCyclicType(CyclicType);

#[pymethods]
impl PyCyclicType {
    #[new]
    fn new(d: i64, a: Vec<i64>) -> PyResult<Self> {
        CyclicType::new(d, a).map(PyCyclicType).map_err(py_err)
    }

    #[getter]
    fn d(&self) -> i64 {
        self.0.d()
    }

    #[getter]
    fn a(&self) -> Vec<i64> {
        self.0.a().to_vec()
    }

    fn weight(&self) -> Vec<String> {
        strings(self.0.type_to_weight().coords())
    }

    fn balanced_dual(&self) -> PyCyclicType {
        PyCyclicType(self.0.balanced_dual())
    }

    fn order(&self, rd: &PyRootDatum) -> PyResult<i64> {
        self.0.order(&rd.0).map_err(py_err)
    }

    fn is_injective(&self, rd: &PyRootDatum) -> PyResult<bool> {
        self.0.is_injective(&rd.0).map_err(py_err)
    }

    fn is_admissible(&self, rd: &PyRootDatum) -> PyResult<bool> {
        self.0.is_admissible(&rd.0).map_err(py_err)
    }

    /// Residues of the adjoint representation's weights.
    fn push_adjoint(&self, rd: &PyRootDatum) -> PyResult<Vec<i64>> {
        self.0.push_type(&RepresentationWeights::adjoint(&rd.0)).map_err(py_err)
    }

    fn fibers<'py>(&self, py: Python<'py>, rd: &PyRootDatum) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &fiber_description(&rd.0, &self.0).map_err(py_err)?)
    }

    fn __eq__(&self, other: &PyCyclicType) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("CyclicType{}", self.0)
    }
}

#[pyclass(name = "LacedBundle", frozen)]
struct PyLacedBundle(LacedBundleData);

#[pymethods]
impl PyLacedBundle {
    /// `weights` uses the "0:1,1/2:3" weight:multiplicity syntax.
    #[new]
    #[pyo3(signature = (deg, weights, lacing = "full"))]
    fn new(deg: i64, weights: &str, lacing: &str) -> PyResult<Self> {
        let lacing = match lacing {
            "full" => Lacing::Full,
            "uni" => Lacing::Uni,
            other => return Err(PyValueError::new_err(format!("unknown lacing {other:?}"))),
        };
        let w = BalancedWeights::parse(weights).map_err(py_err)?;
        Ok(PyLacedBundle(LacedBundleData::new(deg, w, lacing)))
    }

    fn par_deg(&self) -> PyResult<String> {
        Ok(self.0.try_par_deg().map_err(py_err)?.to_string())
    }

    fn par_deg_by_definition(&self) -> String {
        self.0.par_deg_by_definition().to_string()
    }

    fn dual_weights(&self) -> Vec<String> {
        strings(&self.0.weights.dual_weights())
    }

    #[getter]
    fn l(&self) -> u64 {
        self.0.weights.l()
    }
}

#[pyclass(name = "WeightedFiltration", frozen, from_py_object)]
#[derive(Clone)]
struct PyWeightedFiltration(WeightedFiltration);

#[pymethods]
impl PyWeightedFiltration {
    #[new]
    fn new(gammas: Vec<i64>, ranks: Vec<u64>, degrees: Vec<String>, total_deg: &str) -> PyResult<Self> {
        let degrees = degrees
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Rational>, _>>()
            .map_err(py_err)?;
        let total = total_deg.parse().map_err(py_err)?;
        WeightedFiltration::new(gammas, ranks, degrees, total)
            .map(PyWeightedFiltration)
            .map_err(py_err)
    }

    fn slope(&self) -> String {
        schmitt_slope(&self.0).to_string()
    }

    fn scaled(&self, m: i64) -> PyResult<PyWeightedFiltration> {
        self.0.scaled(m).map(PyWeightedFiltration).map_err(py_err)
    }

    fn translated(&self, c: i64) -> PyWeightedFiltration {
        PyWeightedFiltration(self.0.translated(c))
    }
}

/// Verdict dict over a batch of filtrations; `mode` is "semi" or "stable".
#[pyfunction]
#[pyo3(signature = (filtrations, mode = "semi"))]
fn verdict<'py>(
    py: Python<'py>,
    filtrations: Vec<PyWeightedFiltration>,
    mode: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let mode: Mode = mode.parse().map_err(py_err)?;
    let fs: Vec<WeightedFiltration> = filtrations.into_iter().map(|f| f.0).collect();
    to_py(py, &tf_semistability_verdict(&fs, mode))
}

#[pyfunction]
fn mckay(py: Python<'_>, d: i64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &McKayData::new(d).map_err(py_err)?)
}

#[pyfunction]
fn counterexample(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &counterexample_gl2())
}

/// Exponent matrix of the transition from chart `ell` to chart `ell + 1`.
#[pyfunction]
fn transition_z(ell: usize, d: usize) -> PyResult<Vec<Vec<i64>>> {
    Ok(charts::transition_z(ell, d).map_err(py_err)?.exponents().to_vec())
}

#[pyfunction]
fn gm_weights(ell: usize, d: usize) -> PyResult<Vec<Vec<i64>>> {
    charts::gm_weights(ell, d).map_err(py_err)
}

/// List of `(name, pass)` for every chart identity.
#[pyfunction]
fn check_charts(d: usize) -> PyResult<Vec<(String, bool)>> {
    Ok(verify_charts(d).map_err(py_err)?.into_iter().map(|c| (c.name, c.pass)).collect())
}

#[pymodule]
fn gieseker(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyCyclicType>()?;
    m.add_class::<PyLacedBundle>()?;
    m.add_class::<PyWeightedFiltration>()?;
    m.add_function(wrap_pyfunction!(verdict, m)?)?;
    m.add_function(wrap_pyfunction!(mckay, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(transition_z, m)?)?;
    m.add_function(wrap_pyfunction!(gm_weights, m)?)?;
    m.add_function(wrap_pyfunction!(check_charts, m)?)?;
    Ok(())
}
