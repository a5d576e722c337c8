use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use weaves::census::CensusConfig;
use weaves::{CrossingMatrix, Move, WeaveError};

fn err(e: WeaveError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts anything serializable into native Python objects via JSON.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A weaving diagram: `rows[i][j] == 1` when warp `i` passes over weft `j`.
#[pyclass(name = "Weave", module = "pyweaves", eq, hash, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWeave {
    inner: CrossingMatrix,
}

impl From<CrossingMatrix> for PyWeave {
    fn from(inner: CrossingMatrix) -> Self {
        PyWeave { inner }
    }
}

#[pymethods]
impl PyWeave {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        CrossingMatrix::new(&rows).map(Into::into).map_err(err)
    }

    /// Parses the text form, e.g. `"01/10"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        weaves::parse_matrix(text).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        weaves::WeaveDocument::from_json(text)
            .map(|d| d.matrix.into())
            .map_err(err)
    }

    fn to_json(&self) -> String {
        weaves::WeaveDocument::new(self.inner.clone()).to_json()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<u32>> {
        self.inner
            .to_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(u32::from).collect())
            .collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Weave.parse({:?})", self.inner.to_string())
    }

    fn fingerprint<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.fingerprint())
    }

    /// Applies one move given as a dict, e.g. `{"op": "swap_warps", "i": 1}`
    /// (1-based) or `{"op": "translate", "a": 1, "b": 0}`.
    fn apply(&self, py: Python<'_>, mv: &Bound<'_, PyAny>) -> PyResult<Self> {
        let text: String = py
            .import("json")?
            .call_method1("dumps", (mv,))?
            .extract()?;
        let mv: Move = serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        self.inner.apply(mv).map(Into::into).map_err(err)
    }

    fn transpose_dual(&self) -> Self {
        self.inner.transpose_dual().into()
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    fn reflect_warps(&self) -> Self {
        self.inner.reflect_warps().into()
    }

    fn reflect_wefts(&self) -> Self {
        self.inner.reflect_wefts().into()
    }

    /// Returns `(canonical, orbit_size)`.
    fn canonical_form(&self) -> PyResult<(Self, usize)> {
        let f = weaves::canonical_form(&self.inner).map_err(err)?;
        Ok((f.matrix.into(), f.orbit_size))
    }

    fn homeo_canonical_form(&self) -> PyResult<(Self, usize)> {
        let f = weaves::homeo_canonical_form(&self.inner).map_err(err)?;
        Ok((f.matrix.into(), f.orbit_size))
    }

    #[pyo3(signature = (cap=None))]
    fn orbit(&self, cap: Option<usize>) -> PyResult<Vec<Self>> {
        let o = weaves::orbit(&self.inner, cap).map_err(err)?;
        let mut members = o.members().to_vec();
        members.sort();
        Ok(members.into_iter().map(Into::into).collect())
    }

    fn is_isotopic(&self, other: &Self) -> PyResult<bool> {
        weaves::is_isotopic(&self.inner, &other.inner).map_err(err)
    }

    /// Moves taking this diagram to `other`, as a list of dicts.
    fn isotopy_witness<'py>(&self, py: Python<'py>, other: &Self) -> PyResult<Bound<'py, PyAny>> {
        let moves = weaves::isotopy_witness(&self.inner, &other.inner).map_err(err)?;
        to_py(py, &moves)
    }

    /// Returns `(layered, layers)` with layers listed bottom to top.
    fn is_layered(&self) -> PyResult<(bool, Vec<Vec<String>>)> {
        let v = weaves::is_layered(&self.inner).map_err(err)?;
        let layers = v
            .layers
            .iter()
            .map(|l| l.iter().map(ToString::to_string).collect())
            .collect();
        Ok((v.layered, layers))
    }

    fn is_hyperbolic(&self) -> bool {
        weaves::is_hyperbolic(&self.inner).is_hyperbolic()
    }

    /// Full verdict: `{"verdict", "witness", "volume_upper_bound"}`.
    fn verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &weaves::is_hyperbolic(&self.inner).to_json(&self.inner))
    }

    fn jsj_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = weaves::jsj_report(&self.inner).map_err(err)?;
        to_py(py, &report.pieces)
    }

    fn volume_upper_bound(&self) -> f64 {
        weaves::volume_upper_bound(&self.inner)
    }

    #[pyo3(signature = (style="ascii"))]
    fn render(&self, style: &str) -> PyResult<String> {
        let style = style.parse().map_err(PyValueError::new_err)?;
        Ok(weaves::render(&weaves::WeaveDocument::new(self.inner.clone()), style))
    }
}

#[pyfunction]
fn plain(m: usize, n: usize) -> PyResult<PyWeave> {
    weaves::plain(m, n).map(|d| d.matrix.into()).map_err(err)
}

#[pyfunction]
fn twill(m: usize, n: usize, over: usize, under: usize) -> PyResult<PyWeave> {
    weaves::twill(m, n, over, under)
        .map(|d| d.matrix.into())
        .map_err(err)
}

#[pyfunction]
fn satin(n: usize, step: usize) -> PyResult<PyWeave> {
    weaves::satin(n, step).map(|d| d.matrix.into()).map_err(err)
}

/// Census row for `m x n` as a dict keyed by the CSV column names.
#[pyfunction]
#[pyo3(signature = (m, n, jobs=None))]
fn census<'py>(py: Python<'py>, m: usize, n: usize, jobs: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let config = CensusConfig {
        jobs,
        ..Default::default()
    };
    let row = py
        .detach(|| weaves::census_with(m, n, &config))
        .map_err(err)?;
    to_py(py, &row)
}

#[pyfunction]
fn volume_bound(m: usize, n: usize) -> f64 {
    weaves::volume_bound(m, n)
}

#[pymodule]
fn pyweaves(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_class::<PyWeave>()?;
    module.add_function(wrap_pyfunction!(plain, module)?)?;
    module.add_function(wrap_pyfunction!(twill, module)?)?;
    module.add_function(wrap_pyfunction!(satin, module)?)?;
    module.add_function(wrap_pyfunction!(census, module)?)?;
    module.add_function(wrap_pyfunction!(volume_bound, module)?)?;
    module.add("V_OCT", weaves::V_OCT)?;
    Ok(())
}
