//! Python module `deltafock`. Exact rationals cross the boundary as
//! `fractions.Fraction`; a Gram entry is the pair `(coeff, radicand)` meaning
//! `coeff * sqrt(radicand) * sqrt(s_max/pi)`.

use num_complex::Complex64;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use deltafock::fock::{self, GramMatrix};
use deltafock::hermite;
use deltafock::limits::{limit_table, LimitQuantity};
use deltafock::verify::{run_suite, Suite};
use deltafock::{DeformationParam, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.numer().clone(), q.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, qs: impl IntoIterator<Item = BigRational>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    qs.into_iter().map(|q| fraction(py, &q)).collect()
}

/// Deformation parameter `delta^2 = 1/s_max`.
#[pyclass(name = "Params", frozen, from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: DeformationParam,
}

#[pymethods]
impl PyParams {
    #[new]
    fn new(s_max: u32) -> PyResult<Self> {
        Ok(PyParams { inner: DeformationParam::new(s_max).map_err(py_err)? })
    }

    #[getter]
    fn s_max(&self) -> u32 {
        self.inner.s_max()
    }

    #[getter]
    fn delta_sq<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.delta_sq())
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta_f64()
    }

    fn __repr__(&self) -> String {
        format!("Params(s_max={})", self.inner.s_max())
    }
}

/// A number state `(-i)^k c P(t) (cos delta phi)^{s_max}`.
#[pyclass(name = "FockState", frozen, from_py_object)]
#[derive(Clone)]
struct PyFockState {
    params: DeformationParam,
    inner: fock::FockState,
}

#[pymethods]
impl PyFockState {
    #[staticmethod]
    fn vacuum(params: &PyParams) -> Self {
        PyFockState { params: params.inner.clone(), inner: fock::vacuum_state(&params.inner) }
    }

    #[staticmethod]
    fn number(params: &PyParams, s: usize) -> PyResult<Self> {
        let mut states = fock::build_states(&params.inner).map_err(py_err)?;
        if s >= states.len() {
            return Err(PyValueError::new_err(format!("s = {s} exceeds s_max = {}", params.inner.s_max())));
        }
        Ok(PyFockState { params: params.inner.clone(), inner: states.swap_remove(s) })
    }

    #[getter]
    fn index(&self) -> i64 {
        self.inner.index()
    }

    /// Coefficients of `P`, lowest power first.
    #[getter]
    fn poly<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.poly().coeffs().iter().cloned())
    }

    /// `k` in the phase `(-i)^k`, reduced mod 4.
    #[getter]
    fn phase_power(&self) -> u8 {
        self.inner.phase_power()
    }

    /// `c^2`, the square of the normalization in front of `P`.
    #[getter]
    fn coefficient_sq<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.coefficient().radicand())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn value(&self, phi: f64) -> Complex64 {
        self.inner.value(&self.params, phi)
    }

    fn annihilate(&self, s: i64) -> PyResult<Self> {
        let inner = fock::apply_annihilation(&self.params, s, &self.inner).map_err(py_err)?;
        Ok(PyFockState { params: self.params.clone(), inner })
    }

    fn create(&self, s: i64) -> PyResult<Self> {
        let inner = fock::apply_creation(&self.params, s, &self.inner).map_err(py_err)?;
        Ok(PyFockState { params: self.params.clone(), inner })
    }

    /// `<self|other>` as `(coeff, radicand)`.
    fn inner<'py>(&self, py: Python<'py>, other: &PyFockState) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let v = fock::inner_product(&self.params, &self.inner, &other.inner).map_err(py_err)?;
        Ok((fraction(py, v.rational())?, fraction(py, v.radicand())?))
    }

    /// True when both states are the same vector (prefactors included).
    fn same_as(&self, other: &PyFockState) -> PyResult<bool> {
        Ok(self.inner.residual_against(&other.inner).map_err(py_err)?.is_zero())
    }

    fn __repr__(&self) -> String {
        format!(
            "FockState(index={}, poly={}, phase_power={})",
            self.inner.index(),
            self.inner.poly(),
            self.inner.phase_power()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (s_max, s, method = "recurrence"))]
fn hermite_delta<'py>(py: Python<'py>, s_max: u32, s: i64, method: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let params = DeformationParam::new(s_max).map_err(py_err)?;
    let poly = match method {
        "recurrence" => hermite::hermite_delta_rec(&params, s),
        "closed" => hermite::hermite_delta_closed(&params, s),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
    .map_err(py_err)?;
    fractions(py, poly.coeffs().iter().cloned())
}

#[pyfunction]
fn hermite_classical<'py>(py: Python<'py>, s: u32) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fractions(py, hermite::hermite_classical(s).coeffs().iter().cloned())
}

fn gram_for(params: &DeformationParam, method: &str) -> PyResult<GramMatrix> {
    match method {
        "exact" => fock::gram_exact(params),
        "recurrence" => fock::gram_recurrence(params, &fock::vacuum_norm_closed(params)),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
    .map_err(py_err)
}

/// Gram matrix as nested lists of `(coeff, radicand)` pairs.
#[pyfunction]
#[pyo3(signature = (s_max, method = "exact"))]
fn gram<'py>(py: Python<'py>, s_max: u32, method: &str) -> PyResult<Bound<'py, PyList>> {
    let params = DeformationParam::new(s_max).map_err(py_err)?;
    let g = gram_for(&params, method)?;
    let rows = PyList::empty(py);
    for s in 0..g.dim() {
        let row = PyList::empty(py);
        for sp in 0..g.dim() {
            let e = g.get(s, sp);
            row.append((fraction(py, e.rational())?, fraction(py, e.radicand())?))?;
        }
        rows.append(row)?;
    }
    Ok(rows)
}

/// Gram matrix as floats, scale included.
#[pyfunction]
#[pyo3(signature = (s_max, method = "exact"))]
fn gram_float(s_max: u32, method: &str) -> PyResult<Vec<Vec<f64>>> {
    let params = DeformationParam::new(s_max).map_err(py_err)?;
    let g = gram_for(&params, method)?;
    Ok((0..g.dim()).map(|s| (0..g.dim()).map(|sp| g.get(s, sp).to_f64()).collect()).collect())
}

/// `(alpha(s)^2, beta(s)^2)`.
#[pyfunction]
fn ladder_coefficients_sq<'py>(
    py: Python<'py>,
    s_max: u32,
    s: i64,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let params = DeformationParam::new(s_max).map_err(py_err)?;
    let c = fock::ladder_coefficients(&params, s).map_err(py_err)?;
    Ok((fraction(py, c.alpha.radicand())?, fraction(py, c.beta.radicand())?))
}

/// Real amplitudes `f_s(phi) / (-i)^s` for every state at each phase.
#[pyfunction]
fn amplitudes(s_max: u32, phis: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    let params = DeformationParam::new(s_max).map_err(py_err)?;
    let states = fock::build_states(&params).map_err(py_err)?;
    Ok(phis.iter().map(|&phi| states.iter().map(|st| st.amplitude(&params, phi)).collect()).collect())
}

/// Runs a verification suite and returns its JSON report as a dict.
#[pyfunction]
#[pyo3(signature = (s_max, suite = "all"))]
fn verify<'py>(py: Python<'py>, s_max: u32, suite: &str) -> PyResult<Bound<'py, PyAny>> {
    let params = DeformationParam::new(s_max).map_err(py_err)?;
    let suite = match suite {
        "algebra" => Suite::Algebra,
        "fock" => Suite::Fock,
        "limits" => Suite::Limits,
        "all" => Suite::All,
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    let report = run_suite(suite, &params).map_err(py_err)?;
    let text = serde_json::to_string(&report.to_json()).expect("serializable");
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// Convergence table: list of `(s_max, [values...])`.
#[pyfunction]
#[pyo3(signature = (quantity, s_max_list, s = 4))]
fn limit(quantity: &str, s_max_list: Vec<u32>, s: u32) -> PyResult<Vec<(u32, Vec<f64>)>> {
    let q = match quantity {
        "hermite" => LimitQuantity::Hermite { s },
        "kernel" => LimitQuantity::Kernel,
        "vacuum_norm" => LimitQuantity::VacuumNorm,
        "gaussian" => LimitQuantity::Gaussian,
        other => return Err(PyValueError::new_err(format!("unknown quantity {other:?}"))),
    };
    Ok(limit_table(q, &s_max_list).map_err(py_err)?.rows)
}

#[pymodule]
#[pyo3(name = "deltafock")]
fn deltafock_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyFockState>()?;
    m.add_function(wrap_pyfunction!(hermite_delta, m)?)?;
    m.add_function(wrap_pyfunction!(hermite_classical, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(gram_float, m)?)?;
    m.add_function(wrap_pyfunction!(ladder_coefficients_sq, m)?)?;
    m.add_function(wrap_pyfunction!(amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(limit, m)?)?;
    Ok(())
}
