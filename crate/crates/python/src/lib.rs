//! Python bindings for the stability analyzer.
//!
//! Exact quantities come back as `fractions.Fraction`, float ones as `float`.
//! An orbit is exact unless one of its inputs is a Python `float` (or
//! `exact=False` is passed).

use lagstab::geometry::{metric_hyperbolic, volume_euclidean, volume_hyperbolic};
use lagstab::oracle::{
    laplacian_comparison_check, second_variation_quadrature, second_variation_scale, second_variation_spectral,
    minimum_grid, Phase, TrigMonomial,
};
use lagstab::scalar::parse_rational;
use lagstab::stability::{mode_bound, q_form, unstable_triple, volume_minimizing_predicate};
use lagstab::{analyze_with, AnalyzeOptions, Mode, OrbitSpec, Rational, Scalar, StabilityReport, Value};
use num::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyList, PyString};

fn err(e: lagstab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

enum Input {
    Exact(Rational),
    Float(f64),
}

impl Input {
    fn extract(obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        if obj.is_instance_of::<PyFloat>() {
            return Ok(Input::Float(obj.extract()?));
        }
        if obj.is_instance_of::<PyString>() {
            return parse_rational(&obj.extract::<String>()?).map(Input::Exact).map_err(err);
        }
        if let Ok(i) = obj.extract::<BigInt>() {
            return Ok(Input::Exact(Rational::from_integer(i)));
        }
        // Fraction and anything else with integer numerator/denominator
        if let (Ok(p), Ok(q)) = (obj.getattr("numerator"), obj.getattr("denominator")) {
            let (p, q): (BigInt, BigInt) = (p.extract()?, q.extract()?);
            return Ok(Input::Exact(Rational::new(p, q)));
        }
        Err(PyValueError::new_err(format!("cannot read {obj} as a number")))
    }

    fn exact(&self) -> Option<&Rational> {
        match self {
            Input::Exact(q) => Some(q),
            Input::Float(_) => None,
        }
    }

    fn float(&self) -> f64 {
        match self {
            Input::Exact(q) => lagstab::scalar::ratio_to_f64(q),
            Input::Float(x) => *x,
        }
    }
}

#[derive(Clone)]
enum Inner {
    Exact(OrbitSpec<Rational>),
    Float(OrbitSpec<f64>),
}

macro_rules! with_orbit {
    ($inner:expr, $o:ident => $body:expr) => {
        match $inner {
            Inner::Exact($o) => $body,
            Inner::Float($o) => $body,
        }
    };
}

fn value_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    match v {
        Value::Exact(q) => {
            let fraction = py.import("fractions")?.getattr("Fraction")?;
            Ok(fraction.call1((q.numer().clone(), q.denom().clone()))?.unbind())
        }
        Value::Float(x) => Ok(x.into_pyobject(py)?.into_any().unbind()),
    }
}

fn values_py<S: Scalar>(py: Python<'_>, xs: &[S]) -> PyResult<Vec<PyObject>> {
    xs.iter().map(|x| value_py(py, &x.to_value())).collect()
}

fn mode_of(entries: Vec<i64>) -> PyResult<Mode> {
    Mode::new(entries).map_err(err)
}

fn phase_of(phase: &str) -> PyResult<Phase> {
    match phase {
        "cos" => Ok(Phase::Cos),
        "sin" => Ok(Phase::Sin),
        other => Err(PyValueError::new_err(format!("phase must be 'cos' or 'sin', got {other:?}"))),
    }
}

fn report_dict<'py>(py: Python<'py>, r: &StabilityReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("verdict", r.verdict.to_string())?;
    d.set_item("stable", r.verdict.is_stable())?;
    d.set_item("certified", r.verdict.is_certified())?;
    match &r.witness {
        Some(w) => {
            let wd = PyDict::new(py);
            wd.set_item("mode", w.mode.entries().to_vec())?;
            wd.set_item("q", value_py(py, &w.q)?)?;
            d.set_item("witness", wd)?;
        }
        None => d.set_item("witness", py.None())?,
    }
    let nulls: Vec<Vec<i64>> = r.null_modes.iter().map(|m| m.entries().to_vec()).collect();
    d.set_item("null_modes", PyList::new(py, nulls)?)?;
    d.set_item("enumeration_bound", value_py(py, &r.enumeration_bound)?)?;
    d.set_item("modes_checked", r.modes_checked)?;
    d.set_item("rigid", r.rigid)?;
    d.set_item("volume_minimizing", r.volume_minimizing.to_string())?;
    d.set_item("arithmetic_track", r.arithmetic_track.to_string())?;
    d.set_item("min_q", value_py(py, &r.min_q)?)?;
    d.set_item("regime", r.regime.to_string())?;
    d.set_item("beyond_known_results", r.beyond_known_results())?;
    Ok(d)
}

/// A Lagrangian torus orbit in complex hyperbolic space.
#[pyclass(name = "Orbit", module = "lagstab_py", frozen)]
#[derive(Clone)]
struct PyOrbit {
    inner: Inner,
}

#[pymethods]
impl PyOrbit {
    /// Orbit with squared moment coordinates `simplex` (summing to 1) at
    /// `tanh²r = t`.
    #[staticmethod]
    #[pyo3(signature = (simplex, t, exact = None))]
    fn from_simplex(simplex: Vec<Bound<'_, PyAny>>, t: Bound<'_, PyAny>, exact: Option<bool>) -> PyResult<Self> {
        let s: Vec<Input> = simplex.iter().map(Input::extract).collect::<PyResult<_>>()?;
        let t = Input::extract(&t)?;
        let all_exact = t.exact().is_some() && s.iter().all(|x| x.exact().is_some());
        let n = s.len();
        let inner = if exact.unwrap_or(all_exact) {
            if !all_exact {
                return Err(PyValueError::new_err("exact=True needs int, str or Fraction inputs"));
            }
            let s: Vec<Rational> = s.iter().map(|x| x.exact().cloned().unwrap()).collect();
            Inner::Exact(OrbitSpec::from_simplex(n, t.exact().cloned().unwrap(), &s).map_err(err)?)
        } else {
            let s: Vec<f64> = s.iter().map(Input::float).collect();
            Inner::Float(OrbitSpec::from_simplex(n, t.float(), &s).map_err(err)?)
        };
        Ok(Self { inner })
    }

    /// Orbit through the torus with the given Euclidean radii in the ball.
    /// Exact inputs are read as exact radii.
    #[staticmethod]
    #[pyo3(signature = (radii, exact = None))]
    fn from_radii(radii: Vec<Bound<'_, PyAny>>, exact: Option<bool>) -> PyResult<Self> {
        let r: Vec<Input> = radii.iter().map(Input::extract).collect::<PyResult<_>>()?;
        let all_exact = r.iter().all(|x| x.exact().is_some());
        let n = r.len();
        let inner = if exact.unwrap_or(all_exact) {
            if !all_exact {
                return Err(PyValueError::new_err("exact=True needs int, str or Fraction inputs"));
            }
            let r: Vec<Rational> = r.iter().map(|x| x.exact().cloned().unwrap()).collect();
            Inner::Exact(OrbitSpec::from_radii(n, &r).map_err(err)?)
        } else {
            let r: Vec<f64> = r.iter().map(Input::float).collect();
            Inner::Float(OrbitSpec::from_radii(n, &r).map_err(err)?)
        };
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        with_orbit!(&self.inner, o => o.n())
    }

    #[getter]
    fn exact(&self) -> bool {
        matches!(self.inner, Inner::Exact(_))
    }

    #[getter]
    fn simplex(&self, py: Python<'_>) -> PyResult<Vec<PyObject>> {
        with_orbit!(&self.inner, o => values_py(py, o.simplex()))
    }

    #[getter]
    fn radii_sq(&self, py: Python<'_>) -> PyResult<Vec<PyObject>> {
        with_orbit!(&self.inner, o => values_py(py, o.radii_sq()))
    }

    #[getter]
    fn tanh_sq(&self, py: Python<'_>) -> PyResult<PyObject> {
        with_orbit!(&self.inner, o => value_py(py, &o.tanh_sq().to_value()))
    }

    #[getter]
    fn geodesic_radius(&self) -> f64 {
        with_orbit!(&self.inner, o => o.geodesic_radius())
    }

    /// Same orbit on the float track.
    fn to_float(&self) -> Self {
        let inner = with_orbit!(&self.inner, o => Inner::Float(o.to_float()));
        Self { inner }
    }

    /// Full stability analysis as a dict.
    #[pyo3(signature = (bound = None, zero_band = lagstab::stability::DEFAULT_ZERO_BAND))]
    fn analyze<'py>(
        &self,
        py: Python<'py>,
        bound: Option<Bound<'py, PyAny>>,
        zero_band: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let bound = bound.as_ref().map(Input::extract).transpose()?;
        let report = match &self.inner {
            Inner::Exact(o) => {
                let bound_override = match &bound {
                    None => None,
                    Some(Input::Exact(q)) => Some(q.clone()),
                    Some(Input::Float(x)) => {
                        Some(Rational::from_float(*x).ok_or_else(|| PyValueError::new_err("bound must be finite"))?)
                    }
                };
                analyze_with(o, &AnalyzeOptions { bound_override, zero_band })
            }
            Inner::Float(o) => {
                let bound_override = bound.as_ref().map(Input::float);
                analyze_with(o, &AnalyzeOptions { bound_override, zero_band })
            }
        }
        .map_err(err)?;
        report_dict(py, &report)
    }

    /// Value of the stability form on the Fourier mode `m`.
    fn q(&self, py: Python<'_>, mode: Vec<i64>) -> PyResult<PyObject> {
        let m = mode_of(mode)?;
        with_orbit!(&self.inner, o => value_py(py, &q_form(o, &m).map_err(err)?.to_value()))
    }

    /// Radius of the mode ellipsoid outside which the form is positive.
    fn mode_bound(&self, py: Python<'_>) -> PyResult<PyObject> {
        with_orbit!(&self.inner, o => value_py(py, &mode_bound(o).to_value()))
    }

    fn volume_hyperbolic(&self) -> f64 {
        with_orbit!(&self.inner, o => volume_hyperbolic(o))
    }

    fn volume_euclidean(&self) -> f64 {
        with_orbit!(&self.inner, o => volume_euclidean(o))
    }

    /// Determinant of the induced hyperbolic metric on the torus.
    fn metric_determinant(&self, py: Python<'_>) -> PyResult<PyObject> {
        with_orbit!(&self.inner, o => value_py(py, &metric_hyperbolic(o).determinant().to_value()))
    }

    /// Indices `(i, j, k)` of the first triple satisfying the instability
    /// inequality, if any.
    fn unstable_triple(&self) -> Option<(usize, usize, usize)> {
        with_orbit!(&self.inner, o => unstable_triple(o))
    }

    fn volume_minimizing(&self) -> String {
        with_orbit!(&self.inner, o => volume_minimizing_predicate(o).to_string())
    }

    /// Second variation of `cos(m·θ)` or `sin(m·θ)` from the spectral
    /// decomposition.
    #[pyo3(signature = (mode, phase = "cos"))]
    fn spectral(&self, py: Python<'_>, mode: Vec<i64>, phase: &str) -> PyResult<PyObject> {
        let u = TrigMonomial::new(mode_of(mode)?, phase_of(phase)?);
        with_orbit!(&self.inner, o => value_py(py, &second_variation_spectral(o, &u).map_err(err)?.to_value()))
    }

    /// Second variation by trapezoid quadrature on a `grid^n` torus grid.
    #[pyo3(signature = (mode, phase = "cos", grid = None))]
    fn quadrature(&self, mode: Vec<i64>, phase: &str, grid: Option<usize>) -> PyResult<f64> {
        let m = mode_of(mode)?;
        let grid = grid.unwrap_or_else(|| minimum_grid(&m));
        let u = TrigMonomial::new(m, phase_of(phase)?);
        with_orbit!(&self.inner, o => second_variation_quadrature(o, &u, grid).map_err(err))
    }

    /// Magnitude scale of the second-variation terms for `mode`.
    #[pyo3(signature = (mode, phase = "cos"))]
    fn variation_scale(&self, mode: Vec<i64>, phase: &str) -> PyResult<f64> {
        let u = TrigMonomial::new(mode_of(mode)?, phase_of(phase)?);
        with_orbit!(&self.inner, o => second_variation_scale(o, &u).map_err(err))
    }

    /// Both sides of the Laplacian comparison identity for `mode`.
    fn laplacian_comparison(&self, py: Python<'_>, mode: Vec<i64>) -> PyResult<(PyObject, PyObject)> {
        let u = TrigMonomial::cos(mode_of(mode)?);
        with_orbit!(&self.inner, o => {
            let (l, r) = laplacian_comparison_check(o, &u).map_err(err)?;
            Ok((value_py(py, &l.to_value())?, value_py(py, &r.to_value())?))
        })
    }

    fn __repr__(&self) -> String {
        with_orbit!(&self.inner, o => {
            let s: Vec<String> = o.simplex().iter().map(|x| x.to_value().to_string()).collect();
            format!("Orbit(simplex=[{}], t={})", s.join(", "), o.tanh_sq().to_value())
        })
    }
}

#[pymodule]
fn lagstab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOrbit>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
