//! Python bindings: dual numbers, Lorentzian vector algebra, line encoding,
//! surface analysis and Mannheim offsets.

use pyo3::create_exception;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ruledkit_core as rk;
use rk::offset::DEFAULT_REPORT_TOL;
use rk::surface::DEFAULT_CLASSIFY_TOL;
use rk::{DualFn, MVec3};

create_exception!(ruledkit, RuledkitError, PyValueError, "Invalid input to a ruledkit operation.");
create_exception!(ruledkit, DegeneracyError, RuledkitError, "The geometry degenerates on the requested window.");

type Vec3 = (f64, f64, f64);

fn to_py_err(e: impl Into<rk::Error>) -> PyErr {
    let e = e.into();
    if e.is_degeneracy() {
        DegeneracyError::new_err(e.to_string())
    } else {
        RuledkitError::new_err(e.to_string())
    }
}

fn mv(v: Vec3) -> MVec3 {
    MVec3::new(v.0, v.1, v.2)
}

fn tup(v: MVec3) -> Vec3 {
    (v.x0, v.x1, v.x2)
}

fn tups(v: &[MVec3]) -> Vec<Vec3> {
    v.iter().map(|x| tup(*x)).collect()
}

fn dual_fn(name: &str) -> PyResult<DualFn> {
    DualFn::ALL
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown function {name:?}")))
}

/// Dual number `re + ε·du` with `ε² = 0`.
#[pyclass(name = "DualScalar", module = "ruledkit", frozen, eq, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq)]
struct PyDualScalar(rk::DualScalar);

#[pymethods]
impl PyDualScalar {
    #[new]
    #[pyo3(signature = (re, du = 0.0))]
    fn new(re: f64, du: f64) -> Self {
        Self(rk::DualScalar::new(re, du))
    }

    #[getter]
    fn re(&self) -> f64 {
        self.0.re
    }

    #[getter]
    fn du(&self) -> f64 {
        self.0.du
    }

    fn __add__(&self, o: PyRef<'_, Self>) -> Self {
        Self(self.0 + o.0)
    }

    fn __sub__(&self, o: PyRef<'_, Self>) -> Self {
        Self(self.0 - o.0)
    }

    fn __mul__(&self, o: PyRef<'_, Self>) -> Self {
        Self(self.0 * o.0)
    }

    fn __truediv__(&self, o: PyRef<'_, Self>) -> PyResult<Self> {
        self.0
            .checked_div(o.0)
            .map(Self)
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Self {
        Self(-self.0)
    }

    /// Dual extension of `cosh`, `sinh`, `tanh`, `coth`, `sqrt`, `arccosh`
    /// or `artanh`.
    fn apply(&self, function: &str) -> PyResult<Self> {
        rk::dual_apply(dual_fn(function)?, self.0).map(Self).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("DualScalar({}, {})", self.0.re, self.0.du)
    }
}

#[pyfunction]
fn linner(a: Vec3, b: Vec3) -> f64 {
    rk::linner(mv(a), mv(b))
}

#[pyfunction]
fn lcross(a: Vec3, b: Vec3) -> Vec3 {
    tup(rk::lcross(mv(a), mv(b)))
}

#[pyfunction]
fn det(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    rk::det(mv(a), mv(b), mv(c))
}

/// `"Timelike"`, `"Spacelike"` or `"Null"`.
#[pyfunction]
#[pyo3(signature = (v, tol = rk::minkowski::DEFAULT_NULL_TOL))]
fn causal_classify(v: Vec3, tol: f64) -> &'static str {
    match rk::causal_classify(mv(v), tol).tag {
        rk::CausalTag::Timelike => "Timelike",
        rk::CausalTag::Spacelike => "Spacelike",
        rk::CausalTag::Null => "Null",
    }
}

/// Dual vector `(direction, point × direction)` of a timelike line.
#[pyfunction]
fn encode_line(direction: Vec3, point: Vec3) -> PyResult<(Vec3, Vec3)> {
    let l = rk::encode_line(mv(direction), mv(point)).map_err(to_py_err)?;
    Ok((tup(l.re), tup(l.du)))
}

#[pyfunction]
fn decode_line_point(direction: Vec3, moment: Vec3) -> PyResult<Vec3> {
    rk::decode_line_point(rk::DualVec3::new(mv(direction), mv(moment)))
        .map(tup)
        .map_err(to_py_err)
}

/// `(θ, θ*)` between two encoded lines.
#[pyfunction]
fn dual_angle(a: (Vec3, Vec3), b: (Vec3, Vec3)) -> PyResult<(f64, f64)> {
    let l = |x: (Vec3, Vec3)| rk::DualVec3::new(mv(x.0), mv(x.1));
    let ang = rk::dual_angle(l(a), l(b)).map_err(to_py_err)?;
    Ok((ang.theta, ang.theta_star))
}

/// Sampled Darboux apparatus of a timelike ruled surface.
#[pyclass(name = "RuledSurface", module = "ruledkit", frozen)]
struct PyRuledSurface(rk::RuledSurfaceModel);

#[pymethods]
impl PyRuledSurface {
    /// Surface with constant invariants from closed forms.
    #[staticmethod]
    #[pyo3(signature = (gamma, delta, big_delta, s_range, samples = 1024))]
    fn constant_invariant(gamma: f64, delta: f64, big_delta: f64, s_range: (f64, f64), samples: usize) -> PyResult<Self> {
        rk::synth_constant_invariant(gamma, delta, big_delta, s_range, samples)
            .map(Self)
            .map_err(to_py_err)
    }

    #[staticmethod]
    #[pyo3(signature = (s_range = (0.0, 2.0), samples = 1024))]
    fn planar_hyperbola(s_range: (f64, f64), samples: usize) -> PyResult<Self> {
        rk::fixtures::planar_hyperbola(s_range, samples).map(Self).map_err(to_py_err)
    }

    #[staticmethod]
    #[pyo3(signature = (apex, s_range = (0.0, 2.0), samples = 1024))]
    fn cone(apex: Vec3, s_range: (f64, f64), samples: usize) -> PyResult<Self> {
        rk::fixtures::cone(mv(apex), s_range, samples).map(Self).map_err(to_py_err)
    }

    /// Surface from director and base samples on a uniform grid `u`.
    #[staticmethod]
    #[pyo3(signature = (u, director, base, dual_arc_origin = 0.0))]
    fn from_samples(u: Vec<f64>, director: Vec<Vec3>, base: Vec<Vec3>, dual_arc_origin: f64) -> PyResult<Self> {
        let d = rk::SampledCurve::new(u.clone(), director.into_iter().map(mv).collect()).map_err(to_py_err)?;
        let b = rk::SampledCurve::new(u, base.into_iter().map(mv).collect()).map_err(to_py_err)?;
        let cfg = rk::BuildConfig {
            dual_arc_origin,
            ..rk::BuildConfig::default()
        };
        rk::build_surface(&d, &b, &cfg).map(Self).map_err(to_py_err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn s(&self) -> Vec<f64> {
        self.0.s_grid.clone()
    }

    #[getter]
    fn e(&self) -> Vec<Vec3> {
        tups(&self.0.e)
    }

    #[getter]
    fn t(&self) -> Vec<Vec3> {
        tups(&self.0.t)
    }

    #[getter]
    fn g(&self) -> Vec<Vec3> {
        tups(&self.0.g)
    }

    #[getter]
    fn c(&self) -> Vec<Vec3> {
        tups(&self.0.c)
    }

    #[getter]
    fn gamma(&self) -> Vec<f64> {
        self.0.conical_curvature.clone()
    }

    #[getter]
    fn delta(&self) -> Vec<f64> {
        self.0.striction_axial.clone()
    }

    #[getter(Delta)]
    fn big_delta(&self) -> Vec<f64> {
        self.0.striction_normal.clone()
    }

    #[pyo3(signature = (tol = DEFAULT_CLASSIFY_TOL))]
    fn classify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let c = rk::classify(&self.0, tol);
        let d = PyDict::new(py);
        d.set_item("developable", c.developable)?;
        d.set_item("cone", c.cone)?;
        Ok(d)
    }

    fn frame_residuals<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.0.frame_residuals();
        let d = PyDict::new(py);
        d.set_item("orthonormality", r.orthonormality)?;
        d.set_item("handedness", r.handedness)?;
        d.set_item("darboux_e", r.darboux_e)?;
        d.set_item("darboux_t", r.darboux_t)?;
        d.set_item("darboux_g", r.darboux_g)?;
        d.set_item("striction", r.striction)?;
        d.set_item("decomposition", r.decomposition)?;
        Ok(d)
    }

    /// Per-sample `s_bar`, `gamma_bar`, `R_bar`, `rho_cosh`, `rho_sinh` as
    /// lists of `DualScalar`, and `branch` names.
    fn dual_apparatus<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let app = rk::dual_apparatus(&self.0).map_err(to_py_err)?;
        let wrap = |v: Vec<rk::DualScalar>| v.into_iter().map(PyDualScalar).collect::<Vec<_>>();
        let d = PyDict::new(py);
        d.set_item("s_bar", wrap(app.s_bar.clone()))?;
        d.set_item("gamma_bar", wrap(app.gamma_bar.clone()))?;
        d.set_item("R_bar", wrap(app.r_bar.clone()))?;
        d.set_item("rho_cosh", wrap(app.rho_pair.iter().map(|p| p.cosh).collect()))?;
        d.set_item("rho_sinh", wrap(app.rho_pair.iter().map(|p| p.sinh).collect()))?;
        d.set_item("branch", app.branch.iter().map(|b| b.name()).collect::<Vec<_>>())?;
        Ok(d)
    }

    /// Mannheim offset for `θ = −s + c`, `θ* = ∫Δ + cstar`, with the
    /// closed-form consistency report.
    #[pyo3(signature = (c, cstar, tol = DEFAULT_REPORT_TOL))]
    fn mannheim_offset(&self, c: f64, cstar: f64, tol: f64) -> PyResult<PyMannheimOffset> {
        let spec = rk::offset_angle_profile(&self.0, c, cstar).map_err(to_py_err)?;
        let offset = rk::construct_offset(&self.0, &spec).map_err(to_py_err)?;
        let report = rk::consistency_report(&self.0, &spec, &offset, tol).map_err(to_py_err)?;
        Ok(PyMannheimOffset { spec, offset, report })
    }
}

#[pyclass(name = "MannheimOffset", module = "ruledkit", frozen)]
struct PyMannheimOffset {
    spec: rk::OffsetSpec,
    offset: rk::OffsetModel,
    report: rk::OffsetReport,
}

#[pymethods]
impl PyMannheimOffset {
    #[getter]
    fn theta(&self) -> Vec<f64> {
        self.spec.theta.clone()
    }

    #[getter]
    fn theta_star(&self) -> Vec<f64> {
        self.spec.theta_star.clone()
    }

    /// The offset surface rebuilt from its decoded rulings.
    #[getter]
    fn surface(&self) -> PyRuledSurface {
        PyRuledSurface(self.offset.recovered.clone())
    }

    #[getter]
    fn mannheim_residual(&self) -> f64 {
        self.report.mannheim.real
    }

    /// `{formula: (max_residual, mean_residual, verdict)}`.
    fn summary(&self) -> Vec<(&'static str, f64, f64, &'static str)> {
        self.report
            .summary
            .iter()
            .map(|s| (s.formula.key(), s.max_residual, s.mean_residual, s.verdict.name()))
            .collect()
    }

    /// `(closed_form, oracle, residual)` of `formula` at every base sample.
    fn formula(&self, formula: &str) -> PyResult<Vec<(f64, f64, f64)>> {
        let f = rk::Formula::from_key(formula).ok_or_else(|| PyValueError::new_err(format!("unknown formula {formula:?}")))?;
        Ok(self
            .report
            .rows
            .iter()
            .map(|r| {
                let e = r.entry(f);
                (e.value, e.oracle, e.residual)
            })
            .collect())
    }

    /// Offset conical curvature in the closed-form sign convention, per base
    /// sample.
    #[getter]
    fn gamma1(&self) -> Vec<f64> {
        self.report.rows.iter().map(|r| r.oracle.conical_curvature).collect()
    }
}

#[pymodule]
fn ruledkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RuledkitError", m.py().get_type::<RuledkitError>())?;
    m.add("DegeneracyError", m.py().get_type::<DegeneracyError>())?;
    m.add_class::<PyDualScalar>()?;
    m.add_class::<PyRuledSurface>()?;
    m.add_class::<PyMannheimOffset>()?;
    m.add_function(wrap_pyfunction!(linner, m)?)?;
    m.add_function(wrap_pyfunction!(lcross, m)?)?;
    m.add_function(wrap_pyfunction!(det, m)?)?;
    m.add_function(wrap_pyfunction!(causal_classify, m)?)?;
    m.add_function(wrap_pyfunction!(encode_line, m)?)?;
    m.add_function(wrap_pyfunction!(decode_line_point, m)?)?;
    m.add_function(wrap_pyfunction!(dual_angle, m)?)?;
    Ok(())
}
