use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use superluminal::kinematics::{self, Regime};
use superluminal::render::Bounds;
use superluminal::{narrative, scenario, worldline};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn velocity(v: f64) -> PyResult<kinematics::FrameVelocity> {
    kinematics::FrameVelocity::new(v).map_err(value_error)
}

fn point((t, x): (f64, f64)) -> kinematics::SpacetimeEvent {
    kinematics::SpacetimeEvent::point(t, x)
}

/// The matrix L_V for a frame velocity V (units of c).
#[pyclass(name = "FrameTransform", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFrameTransform {
    inner: kinematics::FrameTransform,
}

#[pymethods]
impl PyFrameTransform {
    #[new]
    fn new(v: f64) -> PyResult<Self> {
        Ok(PyFrameTransform {
            inner: kinematics::FrameTransform::new(velocity(v)?),
        })
    }

    #[getter]
    fn velocity(&self) -> f64 {
        self.inner.velocity().value()
    }

    #[getter]
    fn regime(&self) -> &'static str {
        self.inner.regime().as_str()
    }

    #[getter]
    fn matrix(&self) -> [[f64; 2]; 2] {
        self.inner.matrix()
    }

    #[getter]
    fn prefactor(&self) -> f64 {
        self.inner.prefactor()
    }

    #[getter]
    fn determinant(&self) -> f64 {
        self.inner.determinant()
    }

    fn apply(&self, t: f64, x: f64) -> (f64, f64) {
        self.inner.apply_coords(t, x)
    }

    fn inverse(&self) -> Self {
        PyFrameTransform {
            inner: self.inner.inverse(),
        }
    }

    fn __repr__(&self) -> String {
        format!("FrameTransform(v={}, {})", self.velocity(), self.regime())
    }
}

#[pyfunction]
fn compose(a: &PyFrameTransform, b: &PyFrameTransform) -> [[f64; 2]; 2] {
    kinematics::compose(&a.inner, &b.inner)
}

#[pyfunction]
fn interval_rest(e1: (f64, f64), e2: (f64, f64)) -> f64 {
    kinematics::interval_rest(&point(e1), &point(e2))
}

#[pyfunction]
fn interval_in_frame(dt: f64, dx: f64, regime: &str) -> PyResult<f64> {
    let regime = match regime {
        "subluminal" => Regime::Subluminal,
        "superluminal" => Regime::Superluminal,
        other => return Err(value_error(format!("unknown regime `{other}`"))),
    };
    Ok(kinematics::interval_in_frame(dt, dx, regime))
}

#[pyfunction]
fn classify(e1: (f64, f64), e2: (f64, f64)) -> &'static str {
    kinematics::classify(&point(e1), &point(e2)).as_str()
}

#[pyfunction]
fn ordering_preserved(e1: (f64, f64), e2: (f64, f64), v: f64) -> PyResult<bool> {
    kinematics::ordering_preserved(&point(e1), &point(e2), velocity(v)?).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (v, extent = 2.0))]
fn render_axes(v: f64, extent: f64) -> PyResult<String> {
    if !(extent > 0.0) {
        return Err(value_error("extent must be positive"));
    }
    Ok(superluminal::render_axes(velocity(v)?, Bounds::square(extent)))
}

/// A validated rest-frame process description.
#[pyclass(name = "Scenario", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScenario {
    inner: scenario::Scenario,
}

#[pymethods]
impl PyScenario {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyScenario {
            inner: superluminal::parse_scenario(text).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        scenario::builtin(name)
            .map(|inner| PyScenario { inner })
            .ok_or_else(|| value_error(format!("no builtin scenario `{name}`")))
    }

    fn to_text(&self) -> String {
        superluminal::serialize_scenario(&self.inner)
    }

    #[getter]
    fn horizon(&self) -> f64 {
        self.inner.horizon()
    }

    fn simulate(&self) -> PyResult<PyEventGraph> {
        Ok(PyEventGraph {
            inner: scenario::simulate(&self.inner).map_err(value_error)?,
        })
    }
}

/// The simulated record of a process: flip events and photon segments.
#[pyclass(name = "EventGraph", frozen)]
struct PyEventGraph {
    inner: scenario::EventGraph,
}

#[pymethods]
impl PyEventGraph {
    /// `(id, actor, role, t, x)` per event, in simulation order.
    #[getter]
    fn events(&self) -> Vec<(String, String, &'static str, f64, f64)> {
        self.inner
            .events
            .iter()
            .map(|e| {
                (
                    e.event.id.clone(),
                    e.actor_id.clone(),
                    e.role.as_str(),
                    e.event.t,
                    e.event.x,
                )
            })
            .collect()
    }

    /// `(from, to or None, direction, (t0, x0), (t1, x1))` per photon segment.
    #[getter]
    fn photon_segments(&self) -> Vec<(String, Option<String>, &'static str, (f64, f64), (f64, f64))> {
        self.inner
            .photon_segments
            .iter()
            .map(|s| {
                (
                    s.from_event.clone(),
                    s.to_event().map(str::to_string),
                    s.direction.as_str(),
                    s.start,
                    s.end,
                )
            })
            .collect()
    }

    #[getter]
    fn flip_count(&self) -> usize {
        self.inner.flip_count()
    }

    fn state_at(&self, actor: &str, t: f64) -> PyResult<&'static str> {
        let w = self
            .inner
            .worldline(actor)
            .ok_or_else(|| value_error(format!("no actor `{actor}`")))?;
        w.state_at(t).map(worldline::StateLabel::as_str).map_err(value_error)
    }

    fn order_events(&self, v: f64) -> PyResult<Vec<(String, f64, f64)>> {
        Ok(narrative::order_events(&self.inner, velocity(v)?)
            .into_iter()
            .map(|e| (e.id, e.t, e.x))
            .collect())
    }

    fn event_roles(&self, v: f64) -> PyResult<Vec<(String, usize, usize)>> {
        Ok(narrative::event_roles(&self.inner, velocity(v)?)
            .map_err(value_error)?
            .into_iter()
            .map(|r| (r.event_id, r.emitted, r.absorbed))
            .collect())
    }

    fn photon_count_at(&self, v: f64, tau: f64) -> PyResult<usize> {
        narrative::photon_count_at(&self.inner, velocity(v)?, tau).map_err(value_error)
    }

    fn narrative(&self, v: f64) -> PyResult<String> {
        Ok(narrative::narrative_report(&self.inner, velocity(v)?)
            .map_err(value_error)?
            .to_tsv())
    }

    fn summary(&self, v: f64) -> PyResult<String> {
        Ok(narrative::narrative_report(&self.inner, velocity(v)?)
            .map_err(value_error)?
            .summary())
    }

    fn mutual_exclusion_check(&self, c_id: &str, d_id: &str) -> PyResult<bool> {
        scenario::mutual_exclusion_check(&self.inner, c_id, d_id).map_err(value_error)
    }

    #[pyo3(signature = (v = 0.0))]
    fn render(&self, v: f64) -> PyResult<String> {
        Ok(superluminal::render_scenario(
            &self.inner,
            &superluminal::DiagramSpec::new(velocity(v)?),
        ))
    }

    fn to_text(&self) -> String {
        self.inner.to_canonical_string()
    }
}

#[pymodule]
fn superluminal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFrameTransform>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyEventGraph>()?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(interval_rest, m)?)?;
    m.add_function(wrap_pyfunction!(interval_in_frame, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(ordering_preserved, m)?)?;
    m.add_function(wrap_pyfunction!(render_axes, m)?)?;
    Ok(())
}
