//! Python module `crw`: presentations, normal forms, the projector and the
//! step-algebra relations. Reports cross the boundary as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use crw_core::algebras::{builtin, parse_presentation};
use crw_core::{Error, Presentation as CorePresentation, StepAlgebra as CoreStepAlgebra};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Presentation", module = "crw", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Presentation(CorePresentation);

#[pymethods]
impl Presentation {
    #[staticmethod]
    #[pyo3(signature = (name, corrections = true))]
    fn builtin(name: &str, corrections: bool) -> PyResult<Self> {
        builtin(name, corrections).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_dsl(text: &str) -> PyResult<Self> {
        parse_presentation(text).map(Self).map_err(py_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    fn normalize(&self, expr: &str) -> PyResult<String> {
        let x = self.0.parse_element(expr).map_err(py_err)?;
        Ok(self.0.normal_form(&x).map_err(py_err)?.render())
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    /// `(resolved, total)` over all ordered generator triples.
    fn check_overlaps(&self) -> PyResult<(usize, usize)> {
        let reports = self.0.rules().check_overlaps().map_err(py_err)?;
        Ok((reports.iter().filter(|r| r.resolved).count(), reports.len()))
    }

    fn weight_homogeneous(&self) -> bool {
        self.0.validate().weight_homogeneous
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.0.name)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "StepAlgebra", module = "crw", frozen)]
pub struct StepAlgebra(CoreStepAlgebra);

#[pymethods]
impl StepAlgebra {
    #[new]
    fn new(presentation: &Presentation) -> PyResult<Self> {
        CoreStepAlgebra::new(presentation.0.clone()).map(Self).map_err(py_err)
    }

    fn project(&self, expr: &str) -> PyResult<String> {
        let x = self.0.presentation().parse_element(expr).map_err(py_err)?;
        Ok(self.0.apply_projector(&x).map_err(py_err)?.render())
    }

    fn check_projector_identities(&self, order: usize) -> PyResult<bool> {
        Ok(self.0.check_projector_identities(order).map_err(py_err)?.passed)
    }

    fn verify_relation(&self, py: Python<'_>, k: usize) -> PyResult<String> {
        let r = py.detach(|| self.0.verify_relation(k)).map_err(py_err)?;
        Ok(r.to_json().to_string())
    }

    fn derive_relation(&self, py: Python<'_>, i: i64, j: i64) -> PyResult<String> {
        let r = py.detach(|| self.0.derive_relation(i, j)).map_err(py_err)?;
        Ok(r.to_json().to_string())
    }
}

#[pymodule]
fn crw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<StepAlgebra>()?;
    Ok(())
}
