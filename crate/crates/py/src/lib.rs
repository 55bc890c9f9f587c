//! Python bindings: schemes, arcs and the report-producing operations.
//! Reports cross the boundary as JSON and arrive as dicts.

use arcspace::jets::{jacobian_ideal, jet_ideal, AffineScheme, FormalArc};
use arcspace_cli::{
    drinfeld_cmd, ecodim_cmd, ord_cmd, render, verify_dgk_cmd, CliError, Job, JobDocument, JobOptions, OrdTarget,
    Settings,
};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(pyarcspace, ArcspaceError, PyException);
create_exception!(pyarcspace, InputError, ArcspaceError);
create_exception!(pyarcspace, CertificateError, ArcspaceError);
create_exception!(pyarcspace, VerificationError, ArcspaceError);
create_exception!(pyarcspace, ResourceLimitError, ArcspaceError);

fn to_py(e: impl Into<CliError>) -> PyErr {
    let e = e.into();
    let msg = e.to_string();
    match e.exit_code() {
        2 => CertificateError::new_err(msg),
        3 => VerificationError::new_err(msg),
        4 => ResourceLimitError::new_err(msg),
        _ => InputError::new_err(msg),
    }
}

fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (render(value),))
}

/// An affine scheme `V(generators)` with an optional declared dimension.
#[pyclass(frozen, module = "pyarcspace")]
struct Scheme {
    inner: AffineScheme,
}

#[pymethods]
impl Scheme {
    #[new]
    #[pyo3(signature = (vars, generators, dim=None))]
    fn new(vars: Vec<String>, generators: Vec<String>, dim: Option<usize>) -> PyResult<Self> {
        Ok(Scheme { inner: AffineScheme::parse(&vars, &generators, dim).map_err(to_py)? })
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn dim(&self) -> Option<usize> {
        self.inner.dim()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(ToString::to_string).collect()
    }

    /// Generators of the jet ideal at `level`, in variables `x_j`.
    fn jet_ideal(&self, level: usize) -> PyResult<Vec<String>> {
        let (ideal, _) = jet_ideal(&self.inner, level).map_err(to_py)?;
        Ok(ideal.iter().map(ToString::to_string).collect())
    }

    /// Nonzero `(N-d)`-minors of the Jacobian matrix.
    #[pyo3(signature = (d=None))]
    fn jacobian_ideal(&self, d: Option<usize>) -> PyResult<Vec<String>> {
        let d = match d {
            Some(d) => d,
            None => self.inner.require_dim().map_err(to_py)?,
        };
        Ok(jacobian_ideal(&self.inner, d).map_err(to_py)?.iter().map(ToString::to_string).collect())
    }

    fn __repr__(&self) -> String {
        format!("Scheme({:?}, dim={:?})", self.generators(), self.inner.dim())
    }
}

/// A rational arc: one polynomial in `t` per coordinate, exact unless a
/// precision is given.
#[pyclass(frozen, module = "pyarcspace")]
struct Arc {
    inner: FormalArc,
}

#[pymethods]
impl Arc {
    #[new]
    #[pyo3(signature = (entries, precision=None))]
    fn new(entries: Vec<String>, precision: Option<usize>) -> PyResult<Self> {
        Ok(Arc { inner: FormalArc::parse(&entries, precision).map_err(to_py)? })
    }

    #[getter]
    fn precision(&self) -> Option<usize> {
        self.inner.precision()
    }

    fn __len__(&self) -> usize {
        self.inner.dim()
    }
}

fn job(scheme: &Scheme, arc: &Arc) -> Job {
    Job { scheme: scheme.inner.clone(), arc: arc.inner.clone(), options: JobOptions::default() }
}

fn settings(seed: u64, resample_limit: Option<usize>, trunc_degree: Option<u32>) -> Settings {
    let mut s = Settings { seed, ..Settings::default() };
    if let Some(r) = resample_limit {
        s.genericity.resample_limit = r;
    }
    if let Some(t) = trunc_degree {
        s.dims.max_truncation = t;
    }
    s
}

/// Contact order as a string: `"k"`, `">=k"` or `"inf"`.
#[pyfunction]
#[pyo3(signature = (scheme, arc, target="jacobian"))]
fn ord(scheme: &Scheme, arc: &Arc, target: &str) -> PyResult<String> {
    let target = match target {
        "jacobian" => OrdTarget::Jacobian,
        "generators" => OrdTarget::Generators,
        other => return Err(InputError::new_err(format!("unknown target {other:?}"))),
    };
    Ok(ord_cmd(&job(scheme, arc), target, &Settings::default()).map_err(to_py)?.ord)
}

/// Jet-level ecodim at one level, or over a window (default `[2e, 2e+2]`).
#[pyfunction]
#[pyo3(signature = (scheme, arc, level=None, window=None))]
fn ecodim<'py>(
    py: Python<'py>,
    scheme: &Scheme,
    arc: &Arc,
    level: Option<usize>,
    window: Option<(usize, usize)>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = Settings { level, window, ..Settings::default() };
    let report = py.detach(|| ecodim_cmd(&job(scheme, arc), &s)).map_err(to_py)?;
    to_dict(py, &report)
}

/// Builds and verifies the Drinfeld model; returns the report.
#[pyfunction]
#[pyo3(signature = (scheme, arc, seed=1, resample_limit=None, trunc_degree=None))]
fn drinfeld<'py>(
    py: Python<'py>,
    scheme: &Scheme,
    arc: &Arc,
    seed: u64,
    resample_limit: Option<usize>,
    trunc_degree: Option<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = settings(seed, resample_limit, trunc_degree);
    let (report, _) = py.detach(|| drinfeld_cmd(&job(scheme, arc), &s)).map_err(to_py)?;
    to_dict(py, &report)
}

/// Plain-text presentation of the model equations.
#[pyfunction]
#[pyo3(signature = (scheme, arc, seed=1))]
fn drinfeld_presentation(py: Python<'_>, scheme: &Scheme, arc: &Arc, seed: u64) -> PyResult<String> {
    let j = job(scheme, arc);
    let run = py
        .detach(|| arcspace::drinfeld::construct_drinfeld(&j.scheme, &j.arc, seed, Settings::default().genericity))
        .map_err(to_py)?;
    Ok(run.model.presentation())
}

/// Every check on one scheme and arc; `pass` summarizes them.
#[pyfunction]
#[pyo3(signature = (scheme, arc, seed=1))]
fn verify_dgk<'py>(py: Python<'py>, scheme: &Scheme, arc: &Arc, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let s = settings(seed, None, None);
    let report = py.detach(|| verify_dgk_cmd(&job(scheme, arc), &s)).map_err(to_py)?;
    to_dict(py, &report)
}

/// Parses a job document (JSON text) into a scheme and an arc.
#[pyfunction]
fn load_document(text: &str) -> PyResult<(Scheme, Arc)> {
    let j = JobDocument::from_json(text).and_then(|d| d.into_job(None)).map_err(to_py)?;
    Ok((Scheme { inner: j.scheme }, Arc { inner: j.arc }))
}

#[pymodule]
fn pyarcspace(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scheme>()?;
    m.add_class::<Arc>()?;
    m.add_function(wrap_pyfunction!(ord, m)?)?;
    m.add_function(wrap_pyfunction!(ecodim, m)?)?;
    m.add_function(wrap_pyfunction!(drinfeld, m)?)?;
    m.add_function(wrap_pyfunction!(drinfeld_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(verify_dgk, m)?)?;
    m.add_function(wrap_pyfunction!(load_document, m)?)?;
    let py = m.py();
    m.add("ArcspaceError", py.get_type::<ArcspaceError>())?;
    m.add("InputError", py.get_type::<InputError>())?;
    m.add("CertificateError", py.get_type::<CertificateError>())?;
    m.add("VerificationError", py.get_type::<VerificationError>())?;
    m.add("ResourceLimitError", py.get_type::<ResourceLimitError>())?;
    Ok(())
}
