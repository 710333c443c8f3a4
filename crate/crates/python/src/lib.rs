//! Python bindings. Numbers cross the boundary as decimal strings so no
//! precision is lost; any Python object is accepted as input via `str()`.

// pyo3 0.22 macros expand to PyErr::from(PyErr), which clippy flags.
#![allow(clippy::useless_conversion)]

use std::sync::Arc;

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use ::abeliter::abel::{AbelBranch as CoreBranch, BranchId};
use ::abeliter::frac;
use ::abeliter::koenig::SchroederSolution;
use ::abeliter::manifest::{self, Source};
use ::abeliter::maps::{MapName, MapParams, MapSpec};
use ::abeliter::numeric::{render, PrecisionContext, Real};
use ::abeliter::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NonConvergence { .. } => PyArithmeticError::new_err(e.to_string()),
        Error::Domain(_) | Error::Range(_) | Error::UnknownName(_) | Error::Parameter(_) | Error::Parse(_) => {
            PyValueError::new_err(e.to_string())
        }
    }
}

fn text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(obj.str()?.to_str()?.to_owned())
}

fn number(ctx: &PrecisionContext, obj: &Bound<'_, PyAny>) -> PyResult<Real> {
    ctx.parse(&text(obj)?).map_err(to_py)
}

fn context(digits: u32) -> PyResult<PrecisionContext> {
    PrecisionContext::new(digits).map_err(to_py)
}

fn params(
    ctx: &PrecisionContext,
    lam: Option<&Bound<'_, PyAny>>,
    base: Option<&Bound<'_, PyAny>>,
) -> PyResult<MapParams> {
    Ok(MapParams {
        lambda: lam.map(|v| number(ctx, v)).transpose()?,
        base: base.map(|v| number(ctx, v)).transpose()?,
    })
}

/// Target and guard digits of a computation.
#[pyclass(name = "Context", frozen)]
struct PyContext {
    inner: PrecisionContext,
}

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (digits=50, guard=None))]
    fn new(digits: u32, guard: Option<u32>) -> PyResult<Self> {
        let inner = match guard {
            Some(g) => PrecisionContext::with_guard(digits, g, PrecisionContext::new(digits).map_err(to_py)?.max_iterations()),
            None => PrecisionContext::new(digits),
        }
        .map_err(to_py)?;
        Ok(PyContext { inner })
    }

    #[getter]
    fn digits(&self) -> u32 {
        self.inner.target_digits()
    }

    #[getter]
    fn guard(&self) -> u32 {
        self.inner.guard_digits()
    }

    fn doubled_guard(&self) -> Self {
        PyContext {
            inner: self.inner.doubled_guard(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Context(digits={}, guard={})", self.digits(), self.guard())
    }
}

fn resolve_context(ctx: Option<&Bound<'_, PyContext>>, digits: u32) -> PyResult<PrecisionContext> {
    match ctx {
        Some(c) => Ok(c.get().inner),
        None => context(digits),
    }
}

/// An Abel function F on one branch interval, with F(f(x)) = F(x) + 1.
#[pyclass(name = "AbelBranch", frozen)]
struct PyAbelBranch {
    inner: Arc<CoreBranch>,
}

impl PyAbelBranch {
    fn digits(&self) -> u32 {
        self.inner.context().target_digits()
    }

    fn out(&self, x: &Real) -> String {
        render(x, self.digits())
    }
}

#[pymethods]
impl PyAbelBranch {
    #[new]
    #[pyo3(signature = (branch, digits=50, lam=None, base=None, context=None))]
    fn new(
        branch: &str,
        digits: u32,
        lam: Option<&Bound<'_, PyAny>>,
        base: Option<&Bound<'_, PyAny>>,
        context: Option<&Bound<'_, PyContext>>,
    ) -> PyResult<Self> {
        let ctx = resolve_context(context, digits)?;
        let id: BranchId = branch.parse().map_err(to_py)?;
        let p = params(&ctx, lam, base)?;
        let inner = CoreBranch::build(id, &p, &ctx).map_err(to_py)?;
        Ok(PyAbelBranch { inner: Arc::new(inner) })
    }

    #[getter]
    fn id(&self) -> &'static str {
        self.inner.id().as_str()
    }

    #[getter]
    fn offset(&self) -> String {
        self.out(self.inner.offset())
    }

    #[getter]
    fn interval(&self) -> String {
        self.inner.interval().to_string()
    }

    /// F(x)
    fn eval(&self, py: Python<'_>, x: &Bound<'_, PyAny>) -> PyResult<String> {
        let x = number(self.inner.context(), x)?;
        let b = Arc::clone(&self.inner);
        let v = py.allow_threads(move || b.eval(&x)).map_err(to_py)?;
        Ok(self.out(&v))
    }

    /// x with F(x) = t
    fn invert(&self, py: Python<'_>, t: &Bound<'_, PyAny>) -> PyResult<String> {
        let t = number(self.inner.context(), t)?;
        let b = Arc::clone(&self.inner);
        let v = py.allow_threads(move || b.invert(&t)).map_err(to_py)?;
        Ok(self.out(&v))
    }

    /// One application of the map on this branch.
    fn step(&self, x: &Bound<'_, PyAny>) -> PyResult<String> {
        let x = number(self.inner.context(), x)?;
        Ok(self.out(&self.inner.step(&x).map_err(to_py)?))
    }

    /// f^[t](x) = F^-1(F(x) + t)
    #[pyo3(signature = (x, t="1/2"))]
    fn iterate(&self, py: Python<'_>, x: &Bound<'_, PyAny>, t: &str) -> PyResult<String> {
        let ctx = self.inner.context();
        let x = number(ctx, x)?;
        let t = ctx.parse(t).map_err(to_py)?;
        let b = Arc::clone(&self.inner);
        let v = py.allow_threads(move || frac::iterate(&b, &x, &t)).map_err(to_py)?;
        Ok(self.out(&v))
    }

    fn __repr__(&self) -> String {
        format!("AbelBranch({:?}, digits={})", self.id(), self.digits())
    }
}

/// f^[1/2](x) on the named branch.
#[pyfunction]
#[pyo3(signature = (branch, x, digits=50, lam=None, base=None))]
fn half_iterate(
    py: Python<'_>,
    branch: &str,
    x: &Bound<'_, PyAny>,
    digits: u32,
    lam: Option<&Bound<'_, PyAny>>,
    base: Option<&Bound<'_, PyAny>>,
) -> PyResult<String> {
    let b = PyAbelBranch::new(branch, digits, lam, base, None)?;
    b.iterate(py, x, "1/2")
}

/// T(c, t) with T(c, 0) = 1 and T(c, t + 1) = c^T(c, t).
#[pyfunction]
#[pyo3(signature = (base, t, digits=50))]
fn tetration(py: Python<'_>, base: &Bound<'_, PyAny>, t: &Bound<'_, PyAny>, digits: u32) -> PyResult<String> {
    let ctx = context(digits)?;
    let c = number(&ctx, base)?;
    let t = number(&ctx, t)?;
    let v = py
        .allow_threads(|| frac::tetration(&c, &t, &ctx))
        .map_err(to_py)?;
    Ok(render(&v, digits))
}

/// The constants manifest as (name, value, source) tuples.
#[pyfunction]
#[pyo3(signature = (digits=50, filter=None))]
fn constants(py: Python<'_>, digits: u32, filter: Option<String>) -> PyResult<Vec<(String, String, &'static str)>> {
    let entries = py
        .allow_threads(|| manifest::manifest(digits, filter.as_deref()))
        .map_err(to_py)?;
    Ok(entries
        .into_iter()
        .map(|e| {
            let source = match e.source {
                Source::Published => "published",
                Source::Derived => "derived",
            };
            (e.name, e.value, source)
        })
        .collect())
}

/// Koenig limit of a catalog map at raw x: (limit, multiplier, iterations).
#[pyfunction]
#[pyo3(signature = (map, x, digits=50, lam=None, base=None))]
fn koenig_limit(
    py: Python<'_>,
    map: &str,
    x: &Bound<'_, PyAny>,
    digits: u32,
    lam: Option<&Bound<'_, PyAny>>,
    base: Option<&Bound<'_, PyAny>>,
) -> PyResult<(String, String, u32)> {
    let ctx = context(digits)?;
    let name: MapName = map.parse().map_err(to_py)?;
    let p = params(&ctx, lam, base)?;
    let x = number(&ctx, x)?;
    let rep = py
        .allow_threads(|| {
            let spec = MapSpec::new(name, &p, &ctx)?;
            SchroederSolution::new(Arc::new(spec)).at_raw(&x)
        })
        .map_err(to_py)?;
    Ok((render(&rep.value, digits), render(&rep.multiplier, digits), rep.iterations))
}

/// Every branch id accepted by `AbelBranch`.
#[pyfunction]
fn branch_ids() -> Vec<&'static str> {
    BranchId::ALL.iter().map(|b| b.as_str()).collect()
}

#[pymodule]
fn abeliter(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PyAbelBranch>()?;
    m.add_function(wrap_pyfunction!(half_iterate, m)?)?;
    m.add_function(wrap_pyfunction!(tetration, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(koenig_limit, m)?)?;
    m.add_function(wrap_pyfunction!(branch_ids, m)?)?;
    Ok(())
}
