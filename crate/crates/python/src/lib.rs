//! Python bindings for `hypsum`.

use std::path::PathBuf;

use hypsum::bessel_sums as bs;
use hypsum::closed_form as cf;
use hypsum::hypergeom::{self, SeriesConfig};
use hypsum::special_fns as sf;
use hypsum::verify::{self, GridSpec, ReportFormat, Suite};
use hypsum::{Complex, Error, LimitPolicy, Theorem1Params};
use pyo3::exceptions::{PyArithmeticError, PyOSError, PyRuntimeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Pole(_) => PyZeroDivisionError::new_err(e.to_string()),
        Error::Divergent(_) | Error::Cancelled(_) => PyRuntimeError::new_err(e.to_string()),
        Error::RemovableSingularity(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn cfg(rel_tol: f64, max_terms: usize) -> PyResult<SeriesConfig> {
    let c = SeriesConfig {
        rel_tol,
        max_terms,
        ..SeriesConfig::default()
    };
    c.validate().map_err(to_py)?;
    Ok(c)
}

fn policy(limit_mode: &str, epsilon: f64) -> PyResult<LimitPolicy> {
    match limit_mode {
        "error" => Ok(LimitPolicy {
            epsilon,
            ..LimitPolicy::default()
        }),
        "epsilon" => Ok(LimitPolicy::epsilon_limit(epsilon)),
        other => Err(PyValueError::new_err(format!("limit_mode must be 'error' or 'epsilon', got {other:?}"))),
    }
}

/// Value of a series or closed-form evaluation with its error estimate.
#[pyclass(frozen, get_all)]
#[derive(Clone)]
struct EvalResult {
    value: Complex,
    err_est: f64,
    terms_used: usize,
    converged: bool,
}

#[pymethods]
impl EvalResult {
    fn __repr__(&self) -> String {
        format!(
            "EvalResult(value={}, err_est={:e}, terms_used={}, converged={})",
            self.value, self.err_est, self.terms_used, self.converged
        )
    }
}

impl From<hypergeom::EvalResult> for EvalResult {
    fn from(r: hypergeom::EvalResult) -> Self {
        EvalResult {
            value: r.value,
            err_est: r.err_est,
            terms_used: r.terms_used,
            converged: r.converged,
        }
    }
}

#[pyclass(frozen, get_all)]
#[derive(Clone)]
struct ExpansionResult {
    value: f64,
    terms_used: usize,
    truncation_est: f64,
}

#[pymethods]
impl ExpansionResult {
    fn __repr__(&self) -> String {
        format!(
            "ExpansionResult(value={}, terms_used={}, truncation_est={:e})",
            self.value, self.terms_used, self.truncation_est
        )
    }
}

impl From<bs::ExpansionResult> for ExpansionResult {
    fn from(r: bs::ExpansionResult) -> Self {
        ExpansionResult {
            value: r.value,
            terms_used: r.terms_used,
            truncation_est: r.truncation_est,
        }
    }
}

/// Orders, arguments and index of the Bessel sum Λ Σ J_μ(am) J_ν(bm) / m^α, α = μ+ν+2n+1.
#[pyclass(frozen)]
struct BesselSum {
    inner: bs::BesselSumParams,
}

#[pymethods]
impl BesselSum {
    #[new]
    #[pyo3(signature = (mu, nu, a, b, n))]
    fn new(mu: f64, nu: f64, a: f64, b: f64, n: usize) -> PyResult<Self> {
        Ok(BesselSum {
            inner: bs::BesselSumParams::new(mu, nu, a, b, n).map_err(to_py)?,
        })
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.inner.mu
    }
    #[getter]
    fn nu(&self) -> f64 {
        self.inner.nu
    }
    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }
    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }
    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }
    #[getter]
    fn chi(&self) -> f64 {
        self.inner.chi()
    }

    #[pyo3(signature = (terms=100_000))]
    fn direct(&self, py: Python<'_>, terms: usize) -> PyResult<ExpansionResult> {
        let p = self.inner;
        py.allow_threads(|| bs::s_direct(&p, terms)).map(Into::into).map_err(to_py)
    }

    #[pyo3(signature = (rel_tol=1e-12))]
    fn expansion_equal(&self, rel_tol: f64) -> PyResult<ExpansionResult> {
        bs::expansion_equal(&self.inner, &cfg(rel_tol, SeriesConfig::default().max_terms)?)
            .map(Into::into)
            .map_err(to_py)
    }

    #[pyo3(signature = (rel_tol=1e-12))]
    fn expansion_unequal(&self, rel_tol: f64) -> PyResult<ExpansionResult> {
        bs::expansion_unequal(&self.inner, &cfg(rel_tol, SeriesConfig::default().max_terms)?)
            .map(Into::into)
            .map_err(to_py)
    }

    fn a_coeff(&self, m: usize) -> PyResult<f64> {
        bs::a_coeff(&self.inner, m).map_err(to_py)
    }

    fn b_coeff(&self, m: usize, chi: f64) -> PyResult<f64> {
        bs::b_coeff(&self.inner, m, chi).map_err(to_py)
    }

    fn delta(&self, chi: f64) -> PyResult<EvalResult> {
        bs::delta_n(&self.inner, chi, &SeriesConfig::default()).map(Into::into).map_err(to_py)
    }

    fn delta_at_one(&self) -> PyResult<f64> {
        bs::delta_n_at_1_closed(&self.inner).map_err(to_py)
    }

    /// Closed form of ₃F₂(1,1,1−μ; n+ν+2, n+2; 1) in terms of ψ.
    fn hyp3f2_closed(&self) -> PyResult<f64> {
        bs::eq24_3f2(&self.inner).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("BesselSum(mu={}, nu={}, a={}, b={}, n={})", p.mu, p.nu, p.a, p.b, p.n)
    }
}

#[pyfunction]
fn gamma(z: Complex) -> PyResult<Complex> {
    sf::cgamma(z).map_err(to_py)
}

#[pyfunction]
fn rgamma(z: Complex) -> Complex {
    sf::rgamma(z)
}

#[pyfunction]
fn digamma(z: Complex) -> PyResult<Complex> {
    sf::digamma(z).map_err(to_py)
}

#[pyfunction]
fn zeta(s: f64) -> PyResult<f64> {
    sf::zeta(s).map_err(to_py)
}

#[pyfunction]
fn bessel_j(order: f64, x: f64) -> f64 {
    sf::bessel_j(order, x)
}

#[pyfunction]
#[pyo3(signature = (upper, lower, x=Complex::new(1.0, 0.0), rel_tol=1e-12, max_terms=10_000_000))]
fn sum_3f2(upper: [Complex; 3], lower: [Complex; 2], x: Complex, rel_tol: f64, max_terms: usize) -> PyResult<EvalResult> {
    hypergeom::sum_3f2(upper, lower, x, &cfg(rel_tol, max_terms)?)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (a, b, c, x=Complex::new(1.0, 0.0), rel_tol=1e-12, max_terms=10_000_000))]
fn sum_2f1(a: Complex, b: Complex, c: Complex, x: Complex, rel_tol: f64, max_terms: usize) -> PyResult<EvalResult> {
    hypergeom::sum_2f1(a, b, c, x, &cfg(rel_tol, max_terms)?)
        .map(Into::into)
        .map_err(to_py)
}

/// Closed form of ₃F₂(1,1,c; d,n+2; 1).
#[pyfunction]
#[pyo3(signature = (c, d, n, limit_mode="error", epsilon=1e-5))]
fn theorem1(c: Complex, d: Complex, n: usize, limit_mode: &str, epsilon: f64) -> PyResult<EvalResult> {
    cf::theorem1(&Theorem1Params::new(c, d, n), &policy(limit_mode, epsilon)?)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (c, d, n, limit_mode="error", epsilon=1e-5))]
fn special_case(c: Complex, d: Complex, n: usize, limit_mode: &str, epsilon: f64) -> PyResult<Complex> {
    cf::special_case(&Theorem1Params::new(c, d, n), &policy(limit_mode, epsilon)?).map_err(to_py)
}

/// ₃F₂(a, c, m; d, m+p; 1) for positive integers m, p.
#[pyfunction]
fn miller_paris(a: Complex, c: Complex, d: Complex, m: usize, p: usize) -> PyResult<Complex> {
    cf::miller_paris(a, c, d, m, p).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (c, d, n, epsilons=vec![1e-3, 1e-4, 1e-5]))]
fn miller_paris_limit(c: Complex, d: Complex, n: usize, epsilons: Vec<f64>) -> PyResult<Complex> {
    cf::miller_paris_limit(c, d, n, &epsilons).map_err(to_py)
}

/// Runs a verification suite and writes the report; returns (records, failed, path).
#[pyfunction]
#[pyo3(signature = (suite="all", samples=200, seed=42, n_values=None, out=None, format="table", rel_tol=None))]
#[allow(clippy::too_many_arguments)]
fn run_verify(
    py: Python<'_>,
    suite: &str,
    samples: usize,
    seed: u64,
    n_values: Option<Vec<usize>>,
    out: Option<PathBuf>,
    format: &str,
    rel_tol: Option<f64>,
) -> PyResult<(usize, usize, PathBuf)> {
    let suite = match suite {
        "theorem1" => Suite::Theorem1,
        "miller_paris" | "miller-paris" => Suite::MillerParis,
        "identities" => Suite::Identities,
        "bessel" => Suite::Bessel,
        "all" => Suite::All,
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    let format = match format {
        "table" => ReportFormat::Table,
        "objects" => ReportFormat::Objects,
        other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
    };
    let mut grid = GridSpec {
        samples,
        seed,
        ..GridSpec::default()
    };
    if let Some(ns) = n_values {
        grid.n_values = ns;
    }
    let path = out.unwrap_or_else(|| PathBuf::from(format!("report-{}-seed{}.{}", suite.name(), seed, format.extension())));
    let records = py.allow_threads(|| verify::run_suite(suite, &grid, rel_tol)).map_err(to_py)?;
    verify::write_report(&records, &path, format).map_err(|e| match e {
        verify::ReportError::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    })?;
    let failed = records.iter().filter(|r| !r.pass).count();
    Ok((records.len(), failed, path))
}

#[pymodule]
fn hypsum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EvalResult>()?;
    m.add_class::<ExpansionResult>()?;
    m.add_class::<BesselSum>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(rgamma, m)?)?;
    m.add_function(wrap_pyfunction!(digamma, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(sum_3f2, m)?)?;
    m.add_function(wrap_pyfunction!(sum_2f1, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(special_case, m)?)?;
    m.add_function(wrap_pyfunction!(miller_paris, m)?)?;
    m.add_function(wrap_pyfunction!(miller_paris_limit, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
