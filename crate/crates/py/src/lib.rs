//! Python bindings. Numbers cross the boundary as decimal strings so no
//! precision is lost; `Value` converts to `complex`/`float` on request.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyComplex;

use stieltjes::methods::{evaluate, GammaRequest, Method};
use stieltjes::precision::{parse_complex, parse_real, render_real};
use stieltjes::verify::{run_suite, Suite, VerifyOptions};
use stieltjes::{hurwitz, oracle, stirling, Complex, Error, PrecisionContext, WPReal};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn context(digits: u32) -> PyResult<PrecisionContext> {
    PrecisionContext::new(digits).map_err(py_err)
}

/// Accepts `str` (`"1.5+0.5i"` or JSON object form), `complex`, `float` or `int`.
fn to_complex(ob: &Bound<'_, PyAny>, ctx: &PrecisionContext) -> PyResult<Complex> {
    if let Ok(s) = ob.extract::<String>() {
        return parse_complex(&s, ctx).map_err(py_err);
    }
    if let Ok(z) = ob.cast::<PyComplex>() {
        return Ok(ctx.complex(z.real(), z.imag()));
    }
    let x: f64 = ob.extract()?;
    Ok(ctx.complex(x, 0.0))
}

/// A complex result at the reported precision, as decimal strings.
#[pyclass(frozen, get_all, skip_from_py_object, module = "stieltjes_py")]
#[derive(Clone)]
struct Value {
    re: String,
    im: String,
}

impl Value {
    fn new(z: &Complex, ctx: &PrecisionContext) -> Self {
        let z = z.with_prec(ctx.report_bits());
        Self {
            re: render_real(&z.re),
            im: render_real(&z.im),
        }
    }

    fn parts(&self) -> PyResult<(f64, f64)> {
        let p = |s: &str| s.parse::<f64>().map_err(|e| PyValueError::new_err(e.to_string()));
        Ok((p(&self.re)?, p(&self.im)?))
    }
}

#[pymethods]
impl Value {
    fn __complex__<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyComplex>> {
        let (re, im) = self.parts()?;
        Ok(PyComplex::from_doubles(py, re, im))
    }

    fn __float__(&self) -> PyResult<f64> {
        let (re, im) = self.parts()?;
        if im != 0.0 {
            return Err(PyValueError::new_err("value has a non-zero imaginary part"));
        }
        Ok(re)
    }

    fn __repr__(&self) -> String {
        format!("Value(re='{}', im='{}')", self.re, self.im)
    }
}

fn real_str(x: &WPReal, ctx: &PrecisionContext) -> String {
    render_real(&ctx.report(x))
}

#[pyclass(frozen, get_all, module = "stieltjes_py")]
struct GammaResult {
    ell: u32,
    method: String,
    value: Value,
    remainder: Option<Value>,
    bound: Option<String>,
    last_term_abs: Option<String>,
    digits: u32,
}

#[pymethods]
impl GammaResult {
    fn __repr__(&self) -> String {
        format!("GammaResult(ell={}, method='{}', value={})", self.ell, self.method, self.value.__repr__())
    }
}

/// `gamma_l(a)` by one of the methods listed in `methods()`.
#[pyfunction]
#[pyo3(signature = (ell, a, method = "theorem2", m = None, n = None, j_max = None, lam = None, shift = 0, digits = 30))]
#[allow(clippy::too_many_arguments)]
fn gamma(
    ell: u32,
    a: &Bound<'_, PyAny>,
    method: &str,
    m: Option<u32>,
    n: Option<u32>,
    j_max: Option<u32>,
    lam: Option<&Bound<'_, PyAny>>,
    shift: u32,
    digits: u32,
) -> PyResult<GammaResult> {
    let ctx = context(digits)?;
    let method: Method = method.parse().map_err(py_err)?;
    let mut req = GammaRequest::new(ell, to_complex(a, &ctx)?, method);
    req.m = m;
    req.n = n;
    req.j_max = j_max;
    req.lambda = lam.map(|l| to_complex(l, &ctx)).transpose()?;
    req.shift = shift;
    let out = evaluate(&req, &ctx).map_err(py_err)?;
    Ok(GammaResult {
        ell,
        method: method.name().to_string(),
        value: Value::new(&out.value, &ctx),
        remainder: out.remainder.as_ref().map(|r| Value::new(r, &ctx)),
        bound: out.bound.as_ref().map(|b| real_str(b, &ctx)),
        last_term_abs: out.last_term_abs.as_ref().map(|t| real_str(t, &ctx)),
        digits,
    })
}

#[pyclass(frozen, get_all, module = "stieltjes_py")]
struct OracleResult {
    value: Value,
    #[pyo3(name = "M")]
    m: usize,
    est_error: String,
}

/// Reference value from the limit representation.
#[pyfunction]
#[pyo3(signature = (ell, a, digits = 30))]
fn oracle_value(ell: u32, a: &Bound<'_, PyAny>, digits: u32) -> PyResult<OracleResult> {
    let ctx = context(digits)?;
    let res = oracle::stieltjes_limit(ell, &to_complex(a, &ctx)?, &ctx).map_err(py_err)?;
    Ok(OracleResult {
        value: Value::new(&res.value, &ctx),
        m: res.m,
        est_error: real_str(&res.est_error, &ctx),
    })
}

#[pyclass(frozen, get_all, module = "stieltjes_py")]
struct ZetaValue {
    value: Value,
    tail_bound: String,
    terms_used: usize,
}

/// `zeta^(deriv,0)(s, a)` for real `s > 1`, `Re(a) > 0`.
#[pyfunction]
#[pyo3(signature = (s, a, deriv = 0, digits = 30))]
fn zeta(s: &Bound<'_, PyAny>, a: &Bound<'_, PyAny>, deriv: usize, digits: u32) -> PyResult<ZetaValue> {
    let ctx = context(digits)?;
    let s = match s.extract::<String>() {
        Ok(text) => parse_real(&text, &ctx).map_err(py_err)?,
        Err(_) => ctx.real(s.extract::<f64>()?),
    };
    let z = hurwitz::zeta_derivatives(&s, &to_complex(a, &ctx)?, deriv, &ctx)
        .map_err(py_err)?
        .swap_remove(deriv);
    Ok(ZetaValue {
        value: Value::new(&z.value, &ctx),
        tail_bound: real_str(&z.tail_bound, &ctx),
        terms_used: z.terms_used,
    })
}

/// Row `n` of the signed Stirling numbers of the first kind, `s(n, 0..=n)`.
#[pyfunction]
fn stirling_row(py: Python<'_>, n: usize) -> PyResult<Vec<Py<PyAny>>> {
    let table = stirling::build_table(n.max(1)).map_err(py_err)?;
    let int = py.import("builtins")?.getattr("int")?;
    table
        .row(n)
        .iter()
        .map(|v| Ok(int.call1((v.to_string(),))?.unbind()))
        .collect()
}

#[pyclass(frozen, get_all, module = "stieltjes_py")]
struct VerifyReport {
    suite: String,
    passed: usize,
    failed: usize,
    /// `(id, residual, tolerance, pass)` per case.
    cases: Vec<(String, f64, f64, bool)>,
}

#[pymethods]
impl VerifyReport {
    #[getter]
    fn all_pass(&self) -> bool {
        self.failed == 0
    }

    fn __repr__(&self) -> String {
        format!("VerifyReport(suite='{}', passed={}, failed={})", self.suite, self.passed, self.failed)
    }
}

/// Runs one verification suite (see `suites()`).
#[pyfunction]
#[pyo3(signature = (suite, cases = 50, seed = None, digits = 30))]
fn verify(py: Python<'_>, suite: &str, cases: usize, seed: Option<u64>, digits: u32) -> PyResult<VerifyReport> {
    let ctx = context(digits)?;
    let suite: Suite = suite.parse().map_err(py_err)?;
    let opts = VerifyOptions {
        cases,
        seed: seed.unwrap_or(VerifyOptions::default().seed),
    };
    let report = py.detach(|| run_suite(suite, &opts, &ctx)).map_err(py_err)?;
    Ok(VerifyReport {
        suite: report.suite,
        passed: report.summary.passed,
        failed: report.summary.failed,
        cases: report
            .cases
            .into_iter()
            .map(|c| (c.id, c.residual, c.tolerance, c.pass))
            .collect(),
    })
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

#[pyfunction]
fn methods() -> Vec<&'static str> {
    Method::ALL.iter().map(|m| m.name()).collect()
}

#[pymodule]
fn stieltjes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Value>()?;
    m.add_class::<GammaResult>()?;
    m.add_class::<OracleResult>()?;
    m.add_class::<ZetaValue>()?;
    m.add_class::<VerifyReport>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_value, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(stirling_row, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(methods, m)?)?;
    Ok(())
}
