//! Python bindings: `import sl2py`.
//!
//! Rationals cross the boundary as strings (`"3/4"`); ints and
//! `fractions.Fraction` are accepted on input through `str()`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sl2_boundary::arith::{parse_rational, Rational};
use sl2_boundary::model::{self, DensityField, ExpansionSolution};
use sl2_boundary::series::{self, FormalSeries};
use sl2_boundary::sl2::{self, parse_word, CanonicalForm, Claim, Engine, WordContext};
use sl2_boundary::{Error, WeightParam};

create_exception!(sl2py, Sl2Error, PyValueError, "Base class of sl2py errors.");
create_exception!(sl2py, ParseError, Sl2Error);
create_exception!(sl2py, DomainError, Sl2Error);
create_exception!(sl2py, ExceptionalWeightError, DomainError);
create_exception!(sl2py, ObstructedError, DomainError);
create_exception!(sl2py, InternalError, Sl2Error);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Parse { .. } | Error::Malformed(_) => ParseError::new_err(msg),
        Error::Pole { .. } => ExceptionalWeightError::new_err(msg),
        Error::Obstructed { .. } => ObstructedError::new_err(msg),
        Error::Internal(_) | Error::OrderMismatch { .. } => InternalError::new_err(msg),
        _ => DomainError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for sl2_boundary::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// `generic`, `None`, an int, a `Fraction` or a `"p/q"` string.
pub fn weight_from_text(text: Option<&str>) -> sl2_boundary::Result<WeightParam> {
    match text.map(str::trim) {
        None | Some("generic") => Ok(WeightParam::Generic),
        Some(t) => parse_rational(t).map(WeightParam::Value),
    }
}

fn text_of(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(obj.str()?.to_cow()?.into_owned())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&text_of(obj)?).py()
}

fn weight(obj: Option<&Bound<'_, PyAny>>) -> PyResult<WeightParam> {
    match obj {
        None => Ok(WeightParam::Generic),
        Some(o) if o.is_none() => Ok(WeightParam::Generic),
        Some(o) => weight_from_text(Some(&text_of(o)?)).py(),
    }
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

/// A finite sum of `c x^a r^e (log r)^j` terms on the half-space of
/// boundary dimension `n`, with a conformal weight.
#[pyclass(name = "Field", frozen, eq, skip_from_py_object, module = "sl2py")]
#[derive(Clone, PartialEq)]
pub struct PyField {
    inner: DensityField,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (text, n, weight = None))]
    fn new(text: &str, n: usize, weight: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let w = match weight {
            Some(w) => rational(w)?,
            None => zero(),
        };
        Ok(PyField {
            inner: model::parse_field_expr(text, n, w).py()?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn weight(&self) -> String {
        self.inner.weight.to_string()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &PyField) -> PyResult<PyField> {
        Ok(PyField {
            inner: self.inner.checked_add(&other.inner).py()?,
        })
    }

    fn __sub__(&self, other: &PyField) -> PyResult<PyField> {
        self.__add__(&PyField {
            inner: other.inner.scale(&Rational::from_integer((-1).into())),
        })
    }

    fn __mul__(&self, other: &PyField) -> PyField {
        PyField {
            inner: self.inner.mul(&other.inner),
        }
    }

    /// `I·D f` in the flat half-space of dimension `n + 1`.
    fn idotd(&self) -> PyField {
        PyField {
            inner: model::idotd_apply(&self.inner, self.inner.n as i64 + 1),
        }
    }

    /// Restriction to `r = 0`; fails on negative powers or logs of `r`.
    fn restrict(&self) -> PyResult<String> {
        Ok(self.inner.restrict().py()?.to_string())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Field({:?}, n={}, weight={:?})", self.inner.to_string(), self.inner.n, self.weight())
    }
}

/// A truncated boundary expansion.
#[pyclass(name = "Solution", frozen, module = "sl2py")]
pub struct PySolution {
    inner: ExpansionSolution,
}

#[pymethods]
impl PySolution {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.name()
    }

    #[getter]
    fn d(&self) -> i64 {
        self.inner.d
    }

    #[getter]
    fn w0(&self) -> String {
        self.inner.w0.to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order
    }

    /// `(sigma_power, log, field)` triples.
    fn terms(&self) -> Vec<(String, bool, String)> {
        self.inner
            .terms()
            .into_iter()
            .map(|t| (t.sigma_power.to_string(), t.log, t.field.to_string()))
            .collect()
    }

    /// The whole truncated solution as one field.
    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field.clone(),
        }
    }

    /// Lowest `r` power of the residual; `None` if it vanishes identically.
    #[getter]
    fn residual_order(&self) -> Option<String> {
        self.inner.residual_order().map(|v| v.to_string())
    }

    /// Boundary coefficient of the leading log term, if the kind has one.
    fn log_coefficient(&self) -> PyResult<Option<String>> {
        match self.inner.log_coefficient() {
            None => Ok(None),
            Some(r) => Ok(Some(r.py()?.to_string())),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Solution(kind={:?}, d={}, w0={:?}, order={})",
            self.kind(),
            self.inner.d,
            self.w0(),
            self.inner.order
        )
    }
}

fn coefficients(s: &FormalSeries, last: usize) -> Vec<String> {
    (0..=last).map(|k| s.coeff(k).to_string()).collect()
}

/// Coefficients `0..=order` of `K`, `G` or `H`, or all of `F`.
#[pyfunction]
#[pyo3(signature = (kind, h0 = None, order = 10))]
fn series_coefficients(kind: &str, h0: Option<&Bound<'_, PyAny>>, order: usize) -> PyResult<Vec<String>> {
    let w = weight(h0)?;
    match kind {
        "K" => Ok(coefficients(&series::k_series(&w, order).py()?, order)),
        "G" => Ok(coefficients(&series::g_series(&w, order).py()?, order)),
        "H" => Ok(coefficients(&series::h_series(&w, order).py()?, order)),
        "F" => {
            let v = w
                .value()
                .ok_or_else(|| DomainError::new_err("the F polynomial needs an integer h0 >= 2"))?;
            let f = series::f_polynomial(v).py()?;
            Ok(coefficients(&f, f.order()))
        }
        other => Err(DomainError::new_err(format!("unknown series {other:?}; use K, G, F or H"))),
    }
}

/// Normal-order `word` applied to a section `f` with `h f = h0 f`.
#[pyfunction]
#[pyo3(signature = (word, h0 = None, order = 10, contraction = false))]
fn reduce_word(word: &str, h0: Option<&Bound<'_, PyAny>>, order: usize, contraction: bool) -> PyResult<String> {
    let w = weight(h0)?;
    let ctx = WordContext {
        weight: w.clone(),
        order,
    };
    let expr = parse_word(word, &ctx).py()?;
    let engine = Engine::new(w.clone()).with_contraction(contraction);
    let f = engine.section("f", &w.as_ratfunc()).py()?;
    let out: CanonicalForm = expr
        .apply(&engine, &CanonicalForm::section(f), order)
        .py()?
        .truncate(order as i64);
    Ok(out.to_string())
}

fn logtau_field(logtau: Option<&str>, n: usize) -> PyResult<DensityField> {
    match logtau {
        Some(t) => model::parse_field_expr(t, n, zero()).py(),
        None => Ok(DensityField::zero(n, zero())),
    }
}

fn boundary_dim(d: i64) -> PyResult<usize> {
    if d < 2 {
        return Err(DomainError::new_err(format!("dimension d = {d} too small")));
    }
    Ok((d - 1) as usize)
}

/// `I·D f = 0` with `f = f0 + O(r)` of weight `w0`.
#[pyfunction]
#[pyo3(signature = (f0, d, w0, order = 10))]
fn solve_first(f0: &str, d: i64, w0: &Bound<'_, PyAny>, order: usize) -> PyResult<PySolution> {
    let n = boundary_dim(d)?;
    let data = model::parse_field_expr(f0, n, rational(w0)?).py()?;
    Ok(PySolution {
        inner: model::solve_first_kind(&data, d, order).py()?,
    })
}

/// Second-kind solution for data `fbar0` of weight `1 - d - w0`.
#[pyfunction]
#[pyo3(signature = (fbar0, d, w0, order = 10, alpha = None))]
fn solve_second(
    fbar0: &str,
    d: i64,
    w0: &Bound<'_, PyAny>,
    order: usize,
    alpha: Option<&Bound<'_, PyAny>>,
) -> PyResult<PySolution> {
    let n = boundary_dim(d)?;
    let w0 = rational(w0)?;
    let alpha = alpha.map(rational).transpose()?;
    let data_weight = match &alpha {
        Some(a) if *a == zero() => w0.clone(),
        _ => Rational::from_integer((1 - d).into()) - &w0,
    };
    let data = model::parse_field_expr(fbar0, n, data_weight).py()?;
    Ok(PySolution {
        inner: model::solve_second_kind(&data, d, &w0, order, alpha.as_ref()).py()?,
    })
}

/// Log-corrected solution at an obstructed weight.
#[pyfunction]
#[pyo3(signature = (f0, d, w0, order = 10, logtau = None))]
fn solve_log(f0: &str, d: i64, w0: &Bound<'_, PyAny>, order: usize, logtau: Option<&str>) -> PyResult<PySolution> {
    let n = boundary_dim(d)?;
    let data = model::parse_field_expr(f0, n, rational(w0)?).py()?;
    Ok(PySolution {
        inner: model::solve_log_kind(&data, d, order, &logtau_field(logtau, n)?).py()?,
    })
}

/// Log density `log(r) + u` with boundary value `u0`.
#[pyfunction]
#[pyo3(signature = (u0, d, order = 10, logtau = None))]
fn solve_log_density(u0: &str, d: i64, order: usize, logtau: Option<&str>) -> PyResult<PySolution> {
    let n = boundary_dim(d)?;
    let data = model::parse_field_expr(u0, n, zero()).py()?;
    Ok(PySolution {
        inner: model::solve_log_density(&data, d, order, &logtau_field(logtau, n)?).py()?,
    })
}

/// The obstruction `P f0|` to a smooth first-kind solution.
#[pyfunction]
fn obstruction(f0: &str, d: i64, w0: &Bound<'_, PyAny>) -> PyResult<String> {
    let n = boundary_dim(d)?;
    let data = model::parse_field_expr(f0, n, rational(w0)?).py()?;
    Ok(model::obstruction(&data, d).py()?.to_string())
}

/// Build `y^k` at weight `(k - n)/2` and measure its boundary constant.
#[pyfunction]
#[pyo3(signature = (k, d, trials = 5))]
fn gjms<'py>(py: Python<'py>, k: u32, d: i64, trials: usize) -> PyResult<Bound<'py, PyDict>> {
    let p = model::p_k_build(k, d).py()?;
    let rep = model::gjms_constant(k, d, trials).py()?;
    let out = PyDict::new(py);
    out.set_item("k", k)?;
    out.set_item("d", d)?;
    out.set_item("weight", p.weight.to_string())?;
    out.set_item("tangential", p.tangential)?;
    out.set_item("boundary_operator", rep.boundary_operator.to_string())?;
    out.set_item("zero_restriction", rep.zero_restriction)?;
    out.set_item("constant", rep.constant.as_ref().map(|c| c.to_string()))?;
    out.set_item("expected_abs", rep.expected_abs.as_ref().map(|c| c.to_string()))?;
    out.set_item("sign", rep.sign())?;
    out.set_item("passes", rep.passes() && p.tangential)?;
    Ok(out)
}

/// Q-curvature of `e^{-2 omega} delta` on `R^n`, `n` even.
#[pyfunction]
fn qcurv(n: usize, omega: &str) -> PyResult<String> {
    let w = model::parse_field_expr(omega, n, zero()).py()?;
    Ok(model::q_holographic(&w, n).py()?.to_string())
}

#[pyfunction]
fn claims() -> Vec<&'static str> {
    Claim::ALL.iter().map(|c| c.name()).collect()
}

/// Check a named identity. Returns `(vanishes, first_offending)`, the
/// latter as `"term: coefficient"`.
#[pyfunction]
#[pyo3(signature = (claim, h0 = None, order = 8))]
fn check(claim: &str, h0: Option<&Bound<'_, PyAny>>, order: usize) -> PyResult<(bool, Option<String>)> {
    let c = Claim::ALL
        .into_iter()
        .find(|c| c.name() == claim)
        .ok_or_else(|| DomainError::new_err(format!("unknown claim {claim:?}")))?;
    let rep = sl2::check(c, &weight(h0)?, order).py()?;
    Ok((rep.vanishes(), rep.first_offending().map(|(k, v)| format!("{k}: {v}"))))
}

#[pymodule]
fn sl2py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Add the classes, functions and exceptions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyField>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(series_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_word, m)?)?;
    m.add_function(wrap_pyfunction!(solve_first, m)?)?;
    m.add_function(wrap_pyfunction!(solve_second, m)?)?;
    m.add_function(wrap_pyfunction!(solve_log, m)?)?;
    m.add_function(wrap_pyfunction!(solve_log_density, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(gjms, m)?)?;
    m.add_function(wrap_pyfunction!(qcurv, m)?)?;
    m.add_function(wrap_pyfunction!(claims, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add("Sl2Error", py.get_type::<Sl2Error>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("ExceptionalWeightError", py.get_type::<ExceptionalWeightError>())?;
    m.add("ObstructedError", py.get_type::<ObstructedError>())?;
    m.add("InternalError", py.get_type::<InternalError>())?;
    Ok(())
}
