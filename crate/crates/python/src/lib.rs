//! Python module `legdef`: thin wrappers over the core crate. Results come
//! back as plain Python values; rationals and polynomials stay strings.

use legdef::cli::run_args;
use legdef::conormal::conormal_of;
use legdef::contact::{act_on_legendrian, verify_contact, ContactTransform};
use legdef::curve::{classify as classify_eq, is_generic as generic_report, Branch, PlaneCurve};
use legdef::deform::DeformationModel;
use legdef::exactalg::{parse_poly_in, MultiPoly};
use legdef::series::{semigroup_of_subring, TruncSeries};
use legdef::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Precondition(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn equation(s: &str) -> PyResult<MultiPoly> {
    parse_poly_in(s, &["x", "y"]).map_err(py_err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let l = PyList::empty(py);
            for x in a {
                l.append(to_py(py, x)?)?;
            }
            l.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

/// Runs the command line with `args` (without the program name) and returns
/// `(exit_code, stdout, stderr)`.
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String, String) {
    let o = run_args(std::iter::once("legdef".to_string()).chain(args));
    (o.code, o.stdout, o.stderr)
}

/// Runs a subcommand with JSON output and returns the parsed report.
#[pyfunction]
fn report<'py>(py: Python<'py>, args: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
    let argv = ["legdef".to_string(), "--format".into(), "json".into()].into_iter().chain(args);
    let o = run_args(argv);
    if o.code != 0 {
        return Err(PyValueError::new_err(o.stderr.trim().to_string()));
    }
    let v: Value = serde_json::from_str(&o.stdout).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// `"SQH(...)"`, `"NND"` or `"degenerate"`.
#[pyfunction]
fn classify(eq: &str) -> PyResult<String> {
    Ok(classify_eq(&equation(eq)?).map_err(py_err)?.label())
}

#[pyfunction]
fn is_generic(eq: &str) -> PyResult<bool> {
    let c = PlaneCurve::from_equation(equation(eq)?).map_err(py_err)?;
    Ok(generic_report(&c).map_err(py_err)?.generic)
}

/// Branches of the conormal as `(x, y, p)` series strings.
#[pyfunction]
fn conormal(eq: &str) -> PyResult<Vec<(String, String, String)>> {
    let l = conormal_of(&PlaneCurve::from_equation(equation(eq)?).map_err(py_err)?).map_err(py_err)?;
    Ok(l.branches().iter().map(|b| (b.x.to_text("t"), b.y.to_text("t"), b.p.to_text("t"))).collect())
}

/// `(generators, conductor)` of the orders of the subring generated by the
/// given series in `t`.
#[pyfunction]
fn semigroup(series: Vec<String>) -> PyResult<(Vec<u64>, u64)> {
    let gens =
        series.iter().map(|s| TruncSeries::parse(s, "t", None)).collect::<legdef::Result<Vec<_>>>().map_err(py_err)?;
    let s = semigroup_of_subring(&gens).map_err(py_err)?;
    Ok((s.generators, s.conductor))
}

/// Image of the conormal of the branch `(x(t), y(t))` under a JSON transform.
#[pyfunction]
fn contact_act(x: &str, y: &str, transform: &str) -> PyResult<(String, String, String)> {
    let t = ContactTransform::parse(transform).map_err(py_err)?;
    let check = verify_contact(&t);
    if !check.is_contact {
        return Err(PyValueError::new_err(check.witness));
    }
    let b = Branch::parse(x, y, None).map_err(py_err)?;
    let l = conormal_of(&PlaneCurve::from_branches(vec![b]).map_err(py_err)?).map_err(py_err)?;
    let img = act_on_legendrian(&t, &l).map_err(py_err)?;
    let b = &img.branches()[0];
    Ok((b.x.to_text("t"), b.y.to_text("t"), b.p.to_text("t")))
}

/// Monomial basis of `I_f / I_f^μ`.
#[pyfunction]
fn quotient_basis(eq: &str) -> PyResult<Vec<String>> {
    let m = DeformationModel::new(&equation(eq)?).map_err(py_err)?;
    Ok(m.quotient_basis().map_err(py_err)?.basis.iter().map(|p| p.to_text()).collect())
}

#[pyfunction]
fn es_arrow_basis(eq: &str) -> PyResult<Vec<String>> {
    let m = DeformationModel::new(&equation(eq)?).map_err(py_err)?;
    Ok(m.es_arrow_basis().map_err(py_err)?.representatives.iter().map(|p| p.to_text()).collect())
}

/// `G = f + Σ s_i g_i` as a string.
#[pyfunction]
fn semiuniversal(eq: &str) -> PyResult<String> {
    let m = DeformationModel::new(&equation(eq)?).map_err(py_err)?;
    Ok(m.quotient_basis().map_err(py_err)?.display())
}

#[pymodule]
#[pyo3(name = "legdef")]
fn legdef_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(is_generic, m)?)?;
    m.add_function(wrap_pyfunction!(conormal, m)?)?;
    m.add_function(wrap_pyfunction!(semigroup, m)?)?;
    m.add_function(wrap_pyfunction!(contact_act, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_basis, m)?)?;
    m.add_function(wrap_pyfunction!(es_arrow_basis, m)?)?;
    m.add_function(wrap_pyfunction!(semiuniversal, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
