//! Python module `cacsat`: solving, certificate checking, CAD cells and
//! root isolation over problem text.

use std::path::Path;

use cacsat::arith::{BigRational, UPoly, VarOrder, Variable};
use cacsat::cad::build_cad;
use cacsat::certificate::{check as check_certificate, Certificate};
use cacsat::covering::{decide, prune_certificate, Outcome};
use cacsat::frontend::cli::covering_csv;
use cacsat::frontend::{parse_problem, ParsedProblem};
use cacsat::realroots::isolate_upoly;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `format` is `"smt2"`, `"nra"` or `None` to guess from the text.
fn parse(text: &str, format: Option<&str>, order: Option<Vec<String>>) -> PyResult<ParsedProblem> {
    let name = match format {
        None => "input",
        Some("smt2") | Some("smtlib") => "input.smt2",
        Some("nra") | Some("native") => "input.nra",
        Some(other) => return Err(value_error(format!("unknown format `{other}`"))),
    };
    let mut p = parse_problem(Path::new(name), text).map_err(value_error)?;
    if let Some(names) = order {
        p.formula = p.formula.reorder(&VarOrder::new(names.iter().cloned())).map_err(value_error)?;
        p.variables = names;
    }
    Ok(p)
}

/// Decides a problem. Returns a dict with `status` (`"sat"`, `"unsat"` or
/// `"incomplete"`) and, depending on it, `witness` (one string per
/// variable), `certificate` (JSON text) or `reason`.
#[pyfunction]
#[pyo3(signature = (text, format=None, order=None, pruned=false))]
fn solve<'py>(
    py: Python<'py>,
    text: &str,
    format: Option<&str>,
    order: Option<Vec<String>>,
    pruned: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let p = parse(text, format, order)?;
    let d = PyDict::new(py);
    d.set_item("variables", p.formula.order().names())?;
    match decide(&p.formula) {
        Outcome::Sat(w) => {
            let o = p.formula.order();
            let values: Vec<String> =
                w.iter().enumerate().map(|(j, v)| v.format_in(o.name(Variable::new(j)))).collect();
            d.set_item("status", "sat")?;
            d.set_item("witness", values)?;
        }
        Outcome::Unsat(c) => {
            let c = if pruned { prune_certificate(&c) } else { c };
            d.set_item("status", "unsat")?;
            d.set_item("certificate", c.to_json())?;
        }
        Outcome::Incomplete(e) => {
            d.set_item("status", "incomplete")?;
            d.set_item("reason", e.to_string())?;
        }
    }
    Ok(d)
}

/// Checks certificate JSON against a problem. Returns `(valid, message)`.
#[pyfunction]
#[pyo3(signature = (certificate, text, format=None))]
fn check(certificate: &str, text: &str, format: Option<&str>) -> PyResult<(bool, String)> {
    let c = Certificate::from_json(certificate).map_err(value_error)?;
    let p = parse(text, format, None)?;
    let v = check_certificate(&c, &p.formula);
    Ok((v.is_valid(), v.to_string()))
}

/// Prunes certificate JSON to a small subcovering at every level.
#[pyfunction]
fn prune(certificate: &str) -> PyResult<String> {
    let c = Certificate::from_json(certificate).map_err(value_error)?;
    Ok(prune_certificate(&c).to_json())
}

/// The covering of certificate JSON as CSV, one row per interval.
#[pyfunction]
fn covering_to_csv(certificate: &str) -> PyResult<String> {
    Ok(covering_csv(&Certificate::from_json(certificate).map_err(value_error)?))
}

/// One line per leaf cell of the full decomposition.
#[pyfunction]
#[pyo3(signature = (text, format=None, order=None))]
fn cad_cells(text: &str, format: Option<&str>, order: Option<Vec<String>>) -> PyResult<Vec<String>> {
    let p = parse(text, format, order)?;
    let polys: Vec<_> = p.formula.constraints().iter().map(|c| c.poly.clone()).collect();
    let cad = build_cad(&polys, p.formula.order()).map_err(value_error)?;
    Ok(cad.cell_lines())
}

/// Real roots of an integer polynomial given by coefficients, constant
/// term first, written as `k_RootOf(p, x)` or as rationals.
#[pyfunction]
fn isolate_roots(coefficients: Vec<BigInt>) -> PyResult<Vec<String>> {
    let p = UPoly::new(coefficients.into_iter().map(BigRational::from_integer).collect());
    let roots = isolate_upoly(&p).map_err(value_error)?;
    Ok(roots.iter().map(|r| r.format_in("x")).collect())
}

#[pymodule]
#[pyo3(name = "cacsat")]
fn cacsat_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds every function to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(prune, m)?)?;
    m.add_function(wrap_pyfunction!(covering_to_csv, m)?)?;
    m.add_function(wrap_pyfunction!(cad_cells, m)?)?;
    m.add_function(wrap_pyfunction!(isolate_roots, m)?)?;
    Ok(())
}
