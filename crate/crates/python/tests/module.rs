//! The module run inside an embedded interpreter.

use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "cacsat").unwrap();
        cacsat_py::register(&m).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("cacsat", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            panic!("{e}");
        }
    });
}

#[test]
fn solves_and_checks() {
    run(r#"
text = "vars x y\nx^2 + y^2 < 1\n(x - 3)^2 + y^2 < 1"
r = cacsat.solve(text, pruned=True)
assert r["status"] == "unsat", r
assert cacsat.check(r["certificate"], text) == (True, "valid")
assert cacsat.check(cacsat.prune(r["certificate"]), text)[0]
assert cacsat.solve("vars x\nx > 0")["witness"] == ["1/1"]
"#);
}

#[test]
fn reports_errors_as_value_errors() {
    run(r#"
for args in [("vars x\nx <",), ("vars x\nx > 0", "json"), ("vars x\nx > 0", None, ["y"])]:
    try:
        cacsat.solve(*args)
    except ValueError:
        pass
    else:
        raise AssertionError(args)
try:
    cacsat.check("{}", "vars x\nx > 0")
except ValueError:
    pass
else:
    raise AssertionError("accepted an empty certificate")
"#);
}

#[test]
fn cells_and_roots() {
    run(r#"
cells = cacsat.cad_cells("vars x\nx^2 - 2 < 0")
assert cells[0] == "level-1: -inf < x < 1_RootOf(x^2 - 2, x) | sample=(-2/1)", cells
assert cells[2] == "level-1: 1_RootOf(x^2 - 2, x) < x < 2_RootOf(x^2 - 2, x) | sample=(0/1)", cells
assert len(cells) == 5
assert cacsat.isolate_roots([0, -1, 0, 1]) == ["-1/1", "0/1", "1/1"]
"#);
}
