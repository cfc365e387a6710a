//! Both input formats, through the public parsing entry points.

mod common;

use std::path::Path;

use cacsat::covering::{decide, Outcome};
use cacsat::formula::Relation;
use cacsat::frontend::{parse_native, parse_problem, parse_smtlib, Location, ParseError};
use common::rat;

#[test]
fn smtlib_example_one() {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/ex1.smt2")).unwrap();
    let p = parse_smtlib(&text).unwrap();
    assert_eq!(p.variables, ["x", "y"]);
    assert_eq!(p.formula, common::example1());
    assert_eq!(p.source_spans[&1], Location { line: 5, column: 9 });
    assert_eq!(p.source_spans[&2], Location { line: 6, column: 9 });
}

#[test]
fn smtlib_conjunctions_and_chains_flatten() {
    let p = parse_smtlib(
        "(set-logic QF_NRA)(declare-const x Real)(declare-const y Real)
         (assert (and (< 0 x 1) (not (= y 2.5)) true))
         (assert (! (distinct x y) :named d))
         (check-sat)",
    )
    .unwrap();
    let rels: Vec<String> = p.formula.constraints().iter().map(|c| format!("{} {} 0", c.poly, c.relation)).collect();
    assert_eq!(rels, ["-x < 0", "x - 1 < 0", "y - 5/2 != 0", "-y + x != 0"]);
}

#[test]
fn smtlib_rejects_what_it_cannot_express() {
    let decl = "(declare-fun x () Real)\n";
    for (body, feature) in [
        ("(assert (or (< x 0) (> x 1)))", "`or`"),
        ("(assert (=> (< x 0) (> x 1)))", "`=>`"),
        ("(assert (< (ite (< x 0) x 1) 0))", "`ite` in terms"),
        ("(assert (exists ((z Real)) (< z x)))", "`exists`"),
    ] {
        match parse_smtlib(&format!("{decl}{body}")) {
            Err(ParseError::UnsupportedFeature { at, feature: f }) => {
                assert_eq!(f, feature, "{body}");
                assert_eq!(at.line, 2);
            }
            other => panic!("{body}: {other:?}"),
        }
    }
    assert!(matches!(
        parse_smtlib("(assert (< z 0))"),
        Err(ParseError::UnknownSymbol { name, .. }) if name == "z"
    ));
    assert!(matches!(
        parse_smtlib("(declare-fun x () Int)(assert (< x 0))"),
        Err(ParseError::UnsupportedFeature { .. })
    ));
    assert!(matches!(parse_smtlib("(declare-fun x () Real)(assert (< (/ x x) 0))"), Err(_)));
    assert!(matches!(parse_smtlib("(declare-fun x () Real)(assert (< x 0)"), Err(ParseError::Syntax { .. })));
}

#[test]
fn native_examples() {
    let p = parse_native("vars x y\nx^2 + y^2 < 1\n(x - 3/2)^2 + (y - 3/2)^2 < 1").unwrap();
    assert_eq!(p.formula, common::example2());

    let p = parse_native("vars x\nx^2 < 0").unwrap();
    assert!(matches!(decide(&p.formula), Outcome::Unsat(_)));

    let p = parse_native("vars x y\nx^2 + y^2 < 1").unwrap();
    assert!(matches!(decide(&p.formula), Outcome::Sat(_)));
}

#[test]
fn native_numbers_are_exact() {
    let p = parse_native("vars x\n# a comment\n1.5*x >= 0.25 / 2\n").unwrap();
    let c = &p.formula.constraints()[0];
    assert_eq!(c.relation, Relation::Ge);
    assert_eq!(c.poly.constant_value(), None);
    assert_eq!(c.poly.coeffs(cacsat::arith::Variable::new(0))[1].constant_value(), Some(-rat(1, 8)));
    assert_eq!(p.source_spans[&1], Location { line: 3, column: 1 });
}

#[test]
fn native_errors_have_positions() {
    let cases = [
        ("x < 1", 1, 1),
        ("vars x\nx < \n", 2, 5),
        ("vars x\nx +* 2 < 1", 2, 4),
        ("vars x\nx < y", 2, 5),
        ("vars x\nx / x < 1", 2, 5),
    ];
    for (text, line, column) in cases {
        let at = match parse_native(text) {
            Err(ParseError::Syntax { at, .. }) | Err(ParseError::UnknownSymbol { at, .. }) => at,
            other => panic!("{text:?}: {other:?}"),
        };
        assert_eq!(at, Location { line, column }, "{text:?}");
    }
}

#[test]
fn format_is_chosen_by_extension_then_content() {
    let smt = "(declare-fun x () Real)(assert (> x 0))";
    let native = "vars x\nx > 0";
    assert!(parse_problem(Path::new("a.smt2"), smt).is_ok());
    assert!(parse_problem(Path::new("a.nra"), native).is_ok());
    assert!(parse_problem(Path::new("a.txt"), smt).is_ok());
    assert!(parse_problem(Path::new("a.txt"), native).is_ok());
    assert!(parse_problem(Path::new("a.nra"), smt).is_err());
}
