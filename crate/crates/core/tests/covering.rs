//! Conflict intervals, sample selection and whole runs of the covering
//! procedure on small formulas.

mod common;

use cacsat::arith::{MultiPoly, UPoly, VarOrder, Variable};
use cacsat::certificate::{check, Bound, CoveringInterval};
use cacsat::covering::{decide, prune_certificate, sample_outside, unsat_intervals, Outcome};
use cacsat::formula::{Constraint, Formula, Relation};
use cacsat::realroots::line::End;
use cacsat::realroots::RealAlgebraicNumber;
use common::{circle, example1, example2, int, rat, xy};

fn q(n: i64, d: i64) -> RealAlgebraicNumber {
    RealAlgebraicNumber::rational(rat(n, d))
}

fn at(n: i64, d: i64, closed: bool) -> Bound {
    End::Finite { value: q(n, d), closed }
}

fn span(lower: Bound, upper: Bound) -> CoveringInterval {
    CoveringInterval { lower, upper, sample: q(0, 1), reasons: vec![1], characterization: Vec::new(), children: None }
}

#[test]
fn full_line_conflict_over_the_origin() {
    let ivs = unsat_intervals(&example1(), &[q(0, 1)]);
    let far: Vec<&CoveringInterval> = ivs.iter().filter(|i| i.reasons == [2]).collect();
    assert_eq!(far.len(), 1);
    assert_eq!((far[0].lower.clone(), far[0].upper.clone()), (End::Infinite, End::Infinite));
    assert_eq!(far[0].characterization, [example1().constraints()[1].poly.clone()]);
    // The unit circle only excludes |y| >= 1 here.
    let near: Vec<(Bound, Bound)> =
        ivs.iter().filter(|i| i.reasons == [1]).map(|i| (i.lower.clone(), i.upper.clone())).collect();
    assert_eq!(near, [(End::Infinite, at(-1, 1, true)), (at(1, 1, true), End::Infinite)]);
}

#[test]
fn nothing_is_excluded_before_a_constraint_becomes_univariate() {
    let o = xy();
    let f =
        Formula::new(o.clone(), vec![Constraint::new(1, circle(&o, int(0), int(0)), Relation::Lt).unwrap()]).unwrap();
    assert!(unsat_intervals(&f, &[]).is_empty());
}

#[test]
fn both_circles_cover_the_fiber_above_three_quarters() {
    let ivs = unsat_intervals(&example2(), &[q(3, 4)]);
    assert_eq!(ivs.len(), 4);
    assert_eq!(sample_outside(&ivs), None);
    let inner = UPoly::from_ints(&[29, -48, 16]);
    let roots = cacsat::realroots::isolate_upoly(&inner).unwrap();
    let c2: Vec<&CoveringInterval> = ivs.iter().filter(|i| i.reasons == [2]).collect();
    assert_eq!(c2[0].upper, End::Finite { value: roots[0].clone(), closed: true });
    assert_eq!(c2[1].lower, End::Finite { value: roots[1].clone(), closed: true });
}

#[test]
fn samples_prefer_uncovered_interval_ends() {
    assert_eq!(sample_outside(&[span(End::Infinite, at(-1, 1, false))]), Some(q(-1, 1)));
    let four = [
        span(End::Infinite, at(1, 2, false)),
        span(at(1, 2, false), at(1, 1, false)),
        span(at(1, 1, true), at(1, 1, true)),
        span(at(1, 1, false), End::Infinite),
    ];
    assert_eq!(sample_outside(&four), Some(q(1, 2)));
    assert_eq!(sample_outside(&[span(End::Infinite, at(0, 1, true)), span(at(0, 1, true), End::Infinite)]), None);
    assert_eq!(sample_outside(&[span(at(0, 1, false), at(1, 1, false))]), Some(q(0, 1)));
    assert_eq!(sample_outside(&[]), Some(q(0, 1)));
}

#[test]
fn nowhere_true_constraints_give_one_interval() {
    let o = VarOrder::new(["x"]);
    let x2 = MultiPoly::monomial(&o, Variable::new(0), 2, int(1));
    let f = Formula::new(o, vec![Constraint::new(1, x2, Relation::Lt).unwrap()]).unwrap();
    let Outcome::Unsat(cert) = decide(&f) else { panic!("x^2 < 0 is unsatisfiable") };
    assert_eq!(cert.covering.len(), 1);
    assert!(cert.covering[0].is_leaf());
    assert!(check(&cert, &f).is_valid());

    let o = xy();
    let y2 = &MultiPoly::monomial(&o, Variable::new(1), 2, int(1)) + &MultiPoly::one(&o);
    let f = Formula::new(o, vec![Constraint::new(1, y2, Relation::Lt).unwrap()]).unwrap();
    let Outcome::Unsat(cert) = decide(&f) else { panic!("y^2 + 1 < 0 is unsatisfiable") };
    let cert = prune_certificate(&cert);
    assert_eq!(cert.covering.len(), 1);
    assert_eq!((cert.covering[0].lower.clone(), cert.covering[0].upper.clone()), (End::Infinite, End::Infinite));
}

#[test]
fn generalization_stops_at_the_nearest_projection_root() {
    let Outcome::Unsat(cert) = decide(&example2()) else { panic!() };
    let top = &cert.covering[0];
    assert_eq!((top.lower.clone(), top.upper.clone()), (End::Infinite, at(1, 2, false)));
    assert_eq!(top.sample, q(0, 1));
    let point = cert.covering.iter().find(|i| i.lower == at(1, 2, true)).unwrap();
    assert_eq!(point.upper, at(1, 2, true));
}

#[test]
fn every_relation_is_decided() {
    let o = VarOrder::new(["x"]);
    let x = MultiPoly::var(&o, Variable::new(0));
    let sq = &(&x * &x) - &MultiPoly::constant(&o, int(2));
    for rel in Relation::ALL {
        let f = Formula::new(
            o.clone(),
            vec![Constraint::new(1, sq.clone(), rel).unwrap(), Constraint::new(2, x.clone(), Relation::Gt).unwrap()],
        )
        .unwrap();
        match decide(&f) {
            Outcome::Sat(w) => assert!(common::satisfies(&f, &w), "{rel}"),
            other => panic!("{rel}: {other:?}"),
        }
    }
    // x^2 = 2 and x > 2 has no solution; the certificate isolates sqrt 2.
    let f = Formula::new(
        o.clone(),
        vec![
            Constraint::new(1, sq.clone(), Relation::Eq).unwrap(),
            Constraint::new(2, &x - &MultiPoly::constant(&o, int(2)), Relation::Gt).unwrap(),
        ],
    )
    .unwrap();
    let Outcome::Unsat(cert) = decide(&f) else { panic!() };
    assert!(check(&cert, &f).is_valid());
}

#[test]
fn witnesses_are_exact() {
    let Outcome::Sat(w) =
        decide(&cacsat::frontend::parse_native("vars x y\ny^2 = 2\ny > 0\nx*y <= 1").unwrap().formula)
    else {
        panic!()
    };
    assert_eq!(w[0], q(0, 1));
    assert_eq!(w[1].format_in("y"), "2_RootOf(y^2 - 2, y)");
}
