//! Covering against the CAD oracle on random three-variable conjunctions.

mod common;

use cacsat::arith::{BigRational, MultiPoly, VarOrder};
use cacsat::cad::{decide_by_cad, CadDecision};
use cacsat::certificate::check;
use cacsat::covering::{decide, Outcome};
use cacsat::formula::{Constraint, Formula, Relation};
use cacsat::realroots::tower::Tower;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quadratic<R: Rng>(rng: &mut R, o: &VarOrder) -> MultiPoly {
    loop {
        let n = rng.gen_range(1..=4);
        let terms: Vec<(BigRational, Vec<u32>)> = (0..n)
            .map(|_| {
                let a = rng.gen_range(0..=2);
                let b = rng.gen_range(0..=2 - a);
                let c = rng.gen_range(0..=2 - a - b);
                (common::int(rng.gen_range(-3..=3)), vec![a, b, c])
            })
            .collect();
        let p = MultiPoly::from_terms(o, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn three_variables_agree_with_cad() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let o = VarOrder::new(["x", "y", "z"]);
    let (mut decided, mut incomplete) = (0, 0);
    for _ in 0..150 {
        let n = rng.gen_range(1..=3);
        let cs = (0..n)
            .map(|k| Constraint::new(k + 1, quadratic(&mut rng, &o), Relation::ALL[rng.gen_range(0..6)]).unwrap())
            .collect();
        let f = Formula::new(o.clone(), cs).unwrap();
        match (decide(&f), decide_by_cad(&f)) {
            (Outcome::Sat(w), Ok(CadDecision::Sat(_))) => {
                assert!(common::satisfies(&f, &w), "{f}");
                decided += 1;
            }
            (Outcome::Unsat(c), Ok(CadDecision::Unsat)) => {
                let v = check(&c, &f);
                assert!(v.is_valid(), "{f}: {v}");
                decided += 1;
            }
            (Outcome::Incomplete(e), _) => {
                // Incompleteness must be genuine: the reported polynomial
                // vanishes identically over the reported sample.
                let mut t = Tower::from_sample(&o, &e.sample);
                assert!(!e.poly.is_zero());
                assert!(t.fiber_vanishes(&e.poly), "{f}: {e}");
                incomplete += 1;
            }
            (_, Err(_)) => incomplete += 1,
            (a, b) => panic!("disagreement on {f}: {a:?} vs {b:?}"),
        }
    }
    assert!(decided >= 120, "decided {decided}, incomplete {incomplete}");
}
