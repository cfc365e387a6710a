//! Algebraic invariants against independent oracles.

mod common;

use std::cmp::Ordering;

use cacsat::arith::{
    discriminant, gcd, resultant, square_free_basis, sylvester_resultant, BigRational, MultiPoly, Sign, UPoly, Variable,
};
use cacsat::formula::{Constraint, Formula, Relation};
use cacsat::frontend::{parse_native, parse_smtlib, to_native};
use cacsat::realroots::line::dyadic_between_rationals;
use cacsat::realroots::{compare, isolate_upoly, rational_between, sign_at_upoly, RealAlgebraicNumber};
use common::{int, rat, xy};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn bivariate() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-6i64..=6, 0u32..=3, 0u32..=3), 1..6).prop_filter_map("zero polynomial", |terms| {
        let o = xy();
        let p = MultiPoly::from_terms(&o, terms.into_iter().map(|(c, a, b)| (int(c), vec![a, b])).collect::<Vec<_>>())
            .unwrap();
        (!p.is_zero()).then_some(p)
    })
}

fn univariate() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-12i64..=12, 2..8).prop_filter_map("constant", |cs| {
        let p = UPoly::from_ints(&cs);
        (p.degree() >= 1).then_some(p)
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-200i64..=200, 1i64..=50).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn resultant_matches_sylvester(p in bivariate(), q in bivariate()) {
        let y = Variable::new(1);
        prop_assume!(p.degree(y) >= 1 && q.degree(y) >= 1);
        prop_assert_eq!(resultant(&p, &q, y).unwrap(), sylvester_resultant(&p, &q, y).unwrap());
    }

    #[test]
    fn resultant_vanishes_exactly_on_common_factors(p in bivariate(), q in bivariate()) {
        let y = Variable::new(1);
        prop_assume!(p.degree(y) >= 1 && q.degree(y) >= 1);
        let shared = gcd(&p, &q).degree(y) >= 1;
        prop_assert_eq!(resultant(&p, &q, y).unwrap().is_zero(), shared);
    }

    #[test]
    fn discriminant_of_a_square_vanishes(p in bivariate()) {
        let y = Variable::new(1);
        prop_assume!(p.degree(y) >= 1);
        prop_assert!(discriminant(&(&p * &p), y).unwrap().is_zero());
    }

    #[test]
    fn isolation_agrees_with_sturm(p in univariate()) {
        let sf = p.square_free();
        let roots = isolate_upoly(&p).unwrap();
        let seq = common::sturm_sequence(&sf);
        let b = sf.root_bound() + int(1);
        prop_assert_eq!(roots.len(), common::sturm_count(&seq, &-b.clone(), &b));
        for w in roots.windows(2) {
            prop_assert_eq!(compare(&w[0], &w[1]), Ordering::Less);
        }
        for r in &roots {
            prop_assert_eq!(sign_at_upoly(&p, r), Sign::Zero);
            let (lo, hi) = r.bounds();
            if lo != hi {
                prop_assert_eq!(common::sturm_count(&seq, &lo, &hi), 1);
            }
        }
    }

    #[test]
    fn signs_at_rationals_match_evaluation(p in univariate(), q in rational()) {
        let at = RealAlgebraicNumber::rational(q.clone());
        let v = p.eval(&q);
        let expected = if v > int(0) { Sign::Pos } else if v < int(0) { Sign::Neg } else { Sign::Zero };
        prop_assert_eq!(sign_at_upoly(&p, &at), expected);
    }

    #[test]
    fn dyadic_points_lie_strictly_between(a in rational(), b in rational()) {
        prop_assume!(a < b);
        let m = dyadic_between_rationals(Some(&a), Some(&b)).unwrap();
        prop_assert!(a < m && m < b);
        let d = m.denom();
        prop_assert!((d & (d - BigInt::from(1u8))) == BigInt::from(0u8));
        prop_assert!(dyadic_between_rationals(Some(&a), None).unwrap() > a);
        prop_assert!(dyadic_between_rationals(None, Some(&a)).unwrap() < a);
    }

    #[test]
    fn rationals_between_algebraic_roots(p in univariate()) {
        let roots = isolate_upoly(&p).unwrap();
        for w in roots.windows(2) {
            let m = rational_between(Some(&w[0]), Some(&w[1])).unwrap();
            let m = RealAlgebraicNumber::rational(m);
            prop_assert_eq!(compare(&w[0], &m), Ordering::Less);
            prop_assert_eq!(compare(&m, &w[1]), Ordering::Less);
        }
    }

    #[test]
    fn square_free_basis_is_pairwise_coprime(ps in prop::collection::vec(bivariate(), 1..4)) {
        let basis = square_free_basis(&ps);
        for (i, a) in basis.iter().enumerate() {
            prop_assert!(!a.is_constant());
            for b in &basis[i + 1..] {
                prop_assert!(gcd(a, b).is_constant(), "{} and {}", a, b);
            }
        }
        // Each input has the same zeros as the product of the basis
        // elements dividing it, and each element divides some input.
        for p in ps.iter().filter(|p| !p.is_constant()) {
            let mut prod = MultiPoly::one(p.order());
            for b in basis.iter().filter(|b| p.div_exact(b).is_some()) {
                prod = &prod * b;
            }
            prop_assert!(prod.pow(p.total_degree()).div_exact(p).is_some(), "{} against {}", p, prod);
        }
        for b in &basis {
            prop_assert!(ps.iter().any(|p| p.div_exact(b).is_some()), "{} divides no input", b);
        }
    }

    #[test]
    fn native_format_round_trips(ps in prop::collection::vec((bivariate(), 0usize..6), 1..4)) {
        let o = xy();
        let cs = ps.into_iter().enumerate().map(|(i, (p, r))| Constraint::new(i + 1, p, Relation::ALL[r]).unwrap()).collect();
        let f = Formula::new(o, cs).unwrap();
        let text = format!("vars x y\n{}", f.constraints().iter().map(|c| format!("{} {} 0\n", c.poly, c.relation)).collect::<String>());
        let parsed = parse_native(&text).unwrap();
        prop_assert_eq!(&parsed.formula, &f);
        let again = parse_native(&to_native(&parsed)).unwrap();
        prop_assert_eq!(again.formula, f);
    }

    #[test]
    fn negated_atoms_flip_relations(p in bivariate(), r in 0usize..6) {
        let rel = Relation::ALL[r];
        let smt = |rel: Relation| match rel {
            Relation::Ne => "distinct".to_string(),
            Relation::Eq => "=".to_string(),
            other => other.symbol().to_string(),
        };
        let term = prefix(&p);
        let text = format!("(declare-fun x () Real)(declare-fun y () Real)(assert (not ({} {term} 0)))", smt(rel));
        let parsed = parse_smtlib(&text).unwrap();
        prop_assert_eq!(parsed.formula.constraints()[0].relation, rel.negate());
        prop_assert_eq!(&parsed.formula.constraints()[0].poly, &p);
    }
}

/// SMT-LIB prefix form of a bivariate polynomial.
fn prefix(p: &MultiPoly) -> String {
    let terms: Vec<String> = p
        .terms()
        .map(|(m, c)| {
            let n = c.numer().abs();
            let magnitude = if c.is_integer() { format!("{n}") } else { format!("(/ {n} {})", c.denom()) };
            let mut factors = vec![if c.is_negative() { format!("(- {magnitude})") } else { magnitude }];
            for (v, name) in ["x", "y"].iter().enumerate() {
                factors.extend(std::iter::repeat(name.to_string()).take(m.exp(v) as usize));
            }
            format!("(* {})", factors.join(" "))
        })
        .collect();
    format!("(+ {} 0)", terms.join(" "))
}
