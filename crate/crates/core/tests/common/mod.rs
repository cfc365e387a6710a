//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use cacsat::arith::{BigRational, MultiPoly, UPoly, VarOrder};
use cacsat::formula::{Constraint, Formula, Relation};
use cacsat::realroots::tower::Tower;
use cacsat::realroots::RealAlgebraicNumber;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn xy() -> VarOrder {
    VarOrder::new(["x", "y"])
}

/// `(x - a)^2 + (y - b)^2 - 1`
pub fn circle(o: &VarOrder, a: BigRational, b: BigRational) -> MultiPoly {
    MultiPoly::from_terms(
        o,
        vec![
            (int(1), vec![2, 0]),
            (-(&a * int(2)), vec![1, 0]),
            (int(1), vec![0, 2]),
            (-(&b * int(2)), vec![0, 1]),
            (&a * &a + &b * &b - int(1), vec![0, 0]),
        ],
    )
    .unwrap()
}

pub fn circles(o: &VarOrder, centers: &[(BigRational, BigRational)]) -> Formula {
    let cs = centers
        .iter()
        .enumerate()
        .map(|(i, (a, b))| Constraint::new(i + 1, circle(o, a.clone(), b.clone()), Relation::Lt).unwrap())
        .collect();
    Formula::new(o.clone(), cs).unwrap()
}

pub fn example1() -> Formula {
    circles(&xy(), &[(int(0), int(0)), (int(4), int(0))])
}

pub fn example2() -> Formula {
    circles(&xy(), &[(int(0), int(0)), (rat(3, 2), rat(3, 2))])
}

/// A random nonzero polynomial in `x, y` of total degree at most `deg`,
/// with 1 to 4 terms and coefficients in `[-c, c]`.
pub fn random_poly<R: Rng>(rng: &mut R, o: &VarOrder, deg: u32, c: i64) -> MultiPoly {
    loop {
        let nterms = rng.gen_range(1..=4);
        let terms: Vec<(BigRational, Vec<u32>)> = (0..nterms)
            .map(|_| {
                let dx = rng.gen_range(0..=deg);
                let dy = rng.gen_range(0..=deg - dx);
                (int(rng.gen_range(-c..=c)), vec![dx, dy])
            })
            .collect();
        let p = MultiPoly::from_terms(o, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_formula<R: Rng>(rng: &mut R) -> Formula {
    let o = xy();
    let n = rng.gen_range(1..=3);
    let cs = (0..n)
        .map(|i| {
            let rel = Relation::ALL[rng.gen_range(0..6)];
            Constraint::new(i + 1, random_poly(rng, &o, 3, 5), rel).unwrap()
        })
        .collect();
    Formula::new(o, cs).unwrap()
}

/// Exact check that every constraint holds at `w`.
pub fn satisfies(f: &Formula, w: &[RealAlgebraicNumber]) -> bool {
    let mut t = Tower::from_sample(f.order(), w);
    f.constraints().iter().all(|c| c.holds(t.sign(&c.poly)))
}

/// Sturm sequence of a square-free polynomial.
pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(seq: &[UPoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq.iter().map(|q| q.eval(x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of a square-free `p` in `(a, b]`.
pub fn sturm_count(seq: &[UPoly], a: &BigRational, b: &BigRational) -> usize {
    variations(seq, a) - variations(seq, b)
}
