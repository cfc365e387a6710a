//! Descartes' rule of signs with bisection.
//!
//! The isolation routine is generic in the coefficient type so the same code
//! runs over the rationals and over extension fields whose elements only
//! expose a sign oracle.

use num_traits::{One, Zero};

use crate::arith::{BigRational, MultiPoly, Sign};

/// What the bisection needs from a coefficient: addition and scaling by a
/// rational. Signs come from an external oracle.
pub trait Coefficient: Clone {
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, q: &BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }
}

impl Coefficient for MultiPoly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn scale(&self, q: &BigRational) -> Self {
        MultiPoly::scale(self, q)
    }
}

/// An isolated root: either found exactly, or the only root in an open
/// interval whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isolated {
    Exact(BigRational),
    Interval(BigRational, BigRational),
}

pub fn horner<C: Coefficient>(coeffs: &[C], x: &BigRational) -> C {
    let mut acc = coeffs.last().expect("nonempty coefficient list").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.scale(x).add(c);
    }
    acc
}

fn taylor_shift<C: Coefficient>(coeffs: &mut [C], a: &BigRational) {
    let n = coeffs.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = coeffs[j + 1].scale(a);
            coeffs[j] = coeffs[j].add(&t);
        }
    }
}

/// Upper bound on the number of roots in `(a, b)`, exact when it is 0 or 1.
fn descartes_bound<C: Coefficient>(
    coeffs: &[C],
    a: &BigRational,
    b: &BigRational,
    sign: &mut dyn FnMut(&C) -> Sign,
) -> usize {
    let mut q = coeffs.to_vec();
    taylor_shift(&mut q, a);
    let w = b - a;
    let mut f = BigRational::one();
    for c in q.iter_mut().skip(1) {
        f *= &w;
        *c = c.scale(&f);
    }
    q.reverse();
    taylor_shift(&mut q, &BigRational::one());
    let mut last = Sign::Zero;
    let mut count = 0;
    for c in &q {
        let s = sign(c);
        if s != Sign::Zero {
            if last != Sign::Zero && s != last {
                count += 1;
                if count > 1 {
                    return count;
                }
            }
            last = s;
        }
    }
    count
}

/// Isolates the real roots of a square-free polynomial (coefficients low
/// degree first, nonzero leading coefficient) lying in `(-bound, bound)`.
/// Results are in increasing order.
pub fn isolate<C: Coefficient>(coeffs: &[C], bound: &BigRational, sign: &mut dyn FnMut(&C) -> Sign) -> Vec<Isolated> {
    let mut out = Vec::new();
    if coeffs.len() < 2 {
        return out;
    }
    let a = -bound.clone();
    let b = bound.clone();
    let sa = sign(&horner(coeffs, &a));
    let sb = sign(&horner(coeffs, &b));
    bisect(coeffs, a, sa, b, sb, sign, &mut out);
    out
}

fn bisect<C: Coefficient>(
    coeffs: &[C],
    a: BigRational,
    sa: Sign,
    b: BigRational,
    sb: Sign,
    sign: &mut dyn FnMut(&C) -> Sign,
    out: &mut Vec<Isolated>,
) {
    let count = descartes_bound(coeffs, &a, &b, sign);
    if count == 0 {
        return;
    }
    if count == 1 && sa != Sign::Zero && sb != Sign::Zero {
        out.push(Isolated::Interval(a, b));
        return;
    }
    let two = BigRational::from_integer(2.into());
    let m = (&a + &b) / two;
    let sm = sign(&horner(coeffs, &m));
    bisect(coeffs, a, sa, m.clone(), sm, sign, out);
    if sm == Sign::Zero {
        out.push(Isolated::Exact(m.clone()));
    }
    bisect(coeffs, m, sm, b, sb, sign, out);
}

/// Bound `B` (a power of two) with all roots of the polynomial strictly
/// inside `(-B, B)`, from bounds on the coefficient magnitudes.
pub fn cauchy_bound(max_abs_lower: &BigRational, min_abs_leading: &BigRational) -> BigRational {
    let b = max_abs_lower / min_abs_leading + BigRational::one();
    let mut p = BigRational::one();
    while p <= b {
        p = &p + &p;
    }
    p
}

pub fn rational_sign(q: &BigRational) -> Sign {
    if q.is_zero() {
        Sign::Zero
    } else {
        Sign::of(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::arith::UPoly;

    fn roots_of(p: &UPoly) -> Vec<Isolated> {
        isolate(p.coeffs(), &p.root_bound(), &mut rational_sign)
    }

    #[test]
    fn isolates_unit_roots() {
        let r = roots_of(&UPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(r.len(), 2);
        // 0 is the first midpoint, -1 and 1 lie strictly inside halves
        for iso in &r {
            if let Isolated::Interval(a, b) = iso {
                assert!(a < b);
            }
        }
    }

    #[test]
    fn midpoint_roots_are_exact() {
        let r = roots_of(&UPoly::from_ints(&[0, -1, 0, 1])); // x^3 - x
        assert!(r.contains(&Isolated::Exact(int(0))));
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn no_roots_for_positive_quadratic() {
        assert!(roots_of(&UPoly::from_ints(&[7, -6, 2])).is_empty());
    }

    #[test]
    fn endpoints_are_never_roots() {
        let p = UPoly::from_ints(&[0, 1, -3, 2]); // x(x-1)(2x-1)
        for iso in roots_of(&p) {
            if let Isolated::Interval(a, b) = iso {
                assert_ne!(p.sign_at(&a), Sign::Zero);
                assert_ne!(p.sign_at(&b), Sign::Zero);
            }
        }
        assert_eq!(roots_of(&p).len(), 3);
    }
}
