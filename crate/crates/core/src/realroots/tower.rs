//! Exact arithmetic at sample points whose coordinates are algebraic over
//! the previous coordinates.
//!
//! Coordinate `j` is either rational or the unique root in `(lo, hi)` of a
//! polynomial `t_j`, monic in `x_j`, whose coefficients are polynomials in
//! the earlier algebraic coordinates. Elements of the field generated by the
//! coordinates are plain polynomials, reduced modulo the `t_j`.
//!
//! The `t_j` need not be irreducible. Whenever a computation finds a
//! nontrivial factor of some `t_j`, the factor that keeps the coordinate as
//! a root replaces `t_j`, so zero tests and inverses stay exact without
//! factoring.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::interval::RatInterval;
use super::isolate::{cauchy_bound, isolate, Isolated};
use super::line::RationalBounds;
use super::number::{isolate_upoly, RealAlgebraicNumber};
use crate::arith::{resultant, BigRational, MultiPoly, Sign, UPoly, VarOrder, Variable};

#[derive(Clone, Debug)]
struct AlgCoord {
    t: MultiPoly,
    lo: BigRational,
    hi: BigRational,
    sign_lo: Sign,
}

#[derive(Clone, Debug)]
enum Coord {
    Rational(BigRational),
    Algebraic(AlgCoord),
}

/// A root of a polynomial over the tower, in the next variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRoot {
    poly: MultiPoly,
    lo: BigRational,
    hi: BigRational,
    sign_lo: Sign,
}

/// A value of the next variable above the current sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberValue {
    Rational(BigRational),
    Root(FiberRoot),
}

impl FiberValue {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FiberValue::Rational(q) => Some(q),
            FiberValue::Root(_) => None,
        }
    }

    /// Rationals `lo <= value <= hi`.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            FiberValue::Rational(q) => (q.clone(), q.clone()),
            FiberValue::Root(r) => (r.lo.clone(), r.hi.clone()),
        }
    }
}

/// A sample point under construction, one coordinate per level.
#[derive(Clone, Debug)]
pub struct Tower {
    order: VarOrder,
    coords: Vec<Coord>,
}

impl Tower {
    pub fn new(order: &VarOrder) -> Tower {
        Tower { order: order.clone(), coords: Vec::new() }
    }

    pub fn from_sample(order: &VarOrder, sample: &[RealAlgebraicNumber]) -> Tower {
        let mut t = Tower::new(order);
        for r in sample {
            t.push_number(r);
        }
        t
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    fn var(j: usize) -> Variable {
        Variable::new(j)
    }

    fn x_pow(&self, j: usize, d: u32) -> MultiPoly {
        MultiPoly::monomial(&self.order, Self::var(j), d, BigRational::one())
    }

    pub fn push(&mut self, v: FiberValue) {
        assert!(self.len() < self.order.len(), "tower is already full");
        self.coords.push(match v {
            FiberValue::Rational(q) => Coord::Rational(q),
            FiberValue::Root(r) => Coord::Algebraic(AlgCoord { t: r.poly, lo: r.lo, hi: r.hi, sign_lo: r.sign_lo }),
        });
    }

    pub fn push_number(&mut self, r: &RealAlgebraicNumber) {
        let j = self.len();
        let v = match r {
            RealAlgebraicNumber::Rational(q) => FiberValue::Rational(q.clone()),
            RealAlgebraicNumber::Algebraic(a) => {
                let monic = a.defpoly().monic();
                FiberValue::Root(FiberRoot {
                    poly: monic.to_multi(&self.order, Self::var(j)),
                    lo: a.lo().clone(),
                    hi: a.hi().clone(),
                    sign_lo: a.defpoly().sign_at(a.lo()),
                })
            }
        };
        self.push(v);
    }

    pub fn pop(&mut self) -> Option<FiberValue> {
        self.coords.pop().map(|c| match c {
            Coord::Rational(q) => FiberValue::Rational(q),
            Coord::Algebraic(a) => FiberValue::Root(FiberRoot { poly: a.t, lo: a.lo, hi: a.hi, sign_lo: a.sign_lo }),
        })
    }

    /// Reduces modulo the coordinates below `limit`.
    fn reduce_to(&self, p: &MultiPoly, limit: usize) -> MultiPoly {
        let mut p = p.clone();
        for j in (0..limit.min(self.len())).rev() {
            let v = Self::var(j);
            if !p.involves(v) {
                continue;
            }
            match &self.coords[j] {
                Coord::Rational(q) => p = p.substitute(v, q),
                Coord::Algebraic(a) => {
                    if p.degree(v) >= a.t.degree(v) {
                        p = p.rem_monic(&a.t, v);
                    }
                }
            }
        }
        p
    }

    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        self.reduce_to(p, self.len())
    }

    fn coord_interval(&self, j: usize) -> RatInterval {
        match &self.coords[j] {
            Coord::Rational(q) => RatInterval::point(q.clone()),
            Coord::Algebraic(a) => RatInterval::new(a.lo.clone(), a.hi.clone()),
        }
    }

    /// Encloses the value of an element over the current boxes.
    fn interval_eval(&self, p: &MultiPoly) -> RatInterval {
        let boxes: Vec<RatInterval> = (0..self.len()).map(|j| self.coord_interval(j)).collect();
        let mut acc = RatInterval::point(BigRational::zero());
        for (m, c) in p.terms() {
            let mut term = RatInterval::point(c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&boxes[j].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    fn bisect_coord(&mut self, j: usize) {
        let a = match &self.coords[j] {
            Coord::Algebraic(a) => a.clone(),
            Coord::Rational(_) => return,
        };
        let m = (&a.lo + &a.hi) / BigRational::from_integer(2.into());
        let s = self.sign(&a.t.substitute(Self::var(j), &m));
        let Coord::Algebraic(c) = &mut self.coords[j] else { unreachable!() };
        if s == Sign::Zero {
            self.coords[j] = Coord::Rational(m);
        } else if s == c.sign_lo {
            c.lo = m;
        } else {
            c.hi = m;
        }
    }

    /// Exact sign of an element (a polynomial in the assigned variables).
    pub fn sign(&mut self, p: &MultiPoly) -> Sign {
        let mut p = self.reduce(p);
        let mut zero_checked = false;
        loop {
            if let Some(c) = p.constant_value() {
                return Sign::of(&c);
            }
            if let Some(s) = self.interval_eval(&p).sign() {
                return s;
            }
            if !zero_checked {
                if self.is_zero_reduced(&p) {
                    return Sign::Zero;
                }
                zero_checked = true;
            }
            for j in 0..self.len() {
                if p.involves(Self::var(j)) {
                    self.bisect_coord(j);
                }
            }
            p = self.reduce(&p);
        }
    }

    pub fn is_zero(&mut self, p: &MultiPoly) -> bool {
        self.sign(p) == Sign::Zero
    }

    /// Zero test for a reduced, nonconstant element: its main variable's
    /// coordinate must be a root of the gcd with that coordinate's `t`.
    fn is_zero_reduced(&mut self, p: &MultiPoly) -> bool {
        let j = p.main_var().expect("nonconstant element").index;
        let xj = Self::var(j);
        let a = match &self.coords[j] {
            Coord::Algebraic(a) => a.clone(),
            Coord::Rational(_) => unreachable!("reduced elements have no rational variables"),
        };
        let g = self.kgcd(p, &a.t, j);
        if g.degree(xj) == 0 {
            return false;
        }
        let slo = self.sign(&g.substitute(xj, &a.lo));
        let shi = self.sign(&g.substitute(xj, &a.hi));
        if slo != shi {
            self.set_defpoly(j, g, slo);
            true
        } else {
            let rest = self.kdivrem(&a.t, &g, j).0;
            let s = self.sign(&rest.substitute(xj, &a.lo));
            self.set_defpoly(j, rest, s);
            false
        }
    }

    fn set_defpoly(&mut self, j: usize, t: MultiPoly, sign_lo: Sign) {
        if let Coord::Algebraic(a) = &mut self.coords[j] {
            a.t = t;
            a.sign_lo = sign_lo;
        }
    }

    /// Drops leading coefficients (in `x_j`) that vanish at the sample.
    fn trim(&mut self, p: &MultiPoly, j: usize) -> MultiPoly {
        let xj = Self::var(j);
        let mut p = p.clone();
        loop {
            if p.is_zero() {
                return p;
            }
            let lc = p.leading_coeff_in(xj);
            if self.sign(&lc) != Sign::Zero {
                return p;
            }
            let d = p.degree(xj);
            p = &p - &(&lc * &self.x_pow(j, d));
        }
    }

    /// `b` scaled by `inv`, an inverse of its leading coefficient, with the
    /// leading coefficient set to exactly 1.
    fn monic_with(&self, b: &MultiPoly, inv: &MultiPoly, j: usize) -> MultiPoly {
        let xj = Self::var(j);
        let d = b.degree(xj);
        let lead = &b.leading_coeff_in(xj) * &self.x_pow(j, d);
        let lower = b - &lead;
        &self.reduce_to(&(&lower * inv), j) + &self.x_pow(j, d)
    }

    fn kmonic(&mut self, a: &MultiPoly, j: usize) -> MultiPoly {
        let lc = a.leading_coeff_in(Self::var(j));
        let inv = self.inverse(&lc, j);
        self.monic_with(a, &inv, j)
    }

    /// Inverse of an element of the field below level `j`; the element must
    /// be nonzero at the sample.
    fn inverse(&mut self, e: &MultiPoly, j: usize) -> MultiPoly {
        loop {
            let e = self.reduce_to(e, j);
            if let Some(c) = e.constant_value() {
                assert!(!c.is_zero(), "inverse of zero");
                return MultiPoly::constant(&self.order, c.recip());
            }
            let i = e.main_var().unwrap().index;
            let xi = Self::var(i);
            let a = match &self.coords[i] {
                Coord::Algebraic(a) => a.clone(),
                Coord::Rational(_) => unreachable!("reduced elements have no rational variables"),
            };
            let (g, u) = self.kext_gcd(&e, &a.t, i);
            if g.degree(xi) == 0 {
                return self.reduce_to(&u, j);
            }
            let rest = self.kdivrem(&a.t, &g, i).0;
            let s = self.sign(&rest.substitute(xi, &a.lo));
            self.set_defpoly(i, rest, s);
        }
    }

    /// Division with remainder in `x_j` over the field below level `j`.
    /// `b` must have a leading coefficient that is nonzero at the sample.
    fn kdivrem(&mut self, a: &MultiPoly, b: &MultiPoly, j: usize) -> (MultiPoly, MultiPoly) {
        let xj = Self::var(j);
        let db = b.degree(xj);
        let binv = self.inverse(&b.leading_coeff_in(xj), j);
        let bm = self.monic_with(b, &binv, j);
        let mut q = MultiPoly::zero(&self.order);
        let reduced = self.reduce_to(a, j);
        let mut r = self.trim(&reduced, j);
        while !r.is_zero() && r.degree(xj) >= db {
            let dr = r.degree(xj);
            let term = &r.leading_coeff_in(xj) * &self.x_pow(j, dr - db);
            q = &q + &term;
            let next = self.reduce_to(&(&r - &(&term * &bm)), j);
            r = self.trim(&next, j);
        }
        (self.reduce_to(&(&q * &binv), j), r)
    }

    /// Monic gcd in `x_j` over the field below level `j`; zero if both are
    /// zero at the sample.
    fn kgcd(&mut self, a: &MultiPoly, b: &MultiPoly, j: usize) -> MultiPoly {
        let xj = Self::var(j);
        let ra = self.reduce_to(a, j);
        let rb = self.reduce_to(b, j);
        let mut a = self.trim(&ra, j);
        let mut b = self.trim(&rb, j);
        if a.degree(xj) < b.degree(xj) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = self.kdivrem(&a, &b, j).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        self.kmonic(&a, j)
    }

    /// `(g, u)` with `u * e = g` modulo `t`, `g` the monic gcd, all in `x_i`.
    fn kext_gcd(&mut self, e: &MultiPoly, t: &MultiPoly, i: usize) -> (MultiPoly, MultiPoly) {
        let xi = Self::var(i);
        let mut r0 = t.clone();
        let re = self.reduce_to(e, i);
        let mut r1 = self.trim(&re, i);
        let mut s0 = MultiPoly::zero(&self.order);
        let mut s1 = MultiPoly::one(&self.order);
        while !r1.is_zero() {
            let (q, r) = self.kdivrem(&r0, &r1, i);
            let s = self.reduce_to(&(&s0 - &(&q * &s1)), i);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let inv = self.inverse(&r0.leading_coeff_in(xi), i);
        let g = self.monic_with(&r0, &inv, i);
        let u = self.reduce_to(&(&s0 * &inv), i);
        (g, u)
    }

    /// Whether `p`, as a polynomial in the next variable, vanishes
    /// identically above the sample.
    pub fn fiber_vanishes(&mut self, p: &MultiPoly) -> bool {
        let j = self.len();
        let r = self.reduce(p);
        self.trim(&r, j).is_zero()
    }

    /// Real roots of `p` in the next variable above the sample, increasing.
    /// `None` if `p` vanishes identically there.
    pub fn fiber_roots(&mut self, p: &MultiPoly) -> Option<Vec<FiberValue>> {
        let j = self.len();
        let xj = Self::var(j);
        let reduced = self.reduce(p);
        let p = self.trim(&reduced, j);
        if p.is_zero() {
            return None;
        }
        if p.degree(xj) == 0 {
            return Some(Vec::new());
        }
        if let Some(u) = UPoly::from_multi(&p, xj) {
            let roots = isolate_upoly(&u).expect("nonzero polynomial");
            return Some(roots.into_iter().map(|r| self.fiber_from_number(&r)).collect());
        }
        let dp = p.derivative(xj);
        let g = self.kgcd(&p, &dp, j);
        let q = if g.degree(xj) > 0 { self.kdivrem(&p, &g, j).0 } else { p };
        let q = self.kmonic(&q, j);
        let coeffs = q.coeffs_in(xj);
        let mut max_abs = BigRational::zero();
        for c in &coeffs[..coeffs.len() - 1] {
            let iv = self.interval_eval(c);
            let m = iv.lo.abs().max(iv.hi.abs());
            if m > max_abs {
                max_abs = m;
            }
        }
        let bound = cauchy_bound(&max_abs, &BigRational::one());
        let isolated = isolate(&coeffs, &bound, &mut |c: &MultiPoly| self.sign(c));
        let mut out = Vec::with_capacity(isolated.len());
        for iso in isolated {
            out.push(match iso {
                Isolated::Exact(m) => FiberValue::Rational(m),
                Isolated::Interval(lo, hi) => {
                    let sign_lo = self.sign(&q.substitute(xj, &lo));
                    FiberValue::Root(FiberRoot { poly: q.clone(), lo, hi, sign_lo })
                }
            });
        }
        Some(out)
    }

    /// A number as a value of the next variable.
    pub fn fiber_from_number(&self, r: &RealAlgebraicNumber) -> FiberValue {
        let j = self.len();
        match r {
            RealAlgebraicNumber::Rational(q) => FiberValue::Rational(q.clone()),
            RealAlgebraicNumber::Algebraic(a) => FiberValue::Root(FiberRoot {
                poly: a.defpoly().monic().to_multi(&self.order, Self::var(j)),
                lo: a.lo().clone(),
                hi: a.hi().clone(),
                sign_lo: a.defpoly().sign_at(a.lo()),
            }),
        }
    }

    fn fiber_bisect(&mut self, v: &FiberValue) -> FiberValue {
        match v {
            FiberValue::Rational(_) => v.clone(),
            FiberValue::Root(r) => {
                let m = (&r.lo + &r.hi) / BigRational::from_integer(2.into());
                let s = self.sign(&r.poly.substitute(Self::var(self.len()), &m));
                let mut next = r.clone();
                if s == Sign::Zero {
                    return FiberValue::Rational(m);
                } else if s == r.sign_lo {
                    next.lo = m;
                } else {
                    next.hi = m;
                }
                FiberValue::Root(next)
            }
        }
    }

    /// The same value with an enclosing interval of width at most `max_width`.
    pub fn fiber_refine(&mut self, v: &FiberValue, max_width: &BigRational) -> FiberValue {
        let mut cur = v.clone();
        loop {
            let (lo, hi) = cur.bounds();
            if &(&hi - &lo) <= max_width {
                return cur;
            }
            cur = self.fiber_bisect(&cur);
        }
    }

    pub fn fiber_cmp_rational(&mut self, v: &FiberValue, q: &BigRational) -> Ordering {
        match v {
            FiberValue::Rational(r) => r.cmp(q),
            FiberValue::Root(r) => {
                if *q <= r.lo {
                    return Ordering::Greater;
                }
                if *q >= r.hi {
                    return Ordering::Less;
                }
                let s = self.sign(&r.poly.substitute(Self::var(self.len()), q));
                if s == Sign::Zero {
                    Ordering::Equal
                } else if s == r.sign_lo {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Exact order of two values of the next variable.
    pub fn fiber_cmp(&mut self, a: &FiberValue, b: &FiberValue) -> Ordering {
        let (ra, rb) = match (a, b) {
            (FiberValue::Rational(x), FiberValue::Rational(y)) => return x.cmp(y),
            (FiberValue::Root(_), FiberValue::Rational(q)) => return self.fiber_cmp_rational(a, q),
            (FiberValue::Rational(q), FiberValue::Root(_)) => return self.fiber_cmp_rational(b, q).reverse(),
            (FiberValue::Root(x), FiberValue::Root(y)) => (x, y),
        };
        if ra == rb {
            return Ordering::Equal;
        }
        let j = self.len();
        let xj = Self::var(j);
        let mut g = None;
        let mut a = FiberValue::Root(ra.clone());
        let mut b = FiberValue::Root(rb.clone());
        loop {
            let (al, ah) = a.bounds();
            let (bl, bh) = b.bounds();
            if a.as_rational().is_some() || b.as_rational().is_some() {
                return self.fiber_cmp(&a, &b);
            }
            if ah <= bl {
                return Ordering::Less;
            }
            if bh <= al {
                return Ordering::Greater;
            }
            if g.is_none() {
                let common = self.kgcd(&ra.poly, &rb.poly, j);
                if common.degree(xj) > 0 {
                    let lo = al.max(bl);
                    let hi = ah.min(bh);
                    let slo = self.sign(&common.substitute(xj, &lo));
                    let shi = self.sign(&common.substitute(xj, &hi));
                    if slo != shi {
                        return Ordering::Equal;
                    }
                }
                g = Some(common);
            }
            a = self.fiber_bisect(&a);
            b = self.fiber_bisect(&b);
        }
    }

    /// Exact sign of `p` at the sample extended by `v`.
    pub fn fiber_sign(&mut self, p: &MultiPoly, v: &FiberValue) -> Sign {
        let j = self.len();
        match v {
            FiberValue::Rational(q) => self.sign(&p.substitute(Self::var(j), q)),
            FiberValue::Root(_) => {
                self.push(v.clone());
                let s = self.sign(p);
                self.pop();
                s
            }
        }
    }

    /// Coordinate `j` as a real algebraic number over the rationals.
    pub fn coordinate(&mut self, j: usize) -> RealAlgebraicNumber {
        let xj = Self::var(j);
        let norm = match &self.coords[j] {
            Coord::Rational(q) => return RealAlgebraicNumber::Rational(q.clone()),
            Coord::Algebraic(a) => {
                let mut n = self.reduce_to(&a.t, j);
                for i in (0..j).rev() {
                    let xi = Self::var(i);
                    if let Coord::Algebraic(ai) = &self.coords[i] {
                        if n.involves(xi) {
                            n = resultant(&ai.t, &n, xi).expect("both polynomials involve the variable");
                        }
                    }
                }
                n
            }
        };
        let u = UPoly::from_multi(&norm, xj).expect("the norm is univariate").square_free();
        let roots = isolate_upoly(&u).expect("the norm is nonzero");
        loop {
            let (lo, hi) = match &self.coords[j] {
                Coord::Rational(q) => return RealAlgebraicNumber::Rational(q.clone()),
                Coord::Algebraic(a) => (a.lo.clone(), a.hi.clone()),
            };
            let mut inside = roots
                .iter()
                .filter(|r| r.cmp_rational(&lo) == Ordering::Greater && r.cmp_rational(&hi) == Ordering::Less);
            if let (Some(r), None) = (inside.next(), inside.next()) {
                return r.clone();
            }
            self.bisect_coord(j);
        }
    }

    /// All coordinates as real algebraic numbers.
    pub fn sample(&mut self) -> Vec<RealAlgebraicNumber> {
        (0..self.len()).map(|j| self.coordinate(j)).collect()
    }

    /// A value of the next variable as a real algebraic number.
    pub fn fiber_to_number(&mut self, v: &FiberValue) -> RealAlgebraicNumber {
        match v {
            FiberValue::Rational(q) => RealAlgebraicNumber::Rational(q.clone()),
            FiberValue::Root(r) => {
                if let Some(u) = UPoly::from_multi(&r.poly, Self::var(self.len())) {
                    if let Ok(n) = RealAlgebraicNumber::from_interval(&u, &r.lo, &r.hi) {
                        return n;
                    }
                }
                self.push(v.clone());
                let j = self.len() - 1;
                let n = self.coordinate(j);
                self.pop();
                n
            }
        }
    }
}

/// Exact comparisons of fiber values for interval sweeps.
pub struct FiberOps<'a>(pub &'a mut Tower);

impl RationalBounds<FiberValue> for FiberOps<'_> {
    fn cmp(&mut self, a: &FiberValue, b: &FiberValue) -> Ordering {
        self.0.fiber_cmp(a, b)
    }

    fn cmp_rational(&mut self, value: &FiberValue, q: &BigRational) -> Ordering {
        self.0.fiber_cmp_rational(value, q)
    }

    fn enclosure(&mut self, value: &FiberValue, max_width: &BigRational) -> (BigRational, BigRational) {
        self.0.fiber_refine(value, max_width).bounds()
    }
}
