//! Sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries the variable order it was built against. The
//! last variable of the order is the most significant one: it is the "main
//! variable" used by projection and lifting, and the monomial order compares
//! exponents from the last variable down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{BigRational, Sign};
use super::ArithError;

/// Names of the variables, in order. Index 0 is eliminated last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarOrder(Arc<[String]>);

impl VarOrder {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> VarOrder {
        VarOrder(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, v: Variable) -> &str {
        &self.0[v.index]
    }

    pub fn position(&self, name: &str) -> Option<Variable> {
        self.0.iter().position(|n| n == name).map(Variable::new)
    }
}

/// A variable, identified by its position in a [`VarOrder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub index: usize,
}

impl Variable {
    pub const fn new(index: usize) -> Variable {
        Variable { index }
    }
}

/// Exponent vector. Ordered lexicographically from the last variable down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0[v]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    order: VarOrder,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(order: &VarOrder) -> MultiPoly {
        MultiPoly { order: order.clone(), terms: BTreeMap::new() }
    }

    pub fn one(order: &VarOrder) -> MultiPoly {
        MultiPoly::constant(order, BigRational::one())
    }

    pub fn constant(order: &VarOrder, c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero(order);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(order.len()), c);
        }
        p
    }

    pub fn var(order: &VarOrder, v: Variable) -> MultiPoly {
        MultiPoly::monomial(order, v, 1, BigRational::one())
    }

    /// `c * v^e`.
    pub fn monomial(order: &VarOrder, v: Variable, e: u32, c: BigRational) -> MultiPoly {
        let mut exps = vec![0; order.len()];
        exps[v.index] = e;
        let mut p = MultiPoly::zero(order);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Builds a polynomial from (coefficient, exponent vector) pairs; like
    /// terms are combined.
    pub fn from_terms(
        order: &VarOrder,
        terms: impl IntoIterator<Item = (BigRational, Vec<u32>)>,
    ) -> Result<MultiPoly, ArithError> {
        let mut p = MultiPoly::zero(order);
        for (c, exps) in terms {
            if exps.len() != order.len() {
                return Err(ArithError::ExponentArity { expected: order.len(), found: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    /// Univariate polynomial in `v` from coefficients listed low to high.
    pub fn from_coeffs(order: &VarOrder, v: Variable, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut p = MultiPoly::zero(order);
        for (i, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut exps = m.0.clone();
                exps[v.index] += i as u32;
                p.add_term(Monomial(exps), a.clone());
            }
        }
        p
    }

    pub fn from_rational_coeffs(order: &VarOrder, v: Variable, coeffs: &[BigRational]) -> MultiPoly {
        let mut p = MultiPoly::zero(order);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; order.len()];
                exps[v.index] = i as u32;
                p.terms.insert(Monomial(exps), c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn degree(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.0[v.index]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.0.iter().sum()).max().unwrap_or(0)
    }

    /// The highest-indexed variable occurring with positive degree.
    pub fn main_var(&self) -> Option<Variable> {
        (0..self.nvars()).rev().find(|&i| self.terms.keys().any(|m| m.0[i] > 0)).map(Variable::new)
    }

    pub fn involves(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.0[v.index] > 0)
    }

    /// Leading term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_rational(&self) -> BigRational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    /// Coefficients with respect to `v`, low degree first.
    pub fn coeffs_in(&self, v: Variable) -> Vec<MultiPoly> {
        let d = self.degree(v) as usize;
        let mut out = vec![MultiPoly::zero(&self.order); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let e = m.0[v.index] as usize;
            let mut exps = m.0.clone();
            exps[v.index] = 0;
            out[e].terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Coefficients with respect to `v`, highest degree first.
    pub fn coeffs(&self, v: Variable) -> Vec<MultiPoly> {
        if self.is_zero() {
            return vec![MultiPoly::zero(&self.order)];
        }
        let mut c = self.coeffs_in(v);
        c.reverse();
        c
    }

    pub fn leading_coeff_in(&self, v: Variable) -> MultiPoly {
        self.coeffs_in(v).pop().unwrap_or_else(|| MultiPoly::zero(&self.order))
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.order);
        }
        MultiPoly { order: self.order.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Variable) -> MultiPoly {
        let mut p = MultiPoly::zero(&self.order);
        for (m, c) in &self.terms {
            let e = m.0[v.index];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[v.index] = e - 1;
                p.terms.insert(Monomial(exps), c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        p
    }

    /// Substitutes a rational value for one variable.
    pub fn substitute(&self, v: Variable, value: &BigRational) -> MultiPoly {
        if !self.involves(v) {
            return self.clone();
        }
        let mut powers: Vec<BigRational> = vec![BigRational::one()];
        let mut p = MultiPoly::zero(&self.order);
        for (m, c) in &self.terms {
            let e = m.0[v.index] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut exps = m.0.clone();
            exps[v.index] = 0;
            p.add_term(Monomial(exps), c * &powers[e]);
        }
        p
    }

    /// Substitutes rational values for a prefix of the variable order.
    pub fn eval_partial(&self, assignment: &BTreeMap<Variable, BigRational>) -> Result<MultiPoly, ArithError> {
        for (i, v) in assignment.keys().enumerate() {
            if v.index != i || v.index >= self.nvars() {
                return Err(ArithError::NotAPrefix);
            }
        }
        let mut p = self.clone();
        for (v, q) in assignment {
            p = p.substitute(*v, q);
        }
        Ok(p)
    }

    /// Evaluates with all variables assigned.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut p = self.clone();
        for (i, q) in point.iter().enumerate().take(self.nvars()) {
            p = p.substitute(Variable::new(i), q);
        }
        p.constant_value().expect("every variable must be assigned")
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.assert_same_order(divisor);
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.order);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            let mut t = MultiPoly::zero(&self.order);
            t.terms.insert(qm.clone(), qc.clone());
            rem = &rem - &(&t * divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `divisor` with respect to `v`:
    /// `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn prem(&self, divisor: &MultiPoly, v: Variable) -> MultiPoly {
        self.assert_same_order(divisor);
        let db = divisor.degree(v);
        let mut r = self.clone();
        if r.is_zero() || r.degree(v) < db {
            return r;
        }
        let lcb = divisor.leading_coeff_in(v);
        let mut steps = r.degree(v) - db + 1;
        while !r.is_zero() && r.degree(v) >= db {
            let dr = r.degree(v);
            let lcr = r.leading_coeff_in(v);
            let shift = MultiPoly::monomial(&self.order, v, dr - db, BigRational::one());
            r = &(&r * &lcb) - &(&(&lcr * &shift) * divisor);
            steps -= 1;
        }
        if steps > 0 {
            r = &r * &lcb.pow(steps);
        }
        r
    }

    /// Remainder modulo a polynomial that is monic in `v`.
    pub fn rem_monic(&self, t: &MultiPoly, v: Variable) -> MultiPoly {
        let dt = t.degree(v);
        if self.degree(v) < dt {
            return self.clone();
        }
        let mut by_deg = self.coeffs_in(v);
        let tc = t.coeffs_in(v);
        let order = &self.order;
        let mut i = by_deg.len();
        while i > dt as usize {
            i -= 1;
            let c = std::mem::replace(&mut by_deg[i], MultiPoly::zero(order));
            if c.is_zero() {
                continue;
            }
            let base = i - dt as usize;
            for (j, tj) in tc.iter().enumerate().take(dt as usize) {
                if !tj.is_zero() {
                    by_deg[base + j] = &by_deg[base + j] - &(&c * tj);
                }
            }
        }
        by_deg.truncate(dt as usize);
        MultiPoly::from_coeffs(order, v, &by_deg)
    }

    /// Scales to coprime integer coefficients with a positive leading
    /// coefficient. Equal up to a nonzero constant iff equal after this.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut factor = BigRational::new(l, g);
        if self.leading_rational().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Divides by the leading rational coefficient.
    pub fn monic(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_rational().recip())
    }

    pub fn sign_of_leading(&self) -> Sign {
        Sign::of(&self.leading_rational())
    }

    /// Re-expresses the polynomial over another order containing the same
    /// names (possibly permuted, possibly with extra variables).
    pub fn reorder(&self, target: &VarOrder) -> Result<MultiPoly, ArithError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.order.names().iter().enumerate() {
            match target.position(name) {
                Some(v) => map.push(v.index),
                None if self.involves(Variable::new(i)) => {
                    return Err(ArithError::UnknownVariable(name.clone()));
                }
                None => map.push(usize::MAX),
            }
        }
        let mut p = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    exps[map[i]] = e;
                }
            }
            p.terms.insert(Monomial(exps), c.clone());
        }
        Ok(p)
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_order(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_order(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_order(other)?;
        Ok(self * other)
    }

    fn check_order(&self, other: &MultiPoly) -> Result<(), ArithError> {
        if self.order != other.order {
            return Err(ArithError::OrderMismatch);
        }
        Ok(())
    }

    fn assert_same_order(&self, other: &MultiPoly) {
        assert!(self.order == other.order, "polynomials over different variable orders");
    }
}

/// Applies `+`, `-` or `*` with an order check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> Result<MultiPoly, ArithError> {
    match op {
        PolyOp::Add => p.checked_add(q),
        PolyOp::Sub => p.checked_sub(q),
        PolyOp::Mul => p.checked_mul(q),
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_same_order(rhs);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_same_order(rhs);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_same_order(rhs);
        let mut p = MultiPoly::zero(&self.order);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            order: self.order.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate().rev() {
                match e {
                    0 => {}
                    1 => factors.push(self.order.0[i].clone()),
                    _ => factors.push(format!("{}^{}", self.order.0[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use crate::arith::rational::{int, rat};

    pub fn xy() -> VarOrder {
        VarOrder::new(["x", "y"])
    }

    pub fn x(o: &VarOrder) -> MultiPoly {
        MultiPoly::var(o, Variable::new(0))
    }

    pub fn y(o: &VarOrder) -> MultiPoly {
        MultiPoly::var(o, Variable::new(1))
    }

    pub fn c(o: &VarOrder, n: i64, d: i64) -> MultiPoly {
        MultiPoly::constant(o, rat(n, d))
    }

    /// `(x - a)^2 + (y - b)^2 - 1`
    pub fn circle(o: &VarOrder, a: BigRational, b: BigRational) -> MultiPoly {
        let dx = &x(o) - &MultiPoly::constant(o, a);
        let dy = &y(o) - &MultiPoly::constant(o, b);
        &(&(&dx * &dx) + &(&dy * &dy)) - &MultiPoly::constant(o, int(1))
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn circle_differences() {
        let o = xy();
        let c1 = circle(&o, int(0), int(0));
        let c2 = circle(&o, int(4), int(0));
        let d = poly_arith(&c1, &c2, PolyOp::Sub).unwrap();
        assert_eq!(d, &(&c(&o, 8, 1) * &x(&o)) - &c(&o, 16, 1));

        let c3 = circle(&o, rat(3, 2), rat(3, 2));
        let d = poly_arith(&c1, &c3, PolyOp::Sub).unwrap();
        let expected = &(&(&c(&o, 3, 1) * &x(&o)) + &(&c(&o, 3, 1) * &y(&o))) - &c(&o, 9, 2);
        assert_eq!(d, expected);
    }

    #[test]
    fn adding_zero_is_identity() {
        let o = xy();
        let p = circle(&o, int(0), int(0));
        assert_eq!(poly_arith(&p, &MultiPoly::zero(&o), PolyOp::Add).unwrap(), p);
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let p = x(&xy());
        let q = MultiPoly::var(&VarOrder::new(["y", "x"]), Variable::new(0));
        assert_eq!(poly_arith(&p, &q, PolyOp::Add), Err(ArithError::OrderMismatch));
    }

    #[test]
    fn partial_evaluation() {
        let o = xy();
        let mut at = BTreeMap::new();
        at.insert(Variable::new(0), int(0));
        let p = circle(&o, int(4), int(0)).eval_partial(&at).unwrap();
        assert_eq!(p, &(&y(&o) * &y(&o)) + &c(&o, 15, 1));

        at.insert(Variable::new(0), int(-1));
        let p = circle(&o, int(0), int(0)).eval_partial(&at).unwrap();
        assert_eq!(p, &y(&o) * &y(&o));

        let p = circle(&o, int(0), int(0));
        assert_eq!(p.eval_partial(&BTreeMap::new()).unwrap(), p);

        let mut skip = BTreeMap::new();
        skip.insert(Variable::new(1), int(1));
        assert_eq!(p.eval_partial(&skip), Err(ArithError::NotAPrefix));
    }

    #[test]
    fn coefficient_views() {
        let o = xy();
        let yv = Variable::new(1);
        let p = circle(&o, int(0), int(0));
        let xx = &x(&o) * &x(&o);
        assert_eq!(p.coeffs(yv), vec![c(&o, 1, 1), MultiPoly::zero(&o), &xx - &c(&o, 1, 1)]);
        assert_eq!(c(&o, 5, 1).coeffs(yv), vec![c(&o, 5, 1)]);
        let q = circle(&o, int(4), int(0));
        let dx = &x(&o) - &c(&o, 4, 1);
        assert_eq!(q.coeffs(yv), vec![c(&o, 1, 1), MultiPoly::zero(&o), &(&dx * &dx) - &c(&o, 1, 1)]);
    }

    #[test]
    fn exact_division_and_pseudo_remainder() {
        let o = xy();
        let a = &x(&o) - &y(&o);
        let b = &x(&o) + &c(&o, 2, 1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&(&a + &c(&o, 1, 1))), None);

        let yv = Variable::new(1);
        let p = circle(&o, int(0), int(0));
        let r = p.prem(&(&y(&o) - &x(&o)), yv);
        // y = x on the circle gives 2x^2 - 1
        assert_eq!(r, &(&c(&o, 2, 1) * &(&x(&o) * &x(&o))) - &c(&o, 1, 1));
    }

    #[test]
    fn display_is_readable() {
        let o = xy();
        let p = circle(&o, rat(3, 2), int(0));
        assert_eq!(p.to_string(), "y^2 + x^2 - 3*x + 5/4");
    }

    #[test]
    fn reorder_permutes_variables() {
        let o = xy();
        let p = &(&x(&o) * &x(&o)) + &y(&o);
        let yx = VarOrder::new(["y", "x"]);
        let q = p.reorder(&yx).unwrap();
        assert_eq!(q.degree(Variable::new(1)), 2);
        assert_eq!(q.reorder(&o).unwrap(), p);
    }
}
