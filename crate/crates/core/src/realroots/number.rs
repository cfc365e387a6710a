//! Exact real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{eval_upoly, RatInterval};
use super::isolate::{isolate, rational_sign, Isolated};
use super::line::{dyadic_between, RationalBounds};
use super::RootError;
use crate::arith::rational::format_rational;
use crate::arith::{BigRational, MultiPoly, Sign, UPoly, VarOrder, Variable};

/// An irrational real root of a square-free integer polynomial, isolated by
/// an open rational interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicRoot {
    defpoly: UPoly,
    lo: BigRational,
    hi: BigRational,
    index: usize,
}

impl AlgebraicRoot {
    /// Primitive, square-free, integer coefficients.
    pub fn defpoly(&self) -> &UPoly {
        &self.defpoly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// Rank among the real roots of the defining polynomial, from 1.
    pub fn index(&self) -> usize {
        self.index
    }

    fn sign_lo(&self) -> Sign {
        self.defpoly.sign_at(&self.lo)
    }

    /// Halves the isolating interval.
    fn bisect(&self) -> RealAlgebraicNumber {
        let m = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        let sm = self.defpoly.sign_at(&m);
        if sm == Sign::Zero {
            return RealAlgebraicNumber::Rational(m);
        }
        let mut next = self.clone();
        if sm == self.sign_lo() {
            next.lo = m;
        } else {
            next.hi = m;
        }
        RealAlgebraicNumber::Algebraic(next)
    }

    fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if *q <= self.lo {
            return Ordering::Greater;
        }
        if *q >= self.hi {
            return Ordering::Less;
        }
        let s = self.defpoly.sign_at(q);
        if s == Sign::Zero {
            Ordering::Equal
        } else if s == self.sign_lo() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealAlgebraicNumber {
    Rational(BigRational),
    Algebraic(AlgebraicRoot),
}

impl From<BigRational> for RealAlgebraicNumber {
    fn from(q: BigRational) -> Self {
        RealAlgebraicNumber::Rational(q)
    }
}

impl RealAlgebraicNumber {
    pub fn rational(q: BigRational) -> RealAlgebraicNumber {
        RealAlgebraicNumber::Rational(q)
    }

    /// The unique root of `defpoly` in the open interval `(lo, hi)`.
    pub fn from_interval(
        defpoly: &UPoly,
        lo: &BigRational,
        hi: &BigRational,
    ) -> Result<RealAlgebraicNumber, RootError> {
        let mut inside = isolate_upoly(defpoly)?
            .into_iter()
            .filter(|r| r.cmp_rational(lo) == Ordering::Greater && r.cmp_rational(hi) == Ordering::Less);
        match (inside.next(), inside.next()) {
            (Some(r), None) => Ok(r),
            _ => Err(RootError::NotIsolating),
        }
    }

    /// The `index`-th real root of `defpoly` (from 1), checked to be the only
    /// root in `(lo, hi)`. The stored representation keeps the given interval.
    pub fn from_parts(
        defpoly: &UPoly,
        lo: &BigRational,
        hi: &BigRational,
        index: usize,
    ) -> Result<RealAlgebraicNumber, RootError> {
        if lo >= hi {
            return Err(RootError::NotIsolating);
        }
        let roots = isolate_upoly(defpoly)?;
        if index == 0 || index > roots.len() {
            return Err(RootError::BadIndex { index, roots: roots.len() });
        }
        let inside: Vec<usize> = (0..roots.len())
            .filter(|&i| roots[i].cmp_rational(lo) == Ordering::Greater && roots[i].cmp_rational(hi) == Ordering::Less)
            .collect();
        if inside != [index - 1] {
            return Err(RootError::NotIsolating);
        }
        match &roots[index - 1] {
            RealAlgebraicNumber::Rational(q) => Ok(RealAlgebraicNumber::Rational(q.clone())),
            RealAlgebraicNumber::Algebraic(a) => Ok(RealAlgebraicNumber::Algebraic(AlgebraicRoot {
                defpoly: a.defpoly.clone(),
                lo: lo.clone(),
                hi: hi.clone(),
                index,
            })),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RealAlgebraicNumber::Rational(q) => Some(q),
            RealAlgebraicNumber::Algebraic(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealAlgebraicNumber::Rational(_))
    }

    /// Rationals `lo <= self <= hi`.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            RealAlgebraicNumber::Rational(q) => (q.clone(), q.clone()),
            RealAlgebraicNumber::Algebraic(a) => (a.lo.clone(), a.hi.clone()),
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        match self {
            RealAlgebraicNumber::Rational(r) => r.cmp(q),
            RealAlgebraicNumber::Algebraic(a) => a.cmp_rational(q),
        }
    }

    /// Sign of `self`.
    pub fn sign(&self) -> Sign {
        match self.cmp_rational(&BigRational::zero()) {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }

    /// Decimal text with `digits` fractional digits, truncated toward
    /// negative infinity; rationals with a short expansion print exactly.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), digits as usize));
        let mut r = refine(self, &scale.recip());
        while (&r.bounds().0 * &scale).floor() != (&r.bounds().1 * &scale).floor() {
            r = refine_step(&r);
        }
        let v = (&r.bounds().0 * &scale).floor().to_integer();
        let neg = v.is_negative();
        let digits_str = v.abs().to_string();
        let d = digits as usize;
        let padded = format!("{:0>width$}", digits_str, width = d + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - d);
        let frac = frac_part.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }

    /// Text form with the defining polynomial written in `var`.
    pub fn format_in(&self, var: &str) -> String {
        match self {
            RealAlgebraicNumber::Rational(q) => format_rational(q),
            RealAlgebraicNumber::Algebraic(a) => format!("{}_RootOf({}, {})", a.index, a.defpoly.format_in(var), var),
        }
    }
}

impl fmt::Display for RealAlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("x"))
    }
}

/// Roots of a nonzero univariate polynomial, increasing; rational roots are
/// returned as rationals.
pub fn isolate_upoly(p: &UPoly) -> Result<Vec<RealAlgebraicNumber>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let q = p.square_free().primitive();
    let lc = q.leading().abs();
    let isolated = isolate(q.coeffs(), &q.root_bound(), &mut rational_sign);
    let mut out = Vec::with_capacity(isolated.len());
    for (i, iso) in isolated.into_iter().enumerate() {
        match iso {
            Isolated::Exact(r) => out.push(RealAlgebraicNumber::Rational(r)),
            Isolated::Interval(lo, hi) => {
                let a = AlgebraicRoot { defpoly: q.clone(), lo, hi, index: i + 1 };
                out.push(normalize_rational_root(a, &lc));
            }
        }
    }
    Ok(out)
}

/// A rational root of an integer polynomial has a denominator dividing the
/// leading coefficient, so once the interval is narrower than `1/lc` there
/// is one candidate to test.
fn normalize_rational_root(mut a: AlgebraicRoot, lc: &BigRational) -> RealAlgebraicNumber {
    while (&a.hi - &a.lo) * lc >= BigRational::one() {
        match a.bisect() {
            RealAlgebraicNumber::Rational(q) => return RealAlgebraicNumber::Rational(q),
            RealAlgebraicNumber::Algebraic(next) => a = next,
        }
    }
    let candidate = (&a.lo * lc).floor() + BigRational::one();
    let candidate = candidate / lc;
    if candidate < a.hi && a.defpoly.sign_at(&candidate) == Sign::Zero {
        return RealAlgebraicNumber::Rational(candidate);
    }
    RealAlgebraicNumber::Algebraic(a)
}

/// Roots of a polynomial in a single variable (or a constant).
pub fn isolate_roots(p: &MultiPoly) -> Result<Vec<RealAlgebraicNumber>, RootError> {
    isolate_upoly(&to_upoly(p)?)
}

fn to_upoly(p: &MultiPoly) -> Result<UPoly, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let v = p.main_var().unwrap_or(Variable::new(0));
    UPoly::from_multi(p, v).ok_or(RootError::NotUnivariate)
}

/// Exact sign of `p(a)` for a univariate rational polynomial.
pub fn sign_at_upoly(p: &UPoly, a: &RealAlgebraicNumber) -> Sign {
    match a {
        RealAlgebraicNumber::Rational(q) => p.sign_at(q),
        RealAlgebraicNumber::Algebraic(root) => {
            if p.is_zero() {
                return Sign::Zero;
            }
            let g = p.gcd(&root.defpoly);
            if g.degree() > 0 && g.sign_at(&root.lo) != g.sign_at(&root.hi) {
                return Sign::Zero;
            }
            let mut cur = RealAlgebraicNumber::Algebraic(root.clone());
            loop {
                match &cur {
                    RealAlgebraicNumber::Rational(q) => return p.sign_at(q),
                    RealAlgebraicNumber::Algebraic(r) => {
                        let range = eval_upoly(p, &RatInterval::new(r.lo.clone(), r.hi.clone()));
                        if let Some(s) = range.sign() {
                            return s;
                        }
                        cur = r.bisect();
                    }
                }
            }
        }
    }
}

/// Exact sign of `p(a)`; `p` must involve at most one variable.
pub fn sign_at(p: &MultiPoly, a: &RealAlgebraicNumber) -> Result<Sign, RootError> {
    if p.is_zero() {
        return Ok(Sign::Zero);
    }
    Ok(sign_at_upoly(&to_upoly(p)?, a))
}

/// Exact order. Equality is decided by a common factor of the defining
/// polynomials having a root in the overlap of the intervals.
pub fn compare(a: &RealAlgebraicNumber, b: &RealAlgebraicNumber) -> Ordering {
    use RealAlgebraicNumber::{Algebraic, Rational};
    match (a, b) {
        (Rational(x), Rational(y)) => x.cmp(y),
        (Algebraic(x), Rational(q)) => x.cmp_rational(q),
        (Rational(q), Algebraic(y)) => y.cmp_rational(q).reverse(),
        (Algebraic(x), Algebraic(y)) => {
            if x.defpoly == y.defpoly {
                return x.index.cmp(&y.index);
            }
            let g = x.defpoly.gcd(&y.defpoly);
            let mut x = Algebraic(x.clone());
            let mut y = Algebraic(y.clone());
            let mut equality_checked = g.degree() == 0;
            loop {
                let (xl, xh) = x.bounds();
                let (yl, yh) = y.bounds();
                if x.is_rational() || y.is_rational() {
                    return compare(&x, &y);
                }
                if xh <= yl {
                    return Ordering::Less;
                }
                if yh <= xl {
                    return Ordering::Greater;
                }
                if !equality_checked {
                    let lo = xl.max(yl);
                    let hi = xh.min(yh);
                    if g.sign_at(&lo) != g.sign_at(&hi) {
                        return Ordering::Equal;
                    }
                    equality_checked = true;
                }
                x = refine_step(&x);
                y = refine_step(&y);
            }
        }
    }
}

fn refine_step(a: &RealAlgebraicNumber) -> RealAlgebraicNumber {
    match a {
        RealAlgebraicNumber::Rational(_) => a.clone(),
        RealAlgebraicNumber::Algebraic(r) => r.bisect(),
    }
}

/// The same number with an isolating interval of width at most `max_width`.
pub fn refine(a: &RealAlgebraicNumber, max_width: &BigRational) -> RealAlgebraicNumber {
    assert!(max_width.is_positive(), "refinement width must be positive");
    let mut cur = a.clone();
    loop {
        match &cur {
            RealAlgebraicNumber::Rational(_) => return cur,
            RealAlgebraicNumber::Algebraic(r) => {
                if &(&r.hi - &r.lo) <= max_width {
                    return cur;
                }
                cur = r.bisect();
            }
        }
    }
}

struct RanBounds;

impl RationalBounds<RealAlgebraicNumber> for RanBounds {
    fn cmp(&mut self, a: &RealAlgebraicNumber, b: &RealAlgebraicNumber) -> Ordering {
        compare(a, b)
    }

    fn cmp_rational(&mut self, value: &RealAlgebraicNumber, q: &BigRational) -> Ordering {
        value.cmp_rational(q)
    }

    fn enclosure(&mut self, value: &RealAlgebraicNumber, max_width: &BigRational) -> (BigRational, BigRational) {
        refine(value, max_width).bounds()
    }
}

/// The simplest dyadic rational strictly between the bounds (`None` is an
/// infinite bound).
pub fn rational_between(
    lower: Option<&RealAlgebraicNumber>,
    upper: Option<&RealAlgebraicNumber>,
) -> Result<BigRational, RootError> {
    dyadic_between(lower, upper, &mut RanBounds).ok_or(RootError::EmptyGap)
}

/// `index`-th real root (from 1) of `poly` in `var`, a symbolic bound whose
/// value depends on an assignment of the other variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexedRoot {
    pub poly: MultiPoly,
    pub var: Variable,
    pub index: usize,
}

impl IndexedRoot {
    pub fn new(poly: MultiPoly, var: Variable, index: usize) -> IndexedRoot {
        assert!(index >= 1, "root indices start at 1");
        IndexedRoot { poly, var, index }
    }

    pub fn order(&self) -> &VarOrder {
        self.poly.order()
    }
}

impl fmt::Display for IndexedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_RootOf({}, {})", self.index, self.poly, self.poly.order().name(self.var))
    }
}
