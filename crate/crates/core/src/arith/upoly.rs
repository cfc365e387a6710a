//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{MultiPoly, VarOrder, Variable};
use super::rational::{BigRational, Sign};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &BigRational) -> UPoly {
        UPoly::new(vec![-r.clone(), BigRational::one()])
    }

    /// Reads a polynomial that only involves `v`.
    pub fn from_multi(p: &MultiPoly, v: Variable) -> Option<UPoly> {
        let mut coeffs = vec![BigRational::zero(); p.degree(v) as usize + 1];
        for (m, c) in p.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if i != v.index && e > 0 {
                    return None;
                }
            }
            coeffs[m.exp(v.index) as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn to_multi(&self, order: &VarOrder, v: Variable) -> MultiPoly {
        MultiPoly::from_rational_coeffs(order, v, &self.coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Sign {
        Sign::of(&self.eval(x))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        UPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lc_inv = divisor.leading().recip();
        if rem.len() < divisor.coeffs.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] * &lc_inv;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i - dd + j] -= &q * d;
                }
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, u)` with `u * self = g (mod modulus)`, `g` monic.
    pub fn ext_gcd_mod(&self, modulus: &UPoly) -> (UPoly, UPoly) {
        let (mut r0, mut r1) = (modulus.clone(), self.clone());
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv))
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free(&self) -> UPoly {
        if self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Coprime integer coefficients, positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in &self.coeffs {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut f = BigRational::new(l, g);
        if self.leading().is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Integer coefficients of the primitive form, low degree first.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive().coeffs.iter().map(|c| c.numer().clone()).collect()
    }

    /// `p(x + a)`
    pub fn taylor_shift(&self, a: &BigRational) -> UPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        UPoly::new(c)
    }

    /// Bound `B` with every real root strictly inside `(-B, B)`; a power of two.
    pub fn root_bound(&self) -> BigRational {
        let lc = self.leading().abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.degree()] {
            let r = c.abs() / &lc;
            if r > m {
                m = r;
            }
        }
        let b = m + BigRational::one();
        let mut p = BigRational::one();
        while p <= b {
            p = &p + &p;
        }
        p
    }

    /// Sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let mut last = Sign::Zero;
        let mut count = 0;
        for c in &self.coeffs {
            let s = Sign::of(c);
            if s != Sign::Zero {
                if last != Sign::Zero && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    pub fn format_in(&self, var: &str) -> String {
        let order = VarOrder::new([var]);
        self.to_multi(&order, Variable::new(0)).to_string()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("x"))
    }
}
