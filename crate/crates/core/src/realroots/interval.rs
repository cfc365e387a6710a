//! Closed rational intervals, for bounding polynomial values.

use num_traits::{Signed, Zero};

use crate::arith::{BigRational, Sign, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> RatInterval {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(q: BigRational) -> RatInterval {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn scale(&self, c: &BigRational) -> RatInterval {
        if c.is_negative() {
            RatInterval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            RatInterval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn pow(&self, e: u32) -> RatInterval {
        if e == 0 {
            return RatInterval::point(BigRational::from_integer(1.into()));
        }
        let lo = num_traits::pow(self.lo.clone(), e as usize);
        let hi = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 || !self.lo.is_negative() {
            RatInterval { lo, hi }
        } else if !self.hi.is_positive() {
            RatInterval { lo: hi, hi: lo }
        } else {
            RatInterval { lo: BigRational::zero(), hi: lo.max(hi) }
        }
    }

    /// The sign of every point of the interval, when it is the same.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Pos)
        } else if self.hi.is_negative() {
            Some(Sign::Neg)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }
}

/// Encloses the range of `p` over `x`.
pub fn eval_upoly(p: &UPoly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(BigRational::zero());
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&x.pow(i as u32).scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn even_powers_of_straddling_intervals() {
        let x = RatInterval::new(int(-2), int(1));
        assert_eq!(x.pow(2), RatInterval::new(int(0), int(4)));
        assert_eq!(x.pow(3), RatInterval::new(int(-8), int(1)));
        let n = RatInterval::new(int(-3), int(-1));
        assert_eq!(n.pow(2), RatInterval::new(int(1), int(9)));
    }

    #[test]
    fn encloses_polynomial_values() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let r = eval_upoly(&p, &RatInterval::new(rat(3, 2), int(2)));
        assert_eq!(r.sign(), Some(Sign::Pos));
    }
}
