use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ArithError;

pub use num_rational::BigRational;

/// Outcome of a sign evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of<T: Signed>(value: &T) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "NEG",
            Sign::Zero => "ZERO",
            Sign::Pos => "POS",
        })
    }
}

/// Builds the canonical rational `num/den`.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<BigRational, ArithError> {
    let den = den.into();
    if den.is_zero() {
        return Err(ArithError::ZeroDenominator);
    }
    Ok(BigRational::new(num.into(), den))
}

/// Shorthand for small literals; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den` text, the denominator always present.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` and rejects anything that is not already in lowest
/// terms with a positive denominator.
pub fn parse_canonical_rational(text: &str) -> Option<BigRational> {
    let (n, d) = text.split_once('/')?;
    if d.starts_with('-') || d.starts_with('+') || n.starts_with('+') {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if !d.is_positive() || !n.gcd(&d).is_one() {
        return None;
    }
    // "-0/1" and leading zeros are not canonical either.
    let q = BigRational::new_raw(n, d);
    if format_rational(&q) != text {
        return None;
    }
    Some(q)
}

/// Parses a decimal or integer literal (`12`, `-1.25`) exactly.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    if body.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = BigRational::new(num, den);
    Some(if neg { -q } else { q })
}

pub fn floor_div_pow2(q: &BigRational, k: u32) -> BigInt {
    (q * BigRational::from_integer(BigInt::one() << k)).floor().to_integer()
}

pub fn pow2(k: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << k)
}
