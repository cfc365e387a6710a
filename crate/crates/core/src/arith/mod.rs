//! Exact rational scalars and sparse multivariate polynomials.

pub mod poly;
pub mod projection;
pub mod rational;
pub mod upoly;

pub use poly::{poly_arith, Monomial, MultiPoly, PolyOp, VarOrder, Variable};
pub use projection::{
    coeffs, content, discriminant, gcd, primitive_part, resultant, square_free_basis, square_free_part,
    sylvester_resultant,
};
pub use rational::{normalize, BigRational, Sign};
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("polynomials use different variable orders")]
    OrderMismatch,
    #[error("assigned variables must form a prefix of the variable order")]
    NotAPrefix,
    #[error("exponent vector has {found} entries, expected {expected}")]
    ExponentArity { expected: usize, found: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial has degree 0 in the eliminated variable")]
    NotPositiveDegree,
    #[error("zero polynomial")]
    ZeroPolynomial,
}
