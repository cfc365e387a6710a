//! Real root isolation and real algebraic numbers.

pub mod interval;
pub mod isolate;
pub mod line;
pub mod number;
pub mod tower;

pub use number::{
    compare, isolate_roots, isolate_upoly, rational_between, refine, sign_at, sign_at_upoly, AlgebraicRoot,
    IndexedRoot, RealAlgebraicNumber,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial involves more than one variable")]
    NotUnivariate,
    #[error("interval does not isolate exactly one root")]
    NotIsolating,
    #[error("root index {index} out of range: polynomial has {roots} real roots")]
    BadIndex { index: usize, roots: usize },
    #[error("no rational strictly between equal or crossed bounds")]
    EmptyGap,
}
