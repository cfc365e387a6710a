pub mod arith;
pub mod cad;
pub mod certificate;
pub mod covering;
pub mod formula;
pub mod frontend;
pub mod realroots;
