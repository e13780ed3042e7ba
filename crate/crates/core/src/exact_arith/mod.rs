//! Exact arithmetic: rationals, Laurent polynomials in `r, s` with rational
//! exponents, their fraction field, and dense linear algebra on top.

pub mod field;
pub mod gcd;
pub mod laurent;
pub mod linalg;
pub mod monomial;
pub mod poly;

pub use field::FieldElem;
pub use laurent::{normalize_fraction, parse_rat, rat_to_string, LaurentRS};
pub use monomial::RsMonomial;
pub use poly::IPoly;

pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid exponent scale {0}")]
    BadScale(i64),
    #[error("pole at the evaluation point")]
    Pole,
    #[error("cannot evaluate: {0}")]
    BadPoint(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

pub fn rint(p: i64) -> Rat {
    Rat::from_integer(p.into())
}
