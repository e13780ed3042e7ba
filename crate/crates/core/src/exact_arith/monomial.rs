//! Unit-coefficient monomials `r^a s^b` with rational exponents.

use super::{FieldElem, LaurentRS, Rat};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RsMonomial {
    pub r: Rat,
    pub s: Rat,
}

impl RsMonomial {
    pub fn new(r: Rat, s: Rat) -> Self {
        RsMonomial { r, s }
    }

    pub fn one() -> Self {
        RsMonomial { r: Rat::zero(), s: Rat::zero() }
    }

    pub fn is_one(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        RsMonomial { r: &self.r + &o.r, s: &self.s + &o.s }
    }

    pub fn inv(&self) -> Self {
        RsMonomial { r: -&self.r, s: -&self.s }
    }

    pub fn pow(&self, k: &Rat) -> Self {
        RsMonomial { r: &self.r * k, s: &self.s * k }
    }

    /// `(r s^-1)^k`.
    pub fn rs_ratio(k: Rat) -> Self {
        RsMonomial { s: -&k, r: k }
    }

    pub fn to_field(&self) -> FieldElem {
        FieldElem::monomial(&self.r, &self.s, &Rat::one())
    }

    pub fn to_laurent(&self) -> LaurentRS {
        LaurentRS::monomial(self.r.clone(), self.s.clone(), Rat::one())
    }
}

impl fmt::Display for RsMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_field())
    }
}
