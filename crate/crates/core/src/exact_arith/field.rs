//! The fraction field `Q(r, s)` extended by roots of `r` and `s`.
//!
//! An element is stored as `num / den` with integer-coefficient Laurent
//! polynomials in `u = r^(1/scale)`, `v = s^(1/scale)`, where `scale` is the
//! smallest positive integer making every exponent integral.

use super::gcd::gcd;
use super::poly::{IPoly, Mono};
use super::{ArithError, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    scale: i64,
    num: IPoly,
    den: IPoly,
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { scale: 1, num: IPoly::zero(), den: IPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_bigint(BigInt::from(k))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        FieldElem { scale: 1, num: IPoly::constant(k), den: IPoly::one() }
    }

    pub fn from_rat(q: &Rat) -> Self {
        finish(1, IPoly::constant(q.numer().clone()), IPoly::constant(q.denom().clone()))
    }

    /// `c * r^a * s^b`.
    pub fn monomial(a: &Rat, b: &Rat, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let scale = a.denom().lcm(b.denom());
        let sc = Rat::from_integer(scale.clone());
        let ea = (a * &sc).to_integer();
        let eb = (b * &sc).to_integer();
        let m = [to_i64(&ea), to_i64(&eb)];
        let s = to_i64(&scale);
        finish(s, IPoly::monomial(m, c.numer().clone()), IPoly::constant(c.denom().clone()))
    }

    /// `r^a s^b` with integer exponents.
    pub fn rs_power(a: i64, b: i64) -> Self {
        FieldElem { scale: 1, num: IPoly::monomial([a, b], BigInt::one()), den: IPoly::one() }
    }

    pub fn r() -> Self {
        Self::rs_power(1, 0)
    }

    pub fn s() -> Self {
        Self::rs_power(0, 1)
    }

    /// Element `num / den` of integer Laurent polynomials in
    /// `u = r^(1/scale)`, `v = s^(1/scale)`.
    pub fn from_parts(scale: i64, num: IPoly, den: IPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if scale <= 0 {
            return Err(ArithError::BadScale(scale));
        }
        Ok(build(scale, num, den))
    }

    /// Integer Laurent polynomial in `r, s` (scale 1).
    pub fn from_poly(num: IPoly) -> Self {
        finish(1, num, IPoly::one())
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn num_poly(&self) -> &IPoly {
        &self.num
    }

    pub fn den_poly(&self) -> &IPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in `Q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        Some(Rat::new(self.num.constant_value()?, self.den.constant_value()?))
    }

    /// True when the value is a Laurent polynomial (denominator a constant).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Size measure used for pivot selection.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }

    fn aligned(&self, other: &Self) -> (i64, IPoly, IPoly, IPoly, IPoly) {
        if self.scale == other.scale {
            return (self.scale, self.num.clone(), self.den.clone(), other.num.clone(), other.den.clone());
        }
        let l = self.scale.lcm(&other.scale);
        let (ka, kb) = (l / self.scale, l / other.scale);
        (l, self.num.stretch(ka), self.den.stretch(ka), other.num.stretch(kb), other.den.stretch(kb))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (l, na, da, nb, db) = self.aligned(other);
        if da == db {
            let num = na.add(&nb);
            if da.is_one() {
                return finish(l, num, da);
            }
            return build(l, num, da);
        }
        if da.is_constant() && db.is_constant() {
            let num = na.mul(&db).add(&nb.mul(&da));
            return finish(l, num, da.mul(&db));
        }
        let g = gcd(&da, &db);
        let (da1, db1) = if g.is_one() {
            (da.clone(), db.clone())
        } else {
            (da.div_exact(&g).expect("gcd divides"), db.div_exact(&g).expect("gcd divides"))
        };
        let num = na.mul(&db1).add(&nb.mul(&da1));
        let den = da1.mul(&db);
        if num.is_zero() {
            return Self::zero();
        }
        if g.is_one() {
            return finish(l, num, den);
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            finish(l, num, den)
        } else {
            finish(l, num.div_exact(&h).expect("gcd divides"), den.div_exact(&h).expect("gcd divides"))
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        FieldElem { scale: self.scale, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (l, na, da, nb, db) = self.aligned(other);
        if da.is_one() && db.is_one() {
            return finish(l, na.mul(&nb), da);
        }
        let (na, db) = cancel(na, db);
        let (nb, da) = cancel(nb, da);
        finish(l, na.mul(&nb), da.mul(&db))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(finish(self.scale, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        Ok(finish(self.scale, self.num.pow(k), self.den.pow(k)))
    }

    /// Exponents and coefficients as exact rationals, denominator scaled to
    /// have leading coefficient one.
    pub fn rational_parts(&self) -> (Vec<(Rat, Rat, Rat)>, Vec<(Rat, Rat, Rat)>) {
        let lc = self.den.lc();
        let sc = BigInt::from(self.scale);
        let conv = |p: &IPoly| -> Vec<(Rat, Rat, Rat)> {
            p.terms()
                .iter()
                .map(|(e, c)| {
                    (
                        Rat::new(BigInt::from(e[0]), sc.clone()),
                        Rat::new(BigInt::from(e[1]), sc.clone()),
                        Rat::new(c.clone(), lc.clone()),
                    )
                })
                .collect()
        };
        (conv(&self.num), conv(&self.den))
    }

    /// Exact value at `r = r0`, `s = s0`.
    pub fn evaluate_at_point(&self, r0: &Rat, s0: &Rat) -> Result<Rat, ArithError> {
        if !r0.is_positive() || !s0.is_positive() {
            return Err(ArithError::BadPoint("evaluation point must be positive".into()));
        }
        // only the part of the scale actually used by each variable matters
        let used = |var: usize| -> i64 {
            let mut g = self.scale;
            for p in [&self.num, &self.den] {
                for (e, _) in p.terms() {
                    g = g.gcd(&e[var]);
                }
            }
            g
        };
        let (gu, gv) = (used(0), used(1));
        let u0 = rat_root(r0, self.scale / gu)
            .ok_or_else(|| ArithError::BadPoint(format!("r0 = {r0} has no rational {}-th root", self.scale / gu)))?;
        let v0 = rat_root(s0, self.scale / gv)
            .ok_or_else(|| ArithError::BadPoint(format!("s0 = {s0} has no rational {}-th root", self.scale / gv)))?;
        let num = self.num.shrink_var(gu, gv);
        let den = self.den.shrink_var(gu, gv);
        let d = den.eval(&u0, &v0).ok_or(ArithError::Pole)?;
        if d.is_zero() {
            return Err(ArithError::Pole);
        }
        let n = num.eval(&u0, &v0).ok_or(ArithError::Pole)?;
        Ok(n / d)
    }
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("exponent fits in i64")
}

/// Removes the common factor of `n` and `d`.
fn cancel(n: IPoly, d: IPoly) -> (IPoly, IPoly) {
    if d.is_one() {
        return (n, d);
    }
    if d.is_constant() {
        let g = n.content().gcd(&d.lc());
        if g.is_one() {
            return (n, d);
        }
        return (n.div_scalar(&g), d.div_scalar(&g));
    }
    let g = gcd(&n, &d);
    if g.is_one() {
        (n, d)
    } else {
        (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
    }
}

/// Full normalization including the polynomial gcd.
fn build(scale: i64, num: IPoly, den: IPoly) -> FieldElem {
    if num.is_zero() {
        return FieldElem::zero();
    }
    let (num, den) = cancel(num, den);
    finish(scale, num, den)
}

/// Normalization assuming `num` and `den` share no non-monomial factor.
fn finish(scale: i64, num: IPoly, den: IPoly) -> FieldElem {
    if num.is_zero() {
        return FieldElem::zero();
    }
    let dm = den.min_exps();
    let shift: Mono = [-dm[0], -dm[1]];
    let mut num = num.shift(shift);
    let mut den = den.shift(shift);
    let c = num.content().gcd(&den.content());
    if !c.is_one() {
        num = num.div_scalar(&c);
        den = den.div_scalar(&c);
    }
    if den.lc().is_negative() {
        num = num.neg();
        den = den.neg();
    }
    let g = scale.gcd(&num.exponent_gcd()).gcd(&den.exponent_gcd());
    if g > 1 {
        FieldElem { scale: scale / g, num: num.shrink(g), den: den.shrink(g) }
    } else {
        FieldElem { scale, num, den }
    }
}

/// Exact `k`-th root of a positive rational, when rational.
fn rat_root(x: &Rat, k: i64) -> Option<Rat> {
    if k == 1 {
        return Some(x.clone());
    }
    let k = u32::try_from(k).ok()?;
    let n = int_root(x.numer(), k)?;
    let d = int_root(x.denom(), k)?;
    Some(Rat::new(n, d))
}

fn int_root(x: &BigInt, k: u32) -> Option<BigInt> {
    let r = x.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *x {
        Some(r)
    } else {
        None
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.$f(o)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                self.$f(&o)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.$f(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

fn fmt_poly(p: &IPoly, scale: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.terms().iter().enumerate() {
        let mut coef = c.clone();
        if k > 0 {
            if c.is_negative() {
                write!(f, " - ")?;
                coef = -coef;
            } else {
                write!(f, " + ")?;
            }
        } else if c.is_negative() {
            write!(f, "-")?;
            coef = -coef;
        }
        let mut factors: Vec<String> = Vec::new();
        for (name, x) in [("r", e[0]), ("s", e[1])] {
            if x == 0 {
                continue;
            }
            let q = Rat::new(BigInt::from(x), BigInt::from(scale));
            if q.is_one() {
                factors.push(name.to_string());
            } else if q.is_integer() {
                factors.push(format!("{name}^{q}"));
            } else {
                factors.push(format!("{name}^({q})"));
            }
        }
        if factors.is_empty() {
            write!(f, "{coef}")?;
        } else {
            if !coef.is_one() {
                write!(f, "{coef}*")?;
            }
            write!(f, "{}", factors.join("*"))?;
        }
    }
    Ok(())
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_poly(&self.num, self.scale, f);
        }
        write!(f, "(")?;
        fmt_poly(&self.num, self.scale, f)?;
        write!(f, ")/(")?;
        fmt_poly(&self.den, self.scale, f)?;
        write!(f, ")")
    }
}
