//! Laurent polynomials in `r, s` with rational exponents and coefficients,
//! plus the JSON encodings of rationals, polynomials and field elements.

use super::field::FieldElem;
use super::poly::IPoly;
use super::{ArithError, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

pub fn rat_to_string(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let t = s.trim();
    let bad = || ArithError::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ArithError::ZeroDenominator);
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter for `Rat` as the string `"p/q"`.
pub mod rat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>`.
pub mod rat_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rat_to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rat(s).map_err(D::Error::custom)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    r: String,
    s: String,
    c: String,
}

/// Finitely supported map `(a, b) -> c` meaning `sum c r^a s^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentRS {
    terms: BTreeMap<(Rat, Rat), Rat>,
}

impl LaurentRS {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: Rat, b: Rat, c: Rat) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, c);
        out
    }

    pub fn add_term(&mut self, a: Rat, b: Rat, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let v = self.terms.get(&key).cloned().unwrap_or_else(Rat::zero) + c;
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat, &Rat)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least common denominator of all exponents.
    pub fn exponent_denominator(&self) -> BigInt {
        let mut l = BigInt::from(1);
        for (a, b) in self.terms.keys() {
            l = l.lcm(a.denom()).lcm(b.denom());
        }
        l
    }

    /// Integer polynomial in `u = r^(1/scale)`, `v = s^(1/scale)` together with
    /// the positive integer it was multiplied by to clear coefficient
    /// denominators.
    fn integerize(&self, scale: &BigInt) -> (IPoly, BigInt) {
        let mut cden = BigInt::from(1);
        for c in self.terms.values() {
            cden = cden.lcm(c.denom());
        }
        let sc = Rat::from_integer(scale.clone());
        let p = IPoly::from_terms(self.terms.iter().map(|((a, b), c)| {
            let ea = i64::try_from((a * &sc).to_integer()).expect("exponent fits");
            let eb = i64::try_from((b * &sc).to_integer()).expect("exponent fits");
            ([ea, eb], (c * Rat::from_integer(cden.clone())).to_integer())
        }));
        (p, cden)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|x, y| {
            let (dx, dy) = (&x.0 .0 + &x.0 .1, &y.0 .0 + &y.0 .1);
            dy.cmp(&dx).then(y.0 .0.cmp(&x.0 .0))
        });
        let v: Vec<TermJson> = ts
            .into_iter()
            .map(|((a, b), c)| TermJson { r: rat_to_string(a), s: rat_to_string(b), c: rat_to_string(c) })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ArithError> {
        let ts: Vec<TermJson> =
            serde_json::from_value(v.clone()).map_err(|e| ArithError::Parse(e.to_string()))?;
        let mut out = Self::zero();
        for t in ts {
            out.add_term(parse_rat(&t.r)?, parse_rat(&t.s)?, parse_rat(&t.c)?);
        }
        Ok(out)
    }
}

/// Reduces `num / den` to canonical form.
pub fn normalize_fraction(num: &LaurentRS, den: &LaurentRS) -> Result<FieldElem, ArithError> {
    if den.is_zero() {
        return Err(ArithError::ZeroDenominator);
    }
    let scale = num.exponent_denominator().lcm(&den.exponent_denominator());
    let (n, cn) = num.integerize(&scale);
    let (d, cd) = den.integerize(&scale);
    // num/den = (n/cn)/(d/cd) = (n*cd)/(d*cn)
    let s = i64::try_from(scale).map_err(|_| ArithError::BadScale(0))?;
    FieldElem::from_parts(s, n.scale(&cd), d.scale(&cn))
}

impl FieldElem {
    pub fn num_laurent(&self) -> LaurentRS {
        let mut out = LaurentRS::zero();
        for (a, b, c) in self.rational_parts().0 {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn den_laurent(&self) -> LaurentRS {
        let mut out = LaurentRS::zero();
        for (a, b, c) in self.rational_parts().1 {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn from_laurent(p: &LaurentRS) -> Self {
        normalize_fraction(p, &LaurentRS::monomial(Rat::zero(), Rat::zero(), Rat::from_integer(1.into())))
            .expect("unit denominator")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num_laurent().to_json(), "den": self.den_laurent().to_json() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ArithError> {
        let num = LaurentRS::from_json(v.get("num").ok_or_else(|| ArithError::Parse("missing num".into()))?)?;
        let den = LaurentRS::from_json(v.get("den").ok_or_else(|| ArithError::Parse("missing den".into()))?)?;
        normalize_fraction(&num, &den)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        FieldElem::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn normalize_examples() {
        let mut num = LaurentRS::zero();
        num.add_term(rat(1, 1), rat(1, 1), rat(1, 1));
        num.add_term(rat(0, 1), rat(2, 1), rat(-1, 1));
        let den = LaurentRS::monomial(rat(0, 1), rat(1, 1), rat(1, 1));
        let x = normalize_fraction(&num, &den).unwrap();
        assert_eq!(x, FieldElem::r() - FieldElem::s());
        let h = LaurentRS::monomial(rat(1, 2), rat(0, 1), rat(1, 1));
        let one = LaurentRS::monomial(rat(0, 1), rat(0, 1), rat(1, 1));
        let hh = normalize_fraction(&h, &one).unwrap();
        assert_eq!(&hh * &hh, FieldElem::r());
        assert!(normalize_fraction(&one, &LaurentRS::zero()).is_err());
    }

    #[test]
    fn json_round_trip_with_fractional_coefficients() {
        let mut num = LaurentRS::zero();
        num.add_term(rat(1, 3), rat(-2, 3), rat(5, 7));
        num.add_term(rat(0, 1), rat(0, 1), rat(-1, 2));
        let mut den = LaurentRS::zero();
        den.add_term(rat(1, 1), rat(0, 1), rat(3, 1));
        den.add_term(rat(0, 1), rat(1, 1), rat(1, 1));
        let x = normalize_fraction(&num, &den).unwrap();
        let j = x.to_json();
        let y = FieldElem::from_json(&j).unwrap();
        assert_eq!(x, y);
        // denominator is reported monic
        let d = x.den_laurent().to_json();
        assert_eq!(d[0]["c"], "1/1");
    }

    #[test]
    fn rat_strings() {
        assert_eq!(rat_to_string(&rat(-6, 4)), "-3/2");
        assert_eq!(rat_to_string(&rat(2, 1)), "2/1");
        assert_eq!(parse_rat("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
    }
}
