//! Sparse bivariate Laurent polynomials with integer exponents and integer
//! coefficients, in variables `u` and `v`.
//!
//! Terms are kept sorted in descending graded-lexicographic order with
//! `u > v`, so the first term is the leading term.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

/// Exponent pair `(deg_u, deg_v)`.
pub type Mono = [i64; 2];

/// Graded-lex comparison with `u > v`.
pub fn grlex(a: &Mono, b: &Mono) -> Ordering {
    (a[0] + a[1]).cmp(&(b[0] + b[1])).then(a[0].cmp(&b[0]))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IPoly {
    terms: Vec<(Mono, BigInt)>,
}

impl IPoly {
    pub fn zero() -> Self {
        IPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            IPoly { terms: vec![([0, 0], c)] }
        }
    }

    pub fn monomial(m: Mono, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            IPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Self {
        let mut map: HashMap<Mono, BigInt> = HashMap::new();
        for (m, c) in it {
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Mono, BigInt>) -> Self {
        let mut terms: Vec<(Mono, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        IPoly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0, 0] && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == [0, 0])
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn lead(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn lc(&self) -> BigInt {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(BigInt::zero)
    }

    /// Componentwise minimum exponent (the monomial content).
    pub fn min_exps(&self) -> Mono {
        let mut m = [i64::MAX, i64::MAX];
        for (e, _) in &self.terms {
            m[0] = m[0].min(e[0]);
            m[1] = m[1].min(e[1]);
        }
        if self.terms.is_empty() {
            [0, 0]
        } else {
            m
        }
    }

    pub fn max_exps(&self) -> Mono {
        let mut m = [i64::MIN, i64::MIN];
        for (e, _) in &self.terms {
            m[0] = m[0].max(e[0]);
            m[1] = m[1].max(e[1]);
        }
        if self.terms.is_empty() {
            [0, 0]
        } else {
            m
        }
    }

    pub fn total_degree_range(&self) -> (i64, i64) {
        let lo = self.terms.iter().map(|(e, _)| e[0] + e[1]).min().unwrap_or(0);
        let hi = self.terms.iter().map(|(e, _)| e[0] + e[1]).max().unwrap_or(0);
        (lo, hi)
    }

    pub fn is_homogeneous(&self) -> bool {
        let (lo, hi) = self.total_degree_range();
        lo == hi
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn shift(&self, by: Mono) -> Self {
        if by == [0, 0] {
            return self.clone();
        }
        IPoly {
            terms: self.terms.iter().map(|(e, c)| ([e[0] + by[0], e[1] + by[1]], c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Divides every coefficient by `k`; caller guarantees exactness.
    pub fn div_scalar(&self, k: &BigInt) -> Self {
        IPoly { terms: self.terms.iter().map(|(e, c)| (*e, c / k)).collect() }
    }

    pub fn neg(&self) -> Self {
        IPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    /// Multiplies every exponent by `k`, i.e. substitutes `u -> u^k, v -> v^k`.
    pub fn stretch(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        IPoly { terms: self.terms.iter().map(|(e, c)| ([e[0] * k, e[1] * k], c.clone())).collect() }
    }

    /// Divides every exponent by `k`; caller guarantees divisibility.
    pub fn shrink(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        IPoly { terms: self.terms.iter().map(|(e, c)| ([e[0] / k, e[1] / k], c.clone())).collect() }
    }

    /// Divides `u`-exponents by `ku` and `v`-exponents by `kv`.
    pub fn shrink_var(&self, ku: i64, kv: i64) -> Self {
        IPoly { terms: self.terms.iter().map(|(e, c)| ([e[0] / ku, e[1] / kv], c.clone())).collect() }
    }

    /// Gcd of all exponents (0 for the constant polynomial).
    pub fn exponent_gcd(&self) -> i64 {
        let mut g = 0i64;
        for (e, _) in &self.terms {
            g = g.gcd(&e[0]).gcd(&e[1]);
        }
        g
    }

    pub fn add(&self, o: &IPoly) -> IPoly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &IPoly) -> IPoly {
        self.merge(o, true)
    }

    fn merge(&self, o: &IPoly, negate: bool) -> IPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match grlex(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0, if negate { -&b.1 } else { b.1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a.1 - &b.1 } else { &a.1 + &b.1 };
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for b in &o.terms[j..] {
            out.push((b.0, if negate { -&b.1 } else { b.1.clone() }));
        }
        IPoly { terms: out }
    }

    pub fn mul(&self, o: &IPoly) -> IPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.is_monomial() {
            let (m, c) = &o.terms[0];
            return IPoly { terms: self.terms.iter().map(|(e, d)| ([e[0] + m[0], e[1] + m[1]], d * c)).collect() };
        }
        if self.is_monomial() {
            return o.mul(self);
        }
        let mut map: HashMap<Mono, BigInt> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let m = [ea[0] + eb[0], ea[1] + eb[1]];
                match map.get_mut(&m) {
                    Some(x) => *x += ca * cb,
                    None => {
                        map.insert(m, ca * cb);
                    }
                }
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, k: u32) -> IPoly {
        let mut acc = IPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` when `d`
    /// does not divide `self`.
    pub fn div_exact(&self, d: &IPoly) -> Option<IPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_monomial() {
            let (m, c) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, a) in &self.terms {
                let (q, r) = a.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push(([e[0] - m[0], e[1] - m[1]], q));
            }
            return Some(IPoly { terms: out });
        }
        let (amin, amax) = (self.min_exps(), self.max_exps());
        let (dmin, dmax) = (d.min_exps(), d.max_exps());
        let lo = [amin[0] - dmin[0], amin[1] - dmin[1]];
        let hi = [amax[0] - dmax[0], amax[1] - dmax[1]];
        let (dm, dc) = d.terms[0].clone();
        let mut rem: std::collections::BTreeMap<GrKey, BigInt> =
            self.terms.iter().map(|(e, c)| (GrKey(*e), c.clone())).collect();
        let mut quot: Vec<(Mono, BigInt)> = Vec::new();
        while let Some((k, c)) = rem.iter().next_back().map(|(k, c)| (*k, c.clone())) {
            let e = k.0;
            let qm = [e[0] - dm[0], e[1] - dm[1]];
            if qm[0] < lo[0] || qm[1] < lo[1] || qm[0] > hi[0] || qm[1] > hi[1] {
                return None;
            }
            let (q, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            for (de, dcoef) in &d.terms {
                let m = GrKey([de[0] + qm[0], de[1] + qm[1]]);
                let entry = rem.entry(m).or_insert_with(BigInt::zero);
                *entry -= dcoef * &q;
                if entry.is_zero() {
                    rem.remove(&m);
                }
            }
            quot.push((qm, q));
        }
        Some(IPoly { terms: quot })
    }

    /// Evaluates at `(u0, v0)`; returns `None` at a pole of a negative power.
    pub fn eval(&self, u0: &BigRational, v0: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let a = rpow(u0, e[0])?;
            let b = rpow(v0, e[1])?;
            acc += a * b * BigRational::from_integer(c.clone());
        }
        Some(acc)
    }

    /// Positive-sign normalization: returns `(sign, self * sign)` making the
    /// leading coefficient positive.
    pub fn make_lc_positive(&self) -> (bool, IPoly) {
        if self.lc().is_negative() {
            (true, self.neg())
        } else {
            (false, self.clone())
        }
    }
}

pub(crate) fn rpow(x: &BigRational, e: i64) -> Option<BigRational> {
    if e >= 0 {
        Some(num_traits::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        None
    } else {
        Some(num_traits::pow(x.recip(), (-e) as usize))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct GrKey(Mono);

impl PartialOrd for GrKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}
