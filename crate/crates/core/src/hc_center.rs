//! Harish-Chandra images of the central elements `z_lambda`, the orbit-sum
//! basis of the Weyl invariants in the flat torus, the triangular change of
//! basis between the two, Grothendieck-ring products and polynomial
//! expressions in the fundamental central elements.

use crate::error::{Error, Result};
use crate::exact_arith::{FieldElem, Rat};
use crate::root_data::{RootSystem, Weight};
use crate::u0_characters::{weyl_act_flat, FlatElement, LatticeForm};
use crate::weight_mults::{freudenthal, MultTable};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// `xi(z_lambda) = sum_mu dim L(lambda)_mu w'_mu w_{-mu}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCImage {
    pub lam: Weight,
    pub flat: FlatElement,
}

impl HCImage {
    pub fn from_table(rs: &RootSystem, table: &MultTable) -> HCImage {
        let mut flat = FlatElement::zero();
        for (w, m) in table.all_weights(rs) {
            flat.add_term(w, FieldElem::from_int(m as i64));
        }
        HCImage { lam: table.lam.clone(), flat }
    }
}

fn check_dominant_integral(lam: &Weight) -> Result<()> {
    if !lam.in_weight_lattice() {
        return Err(Error::Precondition(format!("{lam} is not in the weight lattice")));
    }
    if !lam.is_dominant() {
        return Err(Error::Precondition(format!("{lam} is not dominant")));
    }
    Ok(())
}

pub fn hc_image(rs: &RootSystem, lam: &Weight, form: LatticeForm) -> Result<HCImage> {
    check_dominant_integral(lam)?;
    if form == LatticeForm::Root && !lam.in_root_lattice() {
        return Err(Error::Precondition(format!(
            "{lam} is not in the root lattice; the root-lattice form needs lambda in the dominant part of Q"
        )));
    }
    Ok(HCImage::from_table(rs, &freudenthal(rs, lam)?))
}

/// Sum over the Weyl orbit, each element once.
pub fn orbit_sum(rs: &RootSystem, nu: &Weight) -> FlatElement {
    let mut out = FlatElement::zero();
    for w in rs.weyl_orbit(nu) {
        out.add_term(w, FieldElem::one());
    }
    out
}

/// Checks invariance under every simple reflection.
pub fn check_w_invariant(rs: &RootSystem, x: &FlatElement) -> Result<()> {
    for i in 0..rs.rank {
        let y = weyl_act_flat(rs, &[i], x);
        if &y != x {
            let bad = x
                .terms()
                .find(|(w, c)| x.get(&rs.reflect(i, w)) != **c)
                .map(|(w, _)| w.to_string())
                .unwrap_or_default();
            return Err(Error::Precondition(format!(
                "element is not Weyl invariant: simple reflection s{} moves the coefficient at {bad}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Descending elimination order: larger height first, then larger
/// fundamental-weight coordinates.
fn order_key(w: &Weight) -> (Rat, Vec<Rat>) {
    (w.height(), w.omega().to_vec())
}

fn max_key<V>(m: &BTreeMap<Weight, V>) -> Option<&Weight> {
    m.keys().max_by(|a, b| order_key(a).cmp(&order_key(b)))
}

/// `x = sum c_nu orbit_sum(nu)` for a Weyl-invariant `x`.
pub fn expand_in_orbit_sums(rs: &RootSystem, x: &FlatElement) -> Result<BTreeMap<Weight, FieldElem>> {
    check_w_invariant(rs, x)?;
    let mut rem = x.clone();
    let mut out = BTreeMap::new();
    loop {
        let top = rem
            .support()
            .filter(|w| w.is_dominant())
            .max_by(|a, b| order_key(a).cmp(&order_key(b)))
            .cloned();
        let Some(top) = top else { break };
        let c = rem.get(&top);
        rem = rem.sub(&orbit_sum(rs, &top).scale(&c));
        out.insert(top, c);
    }
    if !rem.is_zero() {
        return Err(Error::Consistency("orbit-sum expansion left a remainder".into()));
    }
    Ok(out)
}

/// Memoized multiplicity tables.
pub struct TableMemo<'a> {
    rs: &'a RootSystem,
    tables: HashMap<Weight, MultTable>,
}

impl<'a> TableMemo<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        TableMemo { rs, tables: HashMap::new() }
    }

    pub fn get(&mut self, lam: &Weight) -> Result<&MultTable> {
        if !self.tables.contains_key(lam) {
            let t = freudenthal(self.rs, lam)?;
            self.tables.insert(lam.clone(), t);
        }
        Ok(&self.tables[lam])
    }
}

/// Rewrites orbit-sum coordinates in the basis of Harish-Chandra images by
/// stripping the maximal key.
fn peel(memo: &mut TableMemo, mut rem: BTreeMap<Weight, BigInt>) -> Result<BTreeMap<Weight, BigInt>> {
    let mut out = BTreeMap::new();
    rem.retain(|_, c| !c.is_zero());
    while let Some(top) = max_key(&rem).cloned() {
        let c = rem.remove(&top).expect("present");
        for (d, m) in memo.get(&top)?.entries() {
            if d == &top {
                continue;
            }
            let e = rem.entry(d.clone()).or_insert_with(BigInt::zero);
            *e -= &c * BigInt::from(m);
            if e.is_zero() {
                rem.remove(d);
            }
        }
        out.insert(top, c);
    }
    Ok(out)
}

/// `orbit_sum(nu) = sum c_mu hc_image(mu)`.
pub fn express_orbit_sum_in_hc(rs: &RootSystem, nu: &Weight) -> Result<BTreeMap<Weight, FieldElem>> {
    check_dominant_integral(nu)?;
    let mut memo = TableMemo::new(rs);
    let seed = BTreeMap::from([(nu.clone(), BigInt::one())]);
    Ok(peel(&mut memo, seed)?.into_iter().map(|(w, c)| (w, FieldElem::from_bigint(c))).collect())
}

fn to_integer(c: &FieldElem) -> Option<BigInt> {
    let q = c.as_rat()?;
    q.is_integer().then(|| q.to_integer())
}

/// Structure constants of `[L(lam)] [L(mu)]`.
pub fn grothendieck_product(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let mut memo = TableMemo::new(rs);
    let a = HCImage::from_table(rs, memo.get(lam)?);
    let b = HCImage::from_table(rs, memo.get(mu)?);
    let prod = a.flat.mul(&b.flat);
    let orbit = expand_in_orbit_sums(rs, &prod)?;
    let mut ints = BTreeMap::new();
    for (w, c) in &orbit {
        let k = to_integer(c).ok_or_else(|| Error::Consistency(format!("non-integer coefficient {c} at {w}")))?;
        ints.insert(w.clone(), k);
    }
    let mut out = BTreeMap::new();
    for (w, c) in peel(&mut memo, ints)? {
        if c.is_negative() {
            return Err(Error::Consistency(format!("negative structure constant {c} at {w}")));
        }
        out.insert(w, c.to_u64().ok_or_else(|| Error::Consistency("structure constant overflow".into()))?);
    }
    Ok(out)
}

/// Polynomial with integer coefficients in `x_1, ..., x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    pub nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct PolyTermJson {
    exponents: Vec<u32>,
    coefficient: String,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        IntPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        let e = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// Terms in descending total degree, then descending exponents.
    pub fn terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        v
    }

    pub fn eval<T, F>(&self, one: T, gens: &[T], mul: F, add: impl Fn(&T, &T) -> T, scale: impl Fn(&T, &BigInt) -> T) -> T
    where
        T: Clone,
        F: Fn(&T, &T) -> T,
    {
        let mut acc: Option<T> = None;
        for (exps, c) in self.terms() {
            let mut m = one.clone();
            for (g, &k) in gens.iter().zip(exps) {
                for _ in 0..k {
                    m = mul(&m, g);
                }
            }
            let t = scale(&m, c);
            acc = Some(match acc {
                None => t,
                Some(a) => add(&a, &t),
            });
        }
        acc.unwrap_or_else(|| scale(&one, &BigInt::zero()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<PolyTermJson> = self
            .terms()
            .into_iter()
            .map(|(e, c)| PolyTermJson { exponents: e.clone(), coefficient: c.to_string() })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts = self.terms();
        if ts.is_empty() {
            return write!(f, "0");
        }
        for (k, (exps, c)) in ts.into_iter().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

type IntChar = BTreeMap<Weight, BigInt>;

fn full_char(rs: &RootSystem, t: &MultTable) -> IntChar {
    t.all_weights(rs).into_iter().map(|(w, m)| (w, BigInt::from(m))).collect()
}

fn char_mul(a: &IntChar, b: &IntChar) -> IntChar {
    let mut out = IntChar::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(x + y).or_insert_with(BigInt::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `P` with `P(xi(z_{w_1}), ..., xi(z_{w_n})) = xi(z_lam)`.
pub fn poly_express(rs: &RootSystem, lam: &Weight) -> Result<IntPolynomial> {
    check_dominant_integral(lam)?;
    let n = rs.rank;
    let mut memo = TableMemo::new(rs);
    let mut fund = Vec::with_capacity(n);
    for i in 0..n {
        fund.push(full_char(rs, memo.get(&rs.fundamental(i))?));
    }
    let mut poly = IntPolynomial::zero(n);
    let mut rem: BTreeMap<Weight, BigInt> = BTreeMap::from([(lam.clone(), BigInt::one())]);
    while let Some(top) = max_key(&rem).cloned() {
        let c = rem[&top].clone();
        let exps: Vec<u32> = top.omega_ints().expect("integral").iter().map(|&k| k as u32).collect();
        let mut ch: IntChar = BTreeMap::from([(rs.zero(), BigInt::one())]);
        for (i, &k) in exps.iter().enumerate() {
            for _ in 0..k {
                ch = char_mul(&ch, &fund[i]);
            }
        }
        let dominant: BTreeMap<Weight, BigInt> = ch.into_iter().filter(|(w, _)| w.is_dominant()).collect();
        for (w, d) in peel(&mut memo, dominant)? {
            let e = rem.entry(w.clone()).or_insert_with(BigInt::zero);
            *e -= &c * d;
            if e.is_zero() {
                rem.remove(&w);
            }
        }
        poly.add_term(exps, c);
    }
    Ok(poly)
}

/// Evaluates `P` at the fundamental Harish-Chandra images.
pub fn poly_substitute(rs: &RootSystem, p: &IntPolynomial) -> Result<FlatElement> {
    let mut gens = Vec::new();
    for i in 0..rs.rank {
        gens.push(hc_image(rs, &rs.fundamental(i), LatticeForm::Weight)?.flat);
    }
    Ok(p.eval(
        FlatElement::single(rs.zero(), FieldElem::one()),
        &gens,
        |a, b| a.mul(b),
        |a, b| a.add(b),
        |a, k| a.scale(&FieldElem::from_bigint(k.clone())),
    ))
}

pub fn decomposition_json(lam: &Weight, mu: &Weight, dec: &BTreeMap<Weight, u64>) -> serde_json::Value {
    let coords = |w: &Weight| w.omega_ints().expect("integral");
    serde_json::json!({
        "lhs": coords(lam),
        "rhs": coords(mu),
        "decomposition": dec.iter().map(|(w, c)| serde_json::json!({"nu": coords(w), "c": c})).collect::<Vec<_>>(),
    })
}

/// Coefficients of a table as rationals, for callers wanting plain numbers.
pub fn constant_table(t: &BTreeMap<Weight, FieldElem>) -> Option<BTreeMap<Weight, Rat>> {
    t.iter().map(|(w, c)| c.as_rat().map(|q| (w.clone(), q))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::LieType;

    fn rsys(t: LieType, n: usize) -> RootSystem {
        RootSystem::new(t, n).unwrap()
    }

    fn fe(k: i64) -> FieldElem {
        FieldElem::from_int(k)
    }

    #[test]
    fn hc_image_examples() {
        let a2 = rsys(LieType::A, 2);
        let h = hc_image(&a2, &a2.zero(), LatticeForm::Weight).unwrap();
        assert_eq!(h.flat, FlatElement::single(a2.zero(), fe(1)));
        let w1 = a2.fundamental(0);
        let h = hc_image(&a2, &w1, LatticeForm::Weight).unwrap();
        let a1 = a2.simple_root(0);
        let a2r = a2.simple_root(1);
        let mut want = FlatElement::zero();
        want.add_term(w1.clone(), fe(1));
        want.add_term(&w1 - &a1, fe(1));
        want.add_term(&(&w1 - &a1) - &a2r, fe(1));
        assert_eq!(h.flat, want);
        assert!(hc_image(&a2, &w1, LatticeForm::Root).unwrap_err().to_string().contains("root lattice"));

        let sl2 = rsys(LieType::A, 1);
        let l = sl2.from_omega_ints(&[2]);
        let h = hc_image(&sl2, &l, LatticeForm::Root).unwrap();
        assert_eq!(h.flat.len(), 3);
        for k in [-2, 0, 2] {
            assert_eq!(h.flat.get(&sl2.from_omega_ints(&[k])), fe(1));
        }
        assert!(hc_image(&sl2, &sl2.from_omega_ints(&[-1]), LatticeForm::Weight).is_err());
    }

    #[test]
    fn orbit_sum_examples() {
        let a2 = rsys(LieType::A, 2);
        assert_eq!(orbit_sum(&a2, &a2.zero()), FlatElement::single(a2.zero(), fe(1)));
        let o = orbit_sum(&a2, &a2.fundamental(0));
        assert_eq!(o.len(), 3);
        assert!(o.terms().all(|(_, c)| c.is_one()));
        let sl2 = rsys(LieType::A, 1);
        let o = orbit_sum(&sl2, &sl2.from_omega_ints(&[2]));
        assert_eq!(o.len(), 2);
        assert_eq!(o.get(&sl2.from_omega_ints(&[-2])), fe(1));
    }

    #[test]
    fn expansion_examples() {
        let a2 = rsys(LieType::A, 2);
        let nu = a2.from_omega_ints(&[1, 1]);
        let e = expand_in_orbit_sums(&a2, &orbit_sum(&a2, &nu)).unwrap();
        assert_eq!(e, BTreeMap::from([(nu.clone(), fe(1))]));
        let h = hc_image(&a2, &nu, LatticeForm::Weight).unwrap();
        let e = expand_in_orbit_sums(&a2, &h.flat).unwrap();
        assert_eq!(e, BTreeMap::from([(nu.clone(), fe(1)), (a2.zero(), fe(2))]));
        let bad = FlatElement::single(a2.fundamental(0), fe(1));
        let err = expand_in_orbit_sums(&a2, &bad).unwrap_err().to_string();
        assert!(err.contains("s1"), "{err}");
    }

    #[test]
    fn express_examples() {
        let a2 = rsys(LieType::A, 2);
        assert_eq!(express_orbit_sum_in_hc(&a2, &a2.zero()).unwrap(), BTreeMap::from([(a2.zero(), fe(1))]));
        let nu = a2.from_omega_ints(&[1, 1]);
        assert_eq!(
            express_orbit_sum_in_hc(&a2, &nu).unwrap(),
            BTreeMap::from([(nu, fe(1)), (a2.zero(), fe(-2))])
        );
        let sl2 = rsys(LieType::A, 1);
        let nu = sl2.from_omega_ints(&[2]);
        assert_eq!(
            express_orbit_sum_in_hc(&sl2, &nu).unwrap(),
            BTreeMap::from([(nu, fe(1)), (sl2.zero(), fe(-1))])
        );
    }

    #[test]
    fn product_examples() {
        let a2 = rsys(LieType::A, 2);
        let (w1, w2) = (a2.fundamental(0), a2.fundamental(1));
        assert_eq!(grothendieck_product(&a2, &a2.zero(), &w1).unwrap(), BTreeMap::from([(w1.clone(), 1)]));
        assert_eq!(
            grothendieck_product(&a2, &w1, &w2).unwrap(),
            BTreeMap::from([(a2.from_omega_ints(&[1, 1]), 1), (a2.zero(), 1)])
        );
        let sl2 = rsys(LieType::A, 1);
        let w = sl2.fundamental(0);
        assert_eq!(
            grothendieck_product(&sl2, &w, &w).unwrap(),
            BTreeMap::from([(sl2.from_omega_ints(&[2]), 1), (sl2.zero(), 1)])
        );
    }

    #[test]
    fn poly_examples() {
        let a2 = rsys(LieType::A, 2);
        assert_eq!(poly_express(&a2, &a2.fundamental(1)).unwrap().to_string(), "x2");
        let p = poly_express(&a2, &a2.from_omega_ints(&[1, 1])).unwrap();
        assert_eq!(p.to_string(), "x1*x2 - 1");
        let sl2 = rsys(LieType::A, 1);
        assert_eq!(poly_express(&sl2, &sl2.from_omega_ints(&[2])).unwrap().to_string(), "x1^2 - 1");
        assert_eq!(poly_express(&sl2, &sl2.zero()).unwrap().to_string(), "1");
        let l = a2.from_omega_ints(&[2, 1]);
        let p = poly_express(&a2, &l).unwrap();
        assert_eq!(poly_substitute(&a2, &p).unwrap(), hc_image(&a2, &l, LatticeForm::Weight).unwrap().flat);
    }
}
