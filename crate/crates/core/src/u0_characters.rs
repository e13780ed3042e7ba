//! The torus part `U^0` spanned by `w'_eta w_phi`, its flat subalgebra
//! spanned by `w'_eta w_{-eta}`, the characters `rho^lambda` and
//! `rho^{lambda,mu}`, the twist by `rho^{-rho}` and the Weyl action on flat
//! elements.

use crate::error::{Error, Result};
use crate::euler_form::EulerData;
use crate::exact_arith::{FieldElem, Rat, RsMonomial};
use crate::root_data::{RootSystem, Weight};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Root-lattice form `U` or weight-lattice form of the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeForm {
    Root,
    Weight,
}

impl LatticeForm {
    pub fn admits(&self, w: &Weight) -> bool {
        match self {
            LatticeForm::Root => w.in_root_lattice(),
            LatticeForm::Weight => w.in_weight_lattice(),
        }
    }
}

/// `rho^lambda(w'_eta w_phi) = r^{<lambda,phi> - <eta,lambda>} s^{<lambda,eta> - <phi,lambda>}`.
pub fn rho_eval(ed: &EulerData, lam: &Weight, eta: &Weight, phi: &Weight) -> RsMonomial {
    let r = ed.euler_pair(lam, phi) - ed.euler_pair(eta, lam);
    let s = ed.euler_pair(lam, eta) - ed.euler_pair(phi, lam);
    RsMonomial::new(r, s)
}

/// `rho^{lambda,mu}(w'_eta w_phi) = rho^lambda(w'_eta w_phi) (r s^-1)^{(eta+phi, mu)}`.
pub fn rho_pair_eval(ed: &EulerData, lam: &Weight, mu: &Weight, eta: &Weight, phi: &Weight) -> RsMonomial {
    let base = rho_eval(ed, lam, eta, phi);
    let k = ed.rs.inner_product(&(eta + phi), mu);
    base.mul(&RsMonomial::rs_ratio(k))
}

/// `<w'_{lam1}, w_{lam2}> = r^{<lam1,lam2>} s^{-<lam2,lam1>}`.
pub fn omega_pairing(ed: &EulerData, lam1: &Weight, lam2: &Weight) -> RsMonomial {
    RsMonomial::new(ed.euler_pair(lam1, lam2), -ed.euler_pair(lam2, lam1))
}

/// `chi_{eta,phi}(w'_{eta'} w_{phi'}) = <w'_{eta'}, w_phi> <w'_eta, w_{phi'}>`.
pub fn chi(ed: &EulerData, eta: &Weight, phi: &Weight, eta2: &Weight, phi2: &Weight) -> RsMonomial {
    omega_pairing(ed, eta2, phi).mul(&omega_pairing(ed, eta, phi2))
}

/// Finite combination of `w'_eta w_phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U0Element {
    pub form: LatticeForm,
    terms: BTreeMap<(Weight, Weight), FieldElem>,
}

impl U0Element {
    pub fn zero(form: LatticeForm) -> Self {
        U0Element { form, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, eta: Weight, phi: Weight, c: FieldElem) -> Result<()> {
        if !self.form.admits(&eta) || !self.form.admits(&phi) {
            return Err(Error::Precondition(format!("torus key ({eta}, {phi}) outside the {:?} lattice", self.form)));
        }
        add_into(&mut self.terms, (eta, phi), c);
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Weight, &FieldElem)> {
        self.terms.iter().map(|((e, p), c)| (e, p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The flat part, if every key has the form `(eta, -eta)`.
    pub fn to_flat(&self) -> Option<FlatElement> {
        let mut out = FlatElement::zero();
        for ((eta, phi), c) in &self.terms {
            if !(eta + phi).is_zero() {
                return None;
            }
            out.add_term(eta.clone(), c.clone());
        }
        Some(out)
    }

    /// `sum c rho^{lambda,mu}(w'_eta w_phi)`.
    pub fn eval(&self, ed: &EulerData, lam: &Weight, mu: &Weight) -> FieldElem {
        let mut acc = FieldElem::zero();
        for ((eta, phi), c) in &self.terms {
            acc = acc + c * &rho_pair_eval(ed, lam, mu, eta, phi).to_field();
        }
        acc
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, FieldElem>, k: K, c: FieldElem) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(v) => {
            let s = &*v + &c;
            if s.is_zero() {
                map.remove(&k);
            } else {
                *v = s;
            }
        }
        None => {
            map.insert(k, c);
        }
    }
}

/// Scales each term by `rho^{-rho}(w'_eta w_phi)`.
pub fn gamma_rho_twist(ed: &EulerData, x: &U0Element) -> U0Element {
    twist_by(ed, x, &-&ed.rs.rho)
}

/// Inverse of [`gamma_rho_twist`].
pub fn gamma_rho_untwist(ed: &EulerData, x: &U0Element) -> U0Element {
    twist_by(ed, x, &ed.rs.rho)
}

fn twist_by(ed: &EulerData, x: &U0Element, lam: &Weight) -> U0Element {
    let mut out = U0Element::zero(x.form);
    for ((eta, phi), c) in &x.terms {
        let f = rho_eval(ed, lam, eta, phi).to_field();
        out.terms.insert((eta.clone(), phi.clone()), c * &f);
    }
    out
}

/// Finite combination `sum c_eta w'_eta w_{-eta}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FlatElement {
    terms: BTreeMap<Weight, FieldElem>,
}

#[derive(Serialize, Deserialize)]
struct FlatTermJson {
    eta_omega_coords: Vec<String>,
    coef: FieldElem,
}

impl FlatElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(eta: Weight, c: FieldElem) -> Self {
        let mut out = Self::zero();
        out.add_term(eta, c);
        out
    }

    pub fn add_term(&mut self, eta: Weight, c: FieldElem) {
        add_into(&mut self.terms, eta, c);
    }

    pub fn get(&self, eta: &Weight) -> FieldElem {
        self.terms.get(eta).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &FieldElem)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
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

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&FieldElem::from_int(-1)))
    }

    pub fn scale(&self, k: &FieldElem) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        FlatElement { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    /// Product in the group algebra: keys add.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn to_u0(&self, form: LatticeForm) -> Result<U0Element> {
        let mut out = U0Element::zero(form);
        for (eta, c) in &self.terms {
            out.add_term(eta.clone(), -eta, c.clone())?;
        }
        Ok(out)
    }

    /// `sum c_eta rho^lambda(w'_eta w_{-eta})`.
    pub fn eval(&self, ed: &EulerData, lam: &Weight) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (eta, c) in &self.terms {
            acc = acc + c * &rho_eval(ed, lam, eta, &-eta).to_field();
        }
        acc
    }

    /// Same as `gamma_rho_twist` on the embedded element.
    pub fn twist(&self, ed: &EulerData, by: &Weight) -> FlatElement {
        FlatElement {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * &rho_eval(ed, by, e, &-e).to_field())).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<FlatTermJson> = self
            .terms
            .iter()
            .map(|(e, c)| FlatTermJson {
                eta_omega_coords: e.omega().iter().map(crate::exact_arith::rat_to_string).collect(),
                coef: c.clone(),
            })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }

    pub fn from_json(rs: &RootSystem, v: &serde_json::Value) -> Result<Self> {
        let ts: Vec<FlatTermJson> = serde_json::from_value(v.clone())?;
        let mut out = Self::zero();
        for t in ts {
            let om: Vec<Rat> =
                t.eta_omega_coords.iter().map(|s| crate::exact_arith::parse_rat(s)).collect::<std::result::Result<_, _>>()?;
            if om.len() != rs.rank {
                return Err(Error::Precondition("coordinate vector length differs from rank".into()));
            }
            out.add_term(rs.from_omega(om), t.coef);
        }
        Ok(out)
    }
}

/// Transports coefficients along `eta -> sigma(eta)` where `sigma` applies
/// `word[0]` first.
pub fn weyl_act_flat(rs: &RootSystem, word: &[usize], x: &FlatElement) -> FlatElement {
    let mut out = FlatElement::zero();
    for (eta, c) in &x.terms {
        out.add_term(rs.apply_word(word, eta), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, rint};
    use crate::root_data::LieType;

    fn mono(r: Rat, s: Rat) -> RsMonomial {
        RsMonomial::new(r, s)
    }

    #[test]
    fn rho_examples() {
        let ed = EulerData::for_type(LieType::A, 2).unwrap();
        let z = ed.rs.zero();
        let w1 = ed.rs.fundamental(0);
        let a1 = ed.rs.simple_root(0);
        assert!(rho_eval(&ed, &z, &a1, &w1).is_one());
        assert_eq!(rho_eval(&ed, &w1, &z, &a1), mono(rat(2, 3), rat(-1, 3)));
        let a3 = EulerData::for_type(LieType::A, 3).unwrap();
        let k = a3.rs.from_alpha_ints(&[1, 0, 1]);
        for lam in [a3.rs.fundamental(0), a3.rs.fundamental(1), a3.rs.from_omega_ints(&[3, -1, 2])] {
            assert!(rho_eval(&a3, &lam, &k, &k).is_one());
        }
    }

    #[test]
    fn rho_pair_examples() {
        let ed = EulerData::for_type(LieType::A, 1).unwrap();
        let a = ed.rs.simple_root(0);
        let w = ed.rs.fundamental(0);
        let z = ed.rs.zero();
        assert_eq!(rho_pair_eval(&ed, &z, &w, &a, &a), mono(rint(2), rint(-2)));
        assert_eq!(rho_pair_eval(&ed, &w, &z, &a, &a), rho_eval(&ed, &w, &a, &a));
        assert_eq!(rho_pair_eval(&ed, &w, &w, &a, &-&a), rho_eval(&ed, &w, &a, &-&a));
    }

    #[test]
    fn omega_pairing_examples() {
        let ed = EulerData::for_type(LieType::B, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let p = omega_pairing(&ed, &ed.rs.simple_root(i), &ed.rs.simple_root(j));
                assert_eq!(p, ed.structure_constant(j, i).unwrap());
            }
        }
        let a1 = EulerData::for_type(LieType::A, 1).unwrap();
        let w = a1.rs.fundamental(0);
        assert!(omega_pairing(&a1, &a1.rs.zero(), &w).is_one());
        // <w1, w1> = (1/2)(1/2)<1,1> = 1/4
        assert_eq!(omega_pairing(&a1, &w, &w), mono(rat(1, 4), rat(-1, 4)));
    }

    #[test]
    fn twist_examples() {
        let ed = EulerData::for_type(LieType::A, 1).unwrap();
        let a = ed.rs.simple_root(0);
        let mut x = U0Element::zero(LatticeForm::Root);
        x.add_term(ed.rs.zero(), ed.rs.zero(), FieldElem::one()).unwrap();
        x.add_term(a.clone(), -&a, FieldElem::one()).unwrap();
        let t = gamma_rho_twist(&ed, &x);
        let got: Vec<FieldElem> = t.terms().map(|(_, _, c)| c.clone()).collect();
        assert!(got.contains(&FieldElem::one()));
        assert!(got.contains(&(FieldElem::r().div(&FieldElem::s()).unwrap())));
        assert_eq!(gamma_rho_untwist(&ed, &t), x);
    }

    #[test]
    fn weyl_action_examples() {
        let rs = RootSystem::new(LieType::A, 1).unwrap();
        let a = rs.simple_root(0);
        let x = FlatElement::single(a.clone(), FieldElem::from_int(3));
        assert_eq!(weyl_act_flat(&rs, &[], &x), x);
        assert_eq!(weyl_act_flat(&rs, &[0], &x), FlatElement::single(-&a, FieldElem::from_int(3)));
    }

    #[test]
    fn root_form_rejects_weight_keys() {
        let ed = EulerData::for_type(LieType::A, 1).unwrap();
        let mut x = U0Element::zero(LatticeForm::Root);
        assert!(x.add_term(ed.rs.fundamental(0), ed.rs.zero(), FieldElem::one()).is_err());
    }
}
