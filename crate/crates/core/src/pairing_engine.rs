//! The skew Hopf pairing between the free algebras on `f_i` and `e_i`,
//! Gram matrices per degree, radicals, dual bases and the Rosso form.
//!
//! The pairing is extended by `<y y', x> = <y, x_(1)> <y', x_(2)>` and
//! `<y, x x'> = <y_(1), x'> <y_(2), x>` from the coproducts
//! `D(e_i) = e_i (x) 1 + w_i (x) e_i`, `D(f_i) = 1 (x) f_i + f_i (x) w'_i`.
//! For words this gives the recursion
//!
//! `<f_i f_I, e_J> = <f_i, e_i> sum_{t : j_t = i} (prod_{u < t} a_{j_u i}) <f_I, e_{J - t}>`.
//!
//! All pairings of degree `beta` share the denominator
//! `prod_i (s_i - r_i)^{beta_i}`, so the engine works with the scaled
//! Laurent polynomials and divides only at the end.

use crate::error::{Error, Result};
use crate::euler_form::EulerData;
use crate::exact_arith::linalg::{greedy_rows, inverse, transpose, Matrix};
use crate::exact_arith::{FieldElem, IPoly, RsMonomial};
use crate::root_data::Weight;
use crate::u0_characters::omega_pairing;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

pub const DEFAULT_HEIGHT_CUTOFF: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    /// Words in the `e_i`.
    Plus,
    /// Words in the `f_i`.
    Minus,
}

/// A word in the generators of one sign; letters are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<usize>,
    sign: Sign,
}

impl FreeWord {
    pub fn new(sign: Sign, letters: Vec<usize>) -> Self {
        FreeWord { letters, sign }
    }

    pub fn plus(letters: &[usize]) -> Self {
        Self::new(Sign::Plus, letters.to_vec())
    }

    pub fn minus(letters: &[usize]) -> Self {
        Self::new(Sign::Minus, letters.to_vec())
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Simple-root coordinates of the degree.
    pub fn degree(&self, rank: usize) -> Vec<i64> {
        degree_of(&self.letters, rank)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let g = match self.sign {
            Sign::Plus => 'e',
            Sign::Minus => 'f',
        };
        let parts: Vec<String> = self.letters.iter().map(|i| format!("{g}{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

pub fn degree_of(letters: &[usize], rank: usize) -> Vec<i64> {
    let mut d = vec![0i64; rank];
    for &i in letters {
        d[i] += 1;
    }
    d
}

/// Linear combination of words of one sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comb {
    pub sign: Sign,
    terms: BTreeMap<Vec<usize>, FieldElem>,
}

impl Comb {
    pub fn zero(sign: Sign) -> Self {
        Comb { sign, terms: BTreeMap::new() }
    }

    pub fn word(sign: Sign, letters: &[usize]) -> Self {
        let mut c = Self::zero(sign);
        c.add_term(letters.to_vec(), FieldElem::one());
        c
    }

    pub fn one(sign: Sign) -> Self {
        Self::word(sign, &[])
    }

    pub fn add_term(&mut self, w: Vec<usize>, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = x.add_ref(&c);
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &FieldElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &FieldElem) -> Self {
        let mut out = Self::zero(self.sign);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    serde_json::json!({
                        "word": w.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "coef": c,
                    })
                })
                .collect(),
        )
    }
}

/// All distinct words with the given letter multiplicities, in
/// lexicographic order.
pub fn words_of_degree(beta: &[i64]) -> Vec<Vec<usize>> {
    fn rec(left: &mut Vec<i64>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.iter().all(|&k| k == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut beta.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Pivot bases of the degree-`beta` parts of both halves.
#[derive(Clone, Debug)]
pub struct Level {
    pub beta: Vec<i64>,
    pub f_basis: Vec<Vec<usize>>,
    pub e_basis: Vec<Vec<usize>>,
    /// Inverse of the scaled pivot Gram matrix `S[p][q]`.
    pub scaled_inv: Matrix<FieldElem>,
}

type WordPair = (Vec<usize>, Vec<usize>);

pub struct PairingEngine {
    pub ed: EulerData,
    /// `a[i][j] = r^{a[i][j].0} s^{a[i][j].1}`.
    a: Vec<Vec<(i64, i64)>>,
    memo: RwLock<HashMap<WordPair, IPoly>>,
    levels: RwLock<HashMap<Vec<i64>, Arc<Level>>>,
}

impl PairingEngine {
    pub fn new(ed: EulerData) -> Self {
        let n = ed.rank();
        let a = (0..n).map(|i| (0..n).map(|j| (ed.r[i][j], ed.s[i][j])).collect()).collect();
        PairingEngine { ed, a, memo: RwLock::new(HashMap::new()), levels: RwLock::new(HashMap::new()) }
    }

    pub fn rank(&self) -> usize {
        self.ed.rank()
    }

    /// `prod_i (s_i - r_i)^{beta_i}` times the pairing of two words.
    pub fn scaled(&self, f: &[usize], e: &[usize]) -> IPoly {
        if f.len() != e.len() {
            return IPoly::zero();
        }
        if f.is_empty() {
            return IPoly::one();
        }
        let key = (f.to_vec(), e.to_vec());
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let i = f[0];
        let mut acc = IPoly::zero();
        let mut pre = [0i64, 0i64];
        let mut rest = Vec::with_capacity(e.len() - 1);
        for (t, &j) in e.iter().enumerate() {
            if j == i {
                rest.clear();
                rest.extend_from_slice(&e[..t]);
                rest.extend_from_slice(&e[t + 1..]);
                let sub = self.scaled(&f[1..], &rest);
                if !sub.is_zero() {
                    acc = acc.add(&sub.shift(pre));
                }
            }
            pre[0] += self.a[j][i].0;
            pre[1] += self.a[j][i].1;
        }
        self.memo.write().expect("memo lock").insert(key, acc.clone());
        acc
    }

    /// `prod_i (s_i - r_i)^{beta_i}`.
    pub fn denominator(&self, beta: &[i64]) -> FieldElem {
        let mut out = FieldElem::one();
        for (i, &k) in beta.iter().enumerate() {
            let d = self.ed.rs.symmetrizers[i];
            let base = FieldElem::rs_power(0, d).sub_ref(&FieldElem::rs_power(d, 0));
            out = out.mul_ref(&base.pow(k).expect("nonzero"));
        }
        out
    }

    pub fn pair_words(&self, fw: &FreeWord, ew: &FreeWord) -> FieldElem {
        let n = self.rank();
        let beta = fw.degree(n);
        if beta != ew.degree(n) {
            return FieldElem::zero();
        }
        let p = FieldElem::from_poly(self.scaled(fw.letters(), ew.letters()));
        p.div(&self.denominator(&beta)).expect("nonzero denominator")
    }

    /// Bilinear extension of `pair_words`.
    pub fn pair_combs(&self, f: &Comb, e: &Comb) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (fw, c) in f.terms() {
            for (ew, d) in e.terms() {
                if fw.len() != ew.len() {
                    continue;
                }
                let p = self.pair_words(&FreeWord::minus(fw), &FreeWord::plus(ew));
                if !p.is_zero() {
                    acc = acc + &(c * d) * &p;
                }
            }
        }
        acc
    }

    /// The square of the antipode on the degree `-beta` part of the minus
    /// half: `(r s^-1)^{(2/ell)(rho, beta)}`.
    pub fn s2_scalar(&self, beta: &[i64]) -> FieldElem {
        let w = self.ed.rs.from_alpha_ints(beta);
        RsMonomial::rs_ratio(self.ed.rs.rho_exponent(&w)).to_field()
    }

    /// `a_ij` as a field element (0-based).
    pub fn structure(&self, i: usize, j: usize) -> FieldElem {
        let (r, s) = self.a[i][j];
        FieldElem::rs_power(r, s)
    }

    fn scaled_matrix(&self, fs: &[Vec<usize>], es: &[Vec<usize>]) -> Matrix<FieldElem> {
        fs.iter().map(|f| es.iter().map(|e| FieldElem::from_poly(self.scaled(f, e))).collect()).collect()
    }

    /// Pivot bases for degree `beta`, built from the pivots one step down.
    pub fn level(&self, beta: &[i64]) -> Arc<Level> {
        if let Some(l) = self.levels.read().expect("level lock").get(beta) {
            return l.clone();
        }
        let l = Arc::new(self.build_level(beta));
        self.levels.write().expect("level lock").insert(beta.to_vec(), l.clone());
        l
    }

    fn build_level(&self, beta: &[i64]) -> Level {
        if beta.iter().all(|&k| k == 0) {
            return Level {
                beta: beta.to_vec(),
                f_basis: vec![vec![]],
                e_basis: vec![vec![]],
                scaled_inv: vec![vec![FieldElem::one()]],
            };
        }
        let mut fc = Vec::new();
        let mut ec = Vec::new();
        for i in 0..beta.len() {
            if beta[i] == 0 {
                continue;
            }
            let mut lower = beta.to_vec();
            lower[i] -= 1;
            let l = self.level(&lower);
            for p in &l.f_basis {
                let mut w = vec![i];
                w.extend_from_slice(p);
                fc.push(w);
            }
            for q in &l.e_basis {
                let mut w = vec![i];
                w.extend_from_slice(q);
                ec.push(w);
            }
        }
        fc.sort();
        fc.dedup();
        ec.sort();
        ec.dedup();
        let m = self.scaled_matrix(&fc, &ec);
        let rows = greedy_rows(&m);
        let sub: Matrix<FieldElem> = rows.iter().map(|&r| m[r].clone()).collect();
        let cols = greedy_rows(&transpose(&sub));
        let f_basis: Vec<Vec<usize>> = rows.iter().map(|&r| fc[r].clone()).collect();
        let e_basis: Vec<Vec<usize>> = cols.iter().map(|&c| ec[c].clone()).collect();
        let s: Matrix<FieldElem> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
        let scaled_inv = inverse(&s).expect("pivot minor is invertible");
        Level { beta: beta.to_vec(), f_basis, e_basis, scaled_inv }
    }

    /// Coordinates of an f-word in the pivot basis of its degree.
    pub fn f_coords(&self, word: &[usize]) -> Vec<FieldElem> {
        let l = self.level(&degree_of(word, self.rank()));
        let b: Vec<FieldElem> = l.e_basis.iter().map(|q| FieldElem::from_poly(self.scaled(word, q))).collect();
        row_times(&b, &l.scaled_inv)
    }

    /// Coordinates of an e-word in the pivot basis of its degree.
    pub fn e_coords(&self, word: &[usize]) -> Vec<FieldElem> {
        let l = self.level(&degree_of(word, self.rank()));
        let b: Vec<FieldElem> = l.f_basis.iter().map(|p| FieldElem::from_poly(self.scaled(p, word))).collect();
        let n = b.len();
        (0..n)
            .map(|q| {
                let mut acc = FieldElem::zero();
                for (p, bp) in b.iter().enumerate() {
                    if !bp.is_zero() && !l.scaled_inv[q][p].is_zero() {
                        acc = acc + &l.scaled_inv[q][p] * bp;
                    }
                }
                acc
            })
            .collect()
    }

    /// Dual bases of degree `beta`: `u_i` are the pivot e-words and `v_j`
    /// combinations of pivot f-words with `<v_j, u_i> = delta_ij`.
    pub fn level_dual_bases(&self, beta: &[i64]) -> (Vec<Comb>, Vec<Comb>) {
        let l = self.level(beta);
        let d = self.denominator(beta);
        let us = l.e_basis.iter().map(|q| Comb::word(Sign::Plus, q)).collect();
        let vs = (0..l.f_basis.len())
            .map(|j| {
                let mut c = Comb::zero(Sign::Minus);
                for (p, w) in l.f_basis.iter().enumerate() {
                    c.add_term(w.clone(), &d * &l.scaled_inv[j][p]);
                }
                c
            })
            .collect();
        (us, vs)
    }
}

fn row_times(b: &[FieldElem], m: &Matrix<FieldElem>) -> Vec<FieldElem> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            let mut acc = FieldElem::zero();
            for (i, bi) in b.iter().enumerate() {
                if !bi.is_zero() && !m[i][j].is_zero() {
                    acc = acc + bi * &m[i][j];
                }
            }
            acc
        })
        .collect()
}

/// Gram data over all words of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramData {
    pub beta: Vec<i64>,
    pub f_words: Vec<FreeWord>,
    pub e_words: Vec<FreeWord>,
    /// `gram[p][q] = <f_words[p], e_words[q]>`.
    pub gram: Matrix<FieldElem>,
    pub pivot_rows: Vec<usize>,
    pub pivot_columns: Vec<usize>,
    /// Row `j` holds the coefficients of `v_j` on the pivot f-words.
    pub dual_change: Matrix<FieldElem>,
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    #[serde(rename = "type")]
    type_tag: String,
    rank: usize,
    beta: Vec<i64>,
    words: Vec<Vec<usize>>,
    gram: Vec<Vec<FieldElem>>,
    pivot_rows: Vec<usize>,
    pivot_columns: Vec<usize>,
    dual_change: Vec<Vec<FieldElem>>,
    convention: String,
}

/// Extension law of the pairing, recorded in emitted Gram documents.
pub const PAIRING_CONVENTION: &str = "<y y', x> = <y, x_(1)> <y', x_(2)>; <y, x x'> = <y_(1), x'> <y_(2), x>";

impl GramData {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn to_json(&self, eng: &PairingEngine) -> serde_json::Value {
        let j = GramJson {
            type_tag: eng.ed.rs.type_tag.to_string(),
            rank: eng.rank(),
            beta: self.beta.clone(),
            words: self.f_words.iter().map(|w| w.letters().iter().map(|i| i + 1).collect()).collect(),
            gram: self.gram.clone(),
            pivot_rows: self.pivot_rows.clone(),
            pivot_columns: self.pivot_columns.clone(),
            dual_change: self.dual_change.clone(),
            convention: PAIRING_CONVENTION.to_string(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GramData> {
        let j: GramJson = serde_json::from_value(v.clone())?;
        let words: Vec<Vec<usize>> = j
            .words
            .iter()
            .map(|w| w.iter().map(|&i| i.checked_sub(1).ok_or_else(|| Error::Cache("letter 0 in word".into()))).collect())
            .collect::<Result<_>>()?;
        Ok(GramData {
            beta: j.beta,
            f_words: words.iter().map(|w| FreeWord::minus(w)).collect(),
            e_words: words.iter().map(|w| FreeWord::plus(w)).collect(),
            gram: j.gram,
            pivot_rows: j.pivot_rows,
            pivot_columns: j.pivot_columns,
            dual_change: j.dual_change,
        })
    }
}

/// Full Gram matrix of degree `beta` with lexicographically greedy pivots.
pub fn gram_matrix(eng: &PairingEngine, beta: &[i64], cutoff: i64) -> Result<GramData> {
    if beta.len() != eng.rank() || beta.iter().any(|&k| k < 0) {
        return Err(Error::Precondition(format!("{beta:?} is not a nonnegative degree of rank {}", eng.rank())));
    }
    let h: i64 = beta.iter().sum();
    if h > cutoff {
        return Err(Error::Precondition(format!("height {h} exceeds the Gram cutoff {cutoff}")));
    }
    let words = words_of_degree(beta);
    let scaled = eng.scaled_matrix(&words, &words);
    let pivot_rows = greedy_rows(&scaled);
    let sub: Matrix<FieldElem> = pivot_rows.iter().map(|&r| scaled[r].clone()).collect();
    let pivot_columns = greedy_rows(&transpose(&sub));
    let d = eng.denominator(beta);
    let dinv = d.inv().expect("nonzero");
    let gram = scaled.iter().map(|row| row.iter().map(|x| x * &dinv).collect()).collect();
    let s: Matrix<FieldElem> =
        pivot_rows.iter().map(|&r| pivot_columns.iter().map(|&c| scaled[r][c].clone()).collect()).collect();
    let sinv = inverse(&s).ok_or_else(|| Error::Consistency("pivot minor of the Gram matrix is singular".into()))?;
    let dual_change = sinv.iter().map(|row| row.iter().map(|x| x * &d).collect()).collect();
    Ok(GramData {
        beta: beta.to_vec(),
        f_words: words.iter().map(|w| FreeWord::minus(w)).collect(),
        e_words: words.iter().map(|w| FreeWord::plus(w)).collect(),
        gram,
        pivot_rows,
        pivot_columns,
        dual_change,
    })
}

/// `(u_i)` pivot e-words and `(v_j)` with `<v_j, u_i> = delta_ij`.
pub fn dual_bases(gd: &GramData) -> (Vec<Comb>, Vec<Comb>) {
    let us = gd.pivot_columns.iter().map(|&q| Comb::word(Sign::Plus, gd.e_words[q].letters())).collect();
    let vs = gd
        .dual_change
        .iter()
        .map(|row| {
            let mut c = Comb::zero(Sign::Minus);
            for (k, &p) in gd.pivot_rows.iter().enumerate() {
                c.add_term(gd.f_words[p].letters().to_vec(), row[k].clone());
            }
            c
        })
        .collect();
    (us, vs)
}

/// The quantum Serre element of the given sign for the pair `(i, j)`:
/// `(ad_l e_i)^{1-c_ij} (e_j)` or its mirror `(ad_r f_i)^{1-c_ij} (f_j)`.
pub fn serre_element(eng: &PairingEngine, i: usize, j: usize, sign: Sign) -> Comb {
    let n = eng.rank();
    let k = 1 - eng.ed.rs.cartan[i][j];
    let mut y = Comb::word(sign, &[j]);
    for _ in 0..k {
        let mut next = Comb::zero(sign);
        for (w, c) in y.terms() {
            let gamma = degree_of(w, n);
            let mut conj = FieldElem::one();
            for (l, &g) in gamma.iter().enumerate() {
                let a = match sign {
                    Sign::Plus => eng.structure(i, l).pow(g),
                    Sign::Minus => eng.structure(l, i).pow(-g),
                };
                conj = conj.mul_ref(&a.expect("monomial"));
            }
            let mut front = vec![i];
            front.extend_from_slice(w);
            let mut back = w.clone();
            back.push(i);
            match sign {
                Sign::Plus => {
                    next.add_term(front, c.clone());
                    next.add_term(back, -&(c * &conj));
                }
                Sign::Minus => {
                    next.add_term(back, c.clone());
                    next.add_term(front, -&(c * &conj));
                }
            }
        }
        y = next;
    }
    y
}

fn in_radical(eng: &PairingEngine, x: &Comb) -> bool {
    let Some((w0, _)) = x.terms().next() else { return true };
    let beta = degree_of(w0, eng.rank());
    for w in words_of_degree(&beta) {
        let other = Comb::word(if x.sign == Sign::Plus { Sign::Minus } else { Sign::Plus }, &w);
        let p = match x.sign {
            Sign::Plus => eng.pair_combs(&other, x),
            Sign::Minus => eng.pair_combs(x, &other),
        };
        if !p.is_zero() {
            return false;
        }
    }
    true
}

/// Whether the e-side quantum Serre element for `(i, j)` pairs to zero
/// with every f-word of its degree.
pub fn serre_in_radical(eng: &PairingEngine, i: usize, j: usize) -> Result<bool> {
    check_pair(eng, i, j)?;
    Ok(in_radical(eng, &serre_element(eng, i, j, Sign::Plus)))
}

/// The f-side mirror of `serre_in_radical`.
pub fn serre_in_radical_minus(eng: &PairingEngine, i: usize, j: usize) -> Result<bool> {
    check_pair(eng, i, j)?;
    Ok(in_radical(eng, &serre_element(eng, i, j, Sign::Minus)))
}

fn check_pair(eng: &PairingEngine, i: usize, j: usize) -> Result<()> {
    let n = eng.rank();
    if i == j || i >= n || j >= n {
        return Err(Error::Precondition(format!("Serre relation needs distinct indices below {n}, got ({i}, {j})")));
    }
    Ok(())
}

/// `f ω'_eta ω_phi e` with combinations `f`, `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RossoMonomial {
    pub f: Comb,
    pub eta: Weight,
    pub phi: Weight,
    pub e: Comb,
}

impl RossoMonomial {
    pub fn torus(eta: Weight, phi: Weight) -> Self {
        RossoMonomial { f: Comb::one(Sign::Minus), eta, phi, e: Comb::one(Sign::Plus) }
    }
}

/// `<f_a w'_m w_n e_b, f_t w'_s w_d e_g> =
/// <w'_s, w_n> <w'_m, w_d> <f_t, e_b> <S^2(f_a), e_g>`.
pub fn rosso_eval(eng: &PairingEngine, left: &RossoMonomial, right: &RossoMonomial) -> FieldElem {
    let ed = &eng.ed;
    let om = omega_pairing(ed, &right.eta, &left.phi).mul(&omega_pairing(ed, &left.eta, &right.phi));
    let p1 = eng.pair_combs(&right.f, &left.e);
    if p1.is_zero() {
        return FieldElem::zero();
    }
    let mut p2 = FieldElem::zero();
    for (w, c) in left.f.terms() {
        let twisted = Comb::word(Sign::Minus, w).scale(&(c * &eng.s2_scalar(&degree_of(w, eng.rank()))));
        p2 = p2 + eng.pair_combs(&twisted, &right.e);
    }
    &(&om.to_field() * &p1) * &p2
}

/// The form realizing quantum traces: `rosso_eval` times
/// `<w'_mu, w_{phi_L + phi_R}>` with `mu` the degree of the left e-part.
pub fn rosso_trace_form(eng: &PairingEngine, left: &RossoMonomial, right: &RossoMonomial) -> FieldElem {
    let v = rosso_eval(eng, left, right);
    if v.is_zero() {
        return v;
    }
    let ed = &eng.ed;
    let mu = match left.e.terms().next() {
        Some((w, _)) => ed.rs.from_alpha_ints(&degree_of(w, eng.rank())),
        None => return v,
    };
    let shift = omega_pairing(ed, &mu, &(&left.phi + &right.phi));
    &v * &shift.to_field()
}
