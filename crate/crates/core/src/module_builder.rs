//! Truncated Verma modules, finite-dimensional simple modules, the operator
//! `Theta`, the central elements `z_lambda` and their verification.
//!
//! The weight space `M(lambda)_{lambda - beta}` is identified with the
//! degree `-beta` part of the minus half, using the pivot f-words of the
//! pairing engine as basis. `f_i` acts by concatenation followed by
//! reduction; `e_i` by moving through the word with
//! `[e_i, f_j] = delta_ij (w_i - w'_i)/(r_i - s_i)`.

use crate::error::{Error, Result};
use crate::euler_form::EulerData;
use crate::exact_arith::linalg::{greedy_rows, inverse, mat_mul, transpose, Matrix, RowBasis};
use crate::exact_arith::{FieldElem, RsMonomial};
use crate::pairing_engine::{serre_element, Comb, PairingEngine, RossoMonomial, Sign};
use crate::root_data::{RootSystem, Weight};
use crate::u0_characters::{omega_pairing, rho_eval, FlatElement, LatticeForm};
use crate::weight_mults::freudenthal;
use num_traits::ToPrimitive;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Linear map between graded modules stored as weight blocks
/// `(target, source) -> matrix`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockMap {
    entries: BTreeMap<(usize, usize), Matrix<FieldElem>>,
}

fn mat_is_zero(m: &Matrix<FieldElem>) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

fn mat_add(a: &Matrix<FieldElem>, b: &Matrix<FieldElem>) -> Matrix<FieldElem> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

fn mat_scale(a: &Matrix<FieldElem>, k: &FieldElem) -> Matrix<FieldElem> {
    a.iter().map(|r| r.iter().map(|x| if x.is_zero() { x.clone() } else { x * k }).collect()).collect()
}

impl BlockMap {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, target: usize, source: usize, m: Matrix<FieldElem>) {
        match self.entries.get_mut(&(target, source)) {
            Some(old) => {
                let s = mat_add(old, &m);
                if mat_is_zero(&s) {
                    self.entries.remove(&(target, source));
                } else {
                    *old = s;
                }
            }
            None => {
                if !mat_is_zero(&m) {
                    self.entries.insert((target, source), m);
                }
            }
        }
    }

    pub fn get(&self, target: usize, source: usize) -> Option<&Matrix<FieldElem>> {
        self.entries.get(&(target, source))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Matrix<FieldElem>)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self * o`: apply `o` first.
    pub fn mul(&self, o: &BlockMap) -> BlockMap {
        let mut by_target: HashMap<usize, Vec<(usize, &Matrix<FieldElem>)>> = HashMap::new();
        for (&(t, s), m) in &o.entries {
            by_target.entry(t).or_default().push((s, m));
        }
        let mut out = BlockMap::zero();
        for (&(t, k), a) in &self.entries {
            if let Some(list) = by_target.get(&k) {
                for (s, b) in list {
                    out.insert(t, *s, mat_mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &BlockMap) -> BlockMap {
        let mut out = self.clone();
        for (&(t, s), m) in &o.entries {
            out.insert(t, s, m.clone());
        }
        out
    }

    pub fn scale(&self, k: &FieldElem) -> BlockMap {
        if k.is_zero() {
            return BlockMap::zero();
        }
        BlockMap { entries: self.entries.iter().map(|(key, m)| (*key, mat_scale(m, k))).collect() }
    }

    pub fn sub(&self, o: &BlockMap) -> BlockMap {
        self.add(&o.scale(&FieldElem::from_int(-1)))
    }

    /// Restriction to the given source blocks.
    pub fn restrict_sources(&self, keep: impl Fn(usize) -> bool) -> BlockMap {
        BlockMap { entries: self.entries.iter().filter(|((_, s), _)| keep(*s)).map(|(k, m)| (*k, m.clone())).collect() }
    }
}

/// One weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// `highest - weight` in simple-root coordinates.
    pub beta: Vec<i64>,
    pub weight: Weight,
    /// Pivot f-words whose images form the basis.
    pub labels: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct GradedModule {
    pub highest: Weight,
    pub blocks: Vec<Block>,
    index: HashMap<Vec<i64>, usize>,
    pub e: Vec<BlockMap>,
    pub f: Vec<BlockMap>,
    /// `Some(H)` for a Verma module truncated at height `H`.
    pub cutoff: Option<i64>,
}

fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

impl GradedModule {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.labels.len()).sum()
    }

    pub fn block_index(&self, beta: &[i64]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    /// Dimensions per weight.
    pub fn weight_dims(&self) -> BTreeMap<Weight, usize> {
        self.blocks.iter().map(|b| (b.weight.clone(), b.labels.len())).collect()
    }

    /// Blocks where all relations are meaningful.
    pub fn is_interior(&self, b: usize) -> bool {
        match self.cutoff {
            None => true,
            Some(h) => height(&self.blocks[b].beta) < h,
        }
    }

    pub fn diag(&self, scalar: impl Fn(&Weight) -> FieldElem) -> BlockMap {
        let mut out = BlockMap::zero();
        for (k, b) in self.blocks.iter().enumerate() {
            let c = scalar(&b.weight);
            let n = b.labels.len();
            let m = (0..n)
                .map(|i| (0..n).map(|j| if i == j { c.clone() } else { FieldElem::zero() }).collect())
                .collect();
            out.insert(k, k, m);
        }
        out
    }

    pub fn identity(&self) -> BlockMap {
        self.diag(|_| FieldElem::one())
    }

    /// `w'_eta w_phi` acting on the weight `mu` space by `rho^mu(w'_eta w_phi)`.
    pub fn torus(&self, ed: &EulerData, eta: &Weight, phi: &Weight) -> BlockMap {
        self.diag(|mu| rho_eval(ed, mu, eta, phi).to_field())
    }

    /// `Theta`: `(r s^-1)^{-(2/ell)(rho, mu)}` on the weight `mu` space.
    pub fn theta(&self, rs: &RootSystem) -> BlockMap {
        self.diag(|mu| theta_scalar(rs, mu))
    }

    /// The matrix of a word; the last letter acts first.
    pub fn word_map(&self, sign: Sign, word: &[usize]) -> BlockMap {
        let ops = match sign {
            Sign::Plus => &self.e,
            Sign::Minus => &self.f,
        };
        let mut m = self.identity();
        for &i in word.iter().rev() {
            m = ops[i].mul(&m);
        }
        m
    }

    pub fn comb_map(&self, c: &Comb) -> BlockMap {
        let mut out = BlockMap::zero();
        for (w, k) in c.terms() {
            out = out.add(&self.word_map(c.sign, w).scale(k));
        }
        out
    }

    pub fn trace(&self, m: &BlockMap) -> FieldElem {
        let mut acc = FieldElem::zero();
        for k in 0..self.blocks.len() {
            if let Some(b) = m.get(k, k) {
                for (i, row) in b.iter().enumerate() {
                    acc = acc + &row[i];
                }
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ops = |v: &Vec<BlockMap>| {
            v.iter()
                .map(|m| {
                    m.entries()
                        .map(|(&(t, s), mat)| serde_json::json!({"target": t, "source": s, "matrix": mat}))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "highest": self.highest.omega().iter().map(crate::exact_arith::rat_to_string).collect::<Vec<_>>(),
            "truncated_at": self.cutoff,
            "blocks": self.blocks.iter().map(|b| serde_json::json!({
                "beta": b.beta,
                "weight": b.weight.omega().iter().map(crate::exact_arith::rat_to_string).collect::<Vec<_>>(),
                "basis": b.labels.iter().map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "e": ops(&self.e),
            "f": ops(&self.f),
        })
    }
}

pub fn theta_scalar(rs: &RootSystem, mu: &Weight) -> FieldElem {
    RsMonomial::rs_ratio(-rs.rho_exponent(mu)).to_field()
}

/// `(rho^mu(w_i) - rho^mu(w'_i)) / (r_i - s_i)`.
fn cartan_scalar(ed: &EulerData, i: usize, mu: &Weight) -> FieldElem {
    let rs = &ed.rs;
    let z = rs.zero();
    let a = rs.simple_root(i);
    let w = rho_eval(ed, mu, &z, &a).to_field();
    let wp = rho_eval(ed, mu, &a, &z).to_field();
    let d = rs.symmetrizers[i];
    let den = FieldElem::rs_power(d, 0).sub_ref(&FieldElem::rs_power(0, d));
    w.sub_ref(&wp).div(&den).expect("nonzero")
}

fn plus_root(beta: &[i64], i: usize, k: i64) -> Vec<i64> {
    let mut b = beta.to_vec();
    b[i] += k;
    b
}

/// Generator matrices of `M(lam)` on the levels in `betas`:
/// `(f, e)` as maps `(i, source level) -> matrix`.
type LevelOps = HashMap<(usize, Vec<i64>), Matrix<FieldElem>>;

fn verma_ops(eng: &PairingEngine, lam: &Weight, betas: &BTreeSet<Vec<i64>>) -> (LevelOps, LevelOps) {
    let ed = &eng.ed;
    let rs = &ed.rs;
    let n = eng.rank();
    let mut fo = LevelOps::new();
    let mut eo = LevelOps::new();
    let mut kcache: HashMap<(usize, Vec<i64>), FieldElem> = HashMap::new();
    for beta in betas {
        let lvl = eng.level(beta);
        for i in 0..n {
            let up = plus_root(beta, i, 1);
            if betas.contains(&up) {
                let dim_up = eng.level(&up).f_basis.len();
                let mut m = vec![vec![FieldElem::zero(); lvl.f_basis.len()]; dim_up];
                for (c, p) in lvl.f_basis.iter().enumerate() {
                    let mut w = vec![i];
                    w.extend_from_slice(p);
                    for (r, x) in eng.f_coords(&w).into_iter().enumerate() {
                        m[r][c] = x;
                    }
                }
                fo.insert((i, beta.clone()), m);
            }
            if beta[i] > 0 {
                let down = plus_root(beta, i, -1);
                if !betas.contains(&down) {
                    continue;
                }
                let dim_down = eng.level(&down).f_basis.len();
                let mut m = vec![vec![FieldElem::zero(); lvl.f_basis.len()]; dim_down];
                for (c, p) in lvl.f_basis.iter().enumerate() {
                    for t in 0..p.len() {
                        if p[t] != i {
                            continue;
                        }
                        let suffix = crate::pairing_engine::degree_of(&p[t + 1..], n);
                        let k = kcache
                            .entry((i, suffix.clone()))
                            .or_insert_with(|| {
                                let mu = lam - &rs.from_alpha_ints(&suffix);
                                cartan_scalar(ed, i, &mu)
                            })
                            .clone();
                        let mut w = p[..t].to_vec();
                        w.extend_from_slice(&p[t + 1..]);
                        for (r, x) in eng.f_coords(&w).into_iter().enumerate() {
                            if !x.is_zero() {
                                m[r][c] = &m[r][c] + &(&x * &k);
                            }
                        }
                    }
                }
                eo.insert((i, beta.clone()), m);
            }
        }
    }
    (fo, eo)
}

fn ordered_levels(betas: &BTreeSet<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = betas.iter().cloned().collect();
    v.sort_by_key(|b| (height(b), b.clone()));
    v
}

/// All `beta` in the positive root cone with `height(beta) <= h`.
fn cone_up_to(n: usize, h: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![vec![0i64; n]];
    out.insert(vec![0i64; n]);
    for _ in 0..h {
        let mut next = Vec::new();
        for b in &frontier {
            for i in 0..n {
                let c = plus_root(b, i, 1);
                if out.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Verma module `M(lam)` on the weights `lam - beta`, `height(beta) <= h`.
pub fn verma_truncate(eng: &PairingEngine, lam: &Weight, h: i64) -> Result<GradedModule> {
    if h < 1 {
        return Err(Error::Precondition(format!("height cutoff must be at least 1, got {h}")));
    }
    let rs = &eng.ed.rs;
    let n = eng.rank();
    let betas = cone_up_to(n, h);
    let (fo, eo) = verma_ops(eng, lam, &betas);
    let order = ordered_levels(&betas);
    let index: HashMap<Vec<i64>, usize> = order.iter().enumerate().map(|(k, b)| (b.clone(), k)).collect();
    let blocks = order
        .iter()
        .map(|b| Block { beta: b.clone(), weight: lam - &rs.from_alpha_ints(b), labels: eng.level(b).f_basis.clone() })
        .collect();
    let mut e = vec![BlockMap::zero(); n];
    let mut f = vec![BlockMap::zero(); n];
    for ((i, b), m) in fo {
        f[i].insert(index[&plus_root(&b, i, 1)], index[&b], m);
    }
    for ((i, b), m) in eo {
        e[i].insert(index[&plus_root(&b, i, -1)], index[&b], m);
    }
    Ok(GradedModule { highest: lam.clone(), blocks, index, e, f, cutoff: Some(h) })
}

/// `height(lam - w0 lam)`, the depth of `L(lam)`.
pub fn depth(rs: &RootSystem, lam: &Weight) -> i64 {
    let (d, _) = rs.dominant_rep(&-lam);
    let lowest = -&d;
    (lam - &lowest).height().to_integer().to_i64().expect("small")
}

/// Quotient of a level by a subspace, with a chosen complement of pivot
/// coordinates.
struct LevelQuotient {
    sub: Vec<Vec<FieldElem>>,
    complement: Vec<usize>,
    /// Inverse of the rows `[sub; unit vectors of complement]`.
    tinv: Matrix<FieldElem>,
}

impl LevelQuotient {
    fn new(sub: Vec<Vec<FieldElem>>, dim: usize) -> Self {
        let mut basis = RowBasis::new();
        for v in &sub {
            basis.insert(v);
        }
        let mut complement = Vec::new();
        let mut rows = sub.clone();
        for k in 0..dim {
            let unit: Vec<FieldElem> = (0..dim).map(|j| if j == k { FieldElem::one() } else { FieldElem::zero() }).collect();
            if basis.insert(&unit) {
                complement.push(k);
                rows.push(unit);
            }
        }
        let tinv = if dim == 0 { Vec::new() } else { inverse(&rows).expect("complement spans") };
        LevelQuotient { sub, complement, tinv }
    }

    fn project(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        let ns = self.sub.len();
        (0..self.complement.len())
            .map(|c| {
                let mut acc = FieldElem::zero();
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() && !self.tinv[i][ns + c].is_zero() {
                        acc = acc + xi * &self.tinv[i][ns + c];
                    }
                }
                acc
            })
            .collect()
    }
}

fn column(m: &Matrix<FieldElem>, c: usize) -> Vec<FieldElem> {
    m.iter().map(|r| r[c].clone()).collect()
}

fn apply(m: &Matrix<FieldElem>, v: &[FieldElem]) -> Vec<FieldElem> {
    m.iter()
        .map(|row| {
            let mut acc = FieldElem::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a * b;
                }
            }
            acc
        })
        .collect()
}

/// Simple module `L(lam)`.
///
/// A vector of `L(lam)_{lam - beta}`, `beta != 0`, is represented by its images
/// under `e_1, ..., e_n`; in the simple quotient this map is injective. Level
/// `beta` is spanned by `f_j` applied to the bases of the levels `beta - a_j`,
/// and `e_i f_j = f_j e_i + delta_ij (w_i - w'_i)/(r_i - s_i)` gives the images
/// from data already built. Afterwards the dimensions are compared with the
/// multiplicity table and the vectors `f_i^{(lam, a_i^v) + 1} v_lam` are
/// checked to vanish.
pub fn simple_quotient(eng: &PairingEngine, lam: &Weight, h: i64) -> Result<GradedModule> {
    if !lam.in_weight_lattice() || !lam.is_dominant() {
        return Err(Error::Precondition(format!("{lam} is not dominant integral")));
    }
    let ed = &eng.ed;
    let rs = &ed.rs;
    let n = eng.rank();
    let dp = depth(rs, lam);
    if h < dp {
        return Err(Error::Precondition(format!(
            "height cutoff {h} is too small for L({lam}): its weights reach depth {dp}; use a cutoff of at least {dp}"
        )));
    }
    struct Level {
        labels: Vec<Vec<usize>>,
        /// `images[k][i]`: coordinates of `e_i` applied to basis vector `k`.
        images: Vec<Vec<Vec<FieldElem>>>,
        /// Pivot columns of the stacked images and the inverse of that minor.
        pivots: Vec<usize>,
        minor_inv: Matrix<FieldElem>,
    }
    fn flatten(im: &[Vec<FieldElem>]) -> Vec<FieldElem> {
        im.iter().flatten().cloned().collect()
    }
    let mut levels: BTreeMap<Vec<i64>, Level> = BTreeMap::new();
    // f_j : level beta - a_j -> level beta, keyed by (j, beta).
    let mut fmats: HashMap<(usize, Vec<i64>), Matrix<FieldElem>> = HashMap::new();
    let zero = vec![0i64; n];
    levels.insert(zero.clone(), Level { labels: vec![vec![]], images: vec![vec![vec![]; n]], pivots: vec![], minor_inv: vec![] });
    let coords = |lvl: &Level, x: &[FieldElem]| -> Vec<FieldElem> {
        (0..lvl.labels.len())
            .map(|c| {
                let mut acc = FieldElem::zero();
                for (k, &p) in lvl.pivots.iter().enumerate() {
                    if !x[p].is_zero() && !lvl.minor_inv[k][c].is_zero() {
                        acc = acc + &x[p] * &lvl.minor_inv[k][c];
                    }
                }
                acc
            })
            .collect()
    };
    let dim_of = |levels: &BTreeMap<Vec<i64>, Level>, b: &[i64]| levels.get(b).map_or(0, |l| l.labels.len());
    let mut frontier = vec![zero.clone()];
    for height in 1..=h + 1 {
        let mut targets: BTreeSet<Vec<i64>> = BTreeSet::new();
        for b in &frontier {
            for j in 0..n {
                targets.insert(plus_root(b, j, 1));
            }
        }
        let mut next = Vec::new();
        for beta in targets {
            let weight = lam - &rs.from_alpha_ints(&beta);
            // Images of f_j b under each e_i, for every lower basis vector b.
            let mut cands: Vec<(Vec<usize>, usize, usize, Vec<Vec<FieldElem>>)> = Vec::new();
            for j in 0..n {
                if beta[j] == 0 {
                    continue;
                }
                let lower = plus_root(&beta, j, -1);
                let Some(low) = levels.get(&lower) else { continue };
                let low_weight = lam - &rs.from_alpha_ints(&lower);
                for (k, label) in low.labels.iter().enumerate() {
                    let mut im = Vec::with_capacity(n);
                    for i in 0..n {
                        if beta[i] == 0 {
                            im.push(vec![]);
                            continue;
                        }
                        let target = plus_root(&beta, i, -1);
                        let tdim = dim_of(&levels, &target);
                        let mut v = vec![FieldElem::zero(); tdim];
                        if tdim > 0 {
                            if i == j {
                                let kk = cartan_scalar(ed, i, &low_weight);
                                v[k] = v[k].add_ref(&kk);
                            }
                            if lower[i] > 0 {
                                if let Some(fm) = fmats.get(&(j, target.clone())) {
                                    let x = &low.images[k][i];
                                    for (r, row) in fm.iter().enumerate() {
                                        for (c, a) in row.iter().enumerate() {
                                            if !a.is_zero() && !x[c].is_zero() {
                                                v[r] = &v[r] + &(a * &x[c]);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                        im.push(v);
                    }
                    let mut word = vec![j];
                    word.extend_from_slice(label);
                    cands.push((word, j, k, im));
                }
            }
            let mut basis = RowBasis::new();
            let mut chosen = Vec::new();
            for (c, (_, _, _, im)) in cands.iter().enumerate() {
                if basis.insert(&flatten(im)) {
                    chosen.push(c);
                }
            }
            if chosen.is_empty() {
                continue;
            }
            if height > h {
                return Err(Error::Consistency(format!("L({lam}) has a nonzero weight space beyond the cutoff at {weight}")));
            }
            let rows: Matrix<FieldElem> = chosen.iter().map(|&c| flatten(&cands[c].3)).collect();
            let pivots = greedy_rows(&transpose(&rows));
            let minor: Matrix<FieldElem> = rows.iter().map(|r| pivots.iter().map(|&p| r[p].clone()).collect()).collect();
            let minor_inv = inverse(&minor).expect("independent rows");
            let lvl = Level {
                labels: chosen.iter().map(|&c| cands[c].0.clone()).collect(),
                images: chosen.iter().map(|&c| cands[c].3.clone()).collect(),
                pivots,
                minor_inv,
            };
            let mut per_j: HashMap<usize, Matrix<FieldElem>> = HashMap::new();
            for (_, j, k, im) in &cands {
                let col = coords(&lvl, &flatten(im));
                let lower = plus_root(&beta, *j, -1);
                let ldim = dim_of(&levels, &lower);
                let m = per_j.entry(*j).or_insert_with(|| vec![vec![FieldElem::zero(); ldim]; lvl.labels.len()]);
                for (r, x) in col.into_iter().enumerate() {
                    m[r][*k] = x;
                }
            }
            for (j, m) in per_j {
                fmats.insert((j, beta.clone()), m);
            }
            levels.insert(beta.clone(), lvl);
            next.push(beta);
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    let table = freudenthal(rs, lam)?;
    for (w, want) in table.all_weights(rs) {
        let beta = (lam - &w).alpha_ints().expect("root lattice");
        let got = dim_of(&levels, &beta);
        let want = want as usize;
        if got != want {
            return Err(Error::Consistency(format!("weight {w} has dimension {got}, multiplicity table says {want}")));
        }
    }
    if levels.len() != table.all_weights(rs).len() {
        return Err(Error::Consistency(format!("L({lam}) has weights outside the multiplicity table")));
    }
    let seeds = lam.omega_ints().expect("integral");
    for (i, k) in seeds.iter().enumerate() {
        let beta = plus_root(&zero, i, k + 1);
        if dim_of(&levels, &beta) != 0 {
            return Err(Error::Consistency(format!("f{}^{} v does not vanish", i + 1, k + 1)));
        }
    }
    let order: Vec<Vec<i64>> = ordered_levels(&levels.keys().cloned().collect());
    let index: HashMap<Vec<i64>, usize> = order.iter().enumerate().map(|(k, b)| (b.clone(), k)).collect();
    let mut e = vec![BlockMap::zero(); n];
    let mut f = vec![BlockMap::zero(); n];
    for ((j, beta), m) in fmats {
        f[j].insert(index[&beta], index[&plus_root(&beta, j, -1)], m);
    }
    for b in &order {
        let lvl = &levels[b];
        for i in 0..n {
            if b[i] == 0 {
                continue;
            }
            let t = plus_root(b, i, -1);
            let Some(&ti) = index.get(&t) else { continue };
            let tdim = levels[&t].labels.len();
            let m = (0..tdim).map(|r| lvl.images.iter().map(|im| im[i][r].clone()).collect()).collect();
            e[i].insert(ti, index[b], m);
        }
    }
    let blocks = order
        .iter()
        .map(|b| Block { beta: b.clone(), weight: lam - &rs.from_alpha_ints(b), labels: levels[b].labels.clone() })
        .collect();
    Ok(GradedModule { highest: lam.clone(), blocks, index, e, f, cutoff: None })
}

/// `L(lam) = M(lam) / sum_i U f_i^{(lam, a_i^v) + 1} v_lam`, with the
/// submodule closed under the `f_j` inside the Verma module and checked to be
/// stable under the `e_j`. Exact but costly; used to cross-check
/// [`simple_quotient`] on small weights.
pub fn closure_quotient(eng: &PairingEngine, lam: &Weight, h: i64) -> Result<GradedModule> {
    if !lam.in_weight_lattice() || !lam.is_dominant() {
        return Err(Error::Precondition(format!("{lam} is not dominant integral")));
    }
    let rs = &eng.ed.rs;
    let n = eng.rank();
    let dp = depth(rs, lam);
    if h < dp {
        return Err(Error::Precondition(format!(
            "height cutoff {h} is too small for L({lam}): its weights reach depth {dp}; use a cutoff of at least {dp}"
        )));
    }
    let table = freudenthal(rs, lam)?;
    let span = (lam - &(-&rs.dominant_rep(&-lam).0)).alpha_ints().expect("root lattice");
    let mut betas = BTreeSet::new();
    for b in cone_up_to(n, dp + 1) {
        let inside = b.iter().zip(&span).all(|(x, y)| x <= y);
        let boundary = (0..n).any(|i| b[i] > 0 && plus_root(&b, i, -1).iter().zip(&span).all(|(x, y)| x <= y));
        if inside || boundary {
            betas.insert(b);
        }
    }
    let (fo, eo) = verma_ops(eng, lam, &betas);
    let order = ordered_levels(&betas);
    let seeds: Vec<i64> = lam.omega_ints().expect("integral").iter().map(|k| k + 1).collect();
    let mut quot: HashMap<Vec<i64>, LevelQuotient> = HashMap::new();
    for b in &order {
        let dim = eng.level(b).f_basis.len();
        let mut basis = RowBasis::new();
        let mut sub = Vec::new();
        let mut push = |v: Vec<FieldElem>, basis: &mut RowBasis<FieldElem>| {
            if basis.insert(&v) {
                sub.push(v);
            }
        };
        for i in 0..n {
            if b[i] == seeds[i] && (0..n).all(|j| j == i || b[j] == 0) {
                push(eng.f_coords(&vec![i; seeds[i] as usize]), &mut basis);
            }
            if b[i] > 0 {
                let lower = plus_root(b, i, -1);
                if let (Some(q), Some(fm)) = (quot.get(&lower), fo.get(&(i, lower.clone()))) {
                    for v in &q.sub {
                        push(apply(fm, v), &mut basis);
                    }
                }
            }
        }
        let q = LevelQuotient::new(sub, dim);
        let weight = lam - &rs.from_alpha_ints(b);
        let want = table.mult(rs, &weight) as usize;
        if q.complement.len() != want {
            return Err(Error::Consistency(format!(
                "quotient at weight {weight} has dimension {}, multiplicity table says {want}",
                q.complement.len()
            )));
        }
        for i in 0..n {
            if b[i] == 0 {
                continue;
            }
            let lower = plus_root(b, i, -1);
            if let (Some(ql), Some(em)) = (quot.get(&lower), eo.get(&(i, b.clone()))) {
                for v in &q.sub {
                    if ql.project(&apply(em, v)).iter().any(|x| !x.is_zero()) {
                        return Err(Error::Consistency(format!("submodule not closed under e{} at weight {weight}", i + 1)));
                    }
                }
            }
        }
        quot.insert(b.clone(), q);
    }
    let live: Vec<Vec<i64>> = order.iter().filter(|b| !quot[*b].complement.is_empty()).cloned().collect();
    let index: HashMap<Vec<i64>, usize> = live.iter().enumerate().map(|(k, b)| (b.clone(), k)).collect();
    let blocks = live
        .iter()
        .map(|b| {
            let fb = &eng.level(b).f_basis;
            Block {
                beta: b.clone(),
                weight: lam - &rs.from_alpha_ints(b),
                labels: quot[b].complement.iter().map(|&k| fb[k].clone()).collect(),
            }
        })
        .collect();
    let mut e = vec![BlockMap::zero(); n];
    let mut f = vec![BlockMap::zero(); n];
    for b in &live {
        let src = &quot[b];
        for i in 0..n {
            for (delta, ops, out) in [(1i64, &fo, &mut f), (-1, &eo, &mut e)] {
                let tb = plus_root(b, i, delta);
                let (Some(&t), Some(m)) = (index.get(&tb), ops.get(&(i, b.clone()))) else { continue };
                let tq = &quot[&tb];
                let cols: Vec<Vec<FieldElem>> = src.complement.iter().map(|&k| tq.project(&column(m, k))).collect();
                let mat = (0..tq.complement.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
                out[i].insert(t, index[b], mat);
            }
        }
    }
    Ok(GradedModule { highest: lam.clone(), blocks, index, e, f, cutoff: None })
}

/// `Theta` as a block-diagonal map.
pub fn theta_matrix(rs: &RootSystem, m: &GradedModule) -> BlockMap {
    m.theta(rs)
}

/// `Theta E_i = <w'_i, w_i>^-1 E_i Theta` and `Theta F_i = <w'_i, w_i> F_i Theta`.
pub fn check_s2_twist(ed: &EulerData, m: &GradedModule) -> bool {
    let th = m.theta(&ed.rs);
    for i in 0..ed.rank() {
        let q = FieldElem::rs_power(ed.r[i][i], ed.s[i][i]);
        let qi = q.inv().expect("monomial");
        let ok_e = th.mul(&m.e[i]) == m.e[i].mul(&th).scale(&qi);
        let ok_f = th.mul(&m.f[i]) == m.f[i].mul(&th).scale(&q);
        if !(ok_e && ok_f) {
            return false;
        }
    }
    true
}

/// Result of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, failure: Option<String>) -> Self {
        Check { name: name.into(), passed: failure.is_none(), detail: failure }
    }
}

fn first_difference(m: &GradedModule, a: &BlockMap, b: &BlockMap, interior: bool) -> Option<String> {
    let d = a.sub(b);
    let d = if interior { d.restrict_sources(|s| m.is_interior(s)) } else { d };
    let found = d.entries().next().map(|(&(t, s), mat)| {
        let (r, c) = (0..mat.len())
            .flat_map(|r| (0..mat[r].len()).map(move |c| (r, c)))
            .find(|&(r, c)| !mat[r][c].is_zero())
            .expect("nonzero block");
        format!(
            "block {} -> {}, entry ({r}, {c}) differs by {}",
            m.blocks[s].weight, m.blocks[t].weight, mat[r][c]
        )
    });
    found
}

/// Exact checks of the defining relations on the interior of `m`; the
/// Serre relations only when `m` is complete.
pub fn relation_audit(ed: &EulerData, eng: &PairingEngine, m: &GradedModule) -> Vec<Check> {
    let n = ed.rank();
    let rs = &ed.rs;
    let z = rs.zero();
    let mut out = Vec::new();
    let om: Vec<BlockMap> = (0..n).map(|i| m.torus(ed, &z, &rs.simple_root(i))).collect();
    let omp: Vec<BlockMap> = (0..n).map(|i| m.torus(ed, &rs.simple_root(i), &z)).collect();
    let mut x1 = None;
    for i in 0..n {
        for j in 0..n {
            if om[i].mul(&omp[j]) != omp[j].mul(&om[i]) || om[i].mul(&om[j]) != om[j].mul(&om[i]) {
                x1 = Some(format!("torus generators {i}, {j} do not commute"));
            }
        }
    }
    out.push(Check::new("X1", x1));
    let mut x2 = None;
    for i in 0..n {
        for j in 0..n {
            let a = eng.structure(i, j);
            let b = eng.structure(j, i);
            let ainv = a.inv().expect("monomial");
            let binv = b.inv().expect("monomial");
            let pairs = [
                (om[i].mul(&m.e[j]), m.e[j].mul(&om[i]).scale(&a)),
                (omp[i].mul(&m.e[j]), m.e[j].mul(&omp[i]).scale(&binv)),
                (om[i].mul(&m.f[j]), m.f[j].mul(&om[i]).scale(&ainv)),
                (omp[i].mul(&m.f[j]), m.f[j].mul(&omp[i]).scale(&b)),
            ];
            for (l, r) in pairs {
                if x2.is_none() {
                    x2 = first_difference(m, &l, &r, false).map(|d| format!("({i},{j}): {d}"));
                }
            }
        }
    }
    out.push(Check::new("X2", x2));
    let mut x3 = None;
    for i in 0..n {
        for j in 0..n {
            let lhs = m.e[i].mul(&m.f[j]).sub(&m.f[j].mul(&m.e[i]));
            let rhs = if i == j {
                let d = rs.symmetrizers[i];
                let den = FieldElem::rs_power(d, 0).sub_ref(&FieldElem::rs_power(0, d));
                om[i].sub(&omp[i]).scale(&den.inv().expect("nonzero"))
            } else {
                BlockMap::zero()
            };
            if x3.is_none() {
                x3 = first_difference(m, &lhs, &rhs, true).map(|d| format!("[e{}, f{}]: {d}", i + 1, j + 1));
            }
        }
    }
    out.push(Check::new("X3", x3));
    if m.cutoff.is_none() {
        let mut x4 = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    let s = m.comb_map(&serre_element(eng, i, j, sign));
                    if x4.is_none() && !s.is_zero() {
                        x4 = Some(format!("Serre element ({}, {}) {:?} acts nontrivially", i + 1, j + 1, sign));
                    }
                }
            }
        }
        out.push(Check::new("X4", x4));
    }
    out
}

/// One summand `coef * v ω'_eta ω_phi u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZTerm {
    pub mu: Vec<i64>,
    pub v: Comb,
    pub eta: Weight,
    pub phi: Weight,
    pub u: Comb,
    pub coef: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    pub lam: Weight,
    pub terms: Vec<ZTerm>,
}

impl CentralElement {
    /// Torus part: the terms with `mu = 0`.
    pub fn torus_part(&self) -> FlatElement {
        let mut out = FlatElement::zero();
        for t in self.terms.iter().filter(|t| t.mu.iter().all(|&k| k == 0)) {
            let c = t.u.terms().chain(t.v.terms()).fold(t.coef.clone(), |acc, (_, k)| &acc * k);
            out.add_term(t.eta.clone(), c);
        }
        out
    }

    /// `gamma^{-rho}` applied to the torus part.
    pub fn hc_projection(&self, ed: &EulerData) -> FlatElement {
        self.torus_part().twist(ed, &-&ed.rs.rho)
    }

    /// Matrix of `z` on a module.
    pub fn action(&self, ed: &EulerData, m: &GradedModule) -> BlockMap {
        let mut out = BlockMap::zero();
        for t in &self.terms {
            let tor = m.torus(ed, &t.eta, &t.phi);
            let piece = m.comb_map(&t.v).mul(&tor).mul(&m.comb_map(&t.u));
            out = out.add(&piece.scale(&t.coef));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": self.lam.omega().iter().map(crate::exact_arith::rat_to_string).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|t| serde_json::json!({
                "mu": t.mu,
                "v": t.v.to_json(),
                "eta": t.eta.omega().iter().map(crate::exact_arith::rat_to_string).collect::<Vec<_>>(),
                "phi": t.phi.omega().iter().map(crate::exact_arith::rat_to_string).collect::<Vec<_>>(),
                "u": t.u.to_json(),
                "coef": t.coef,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `z_lam = sum_{tau, mu, i, j} (r s^-1)^{-(2/ell)(rho, tau+mu)} tr(v_j u_i P_tau)
/// v_i ω'_{tau+mu} ω_{-(tau+mu)} u_j` with dual bases `<v_j, u_i> = delta_ij`.
pub fn build_z(eng: &PairingEngine, lam: &Weight, form: LatticeForm) -> Result<CentralElement> {
    if form == LatticeForm::Root && !lam.in_root_lattice() {
        return Err(Error::Precondition(format!(
            "{lam} is outside the admissible lattice: the root-lattice form needs lambda in the dominant weights of Q"
        )));
    }
    let rs = &eng.ed.rs;
    let l = simple_quotient(eng, lam, depth(rs, lam))?;
    let n = eng.rank();
    let mut terms = Vec::new();
    let mut mus: BTreeSet<Vec<i64>> = BTreeSet::new();
    for a in &l.blocks {
        for b in &l.blocks {
            let mu: Vec<i64> = a.beta.iter().zip(&b.beta).map(|(x, y)| x - y).collect();
            if mu.iter().all(|&k| k >= 0) {
                mus.insert(mu);
            }
        }
    }
    let mut mus: Vec<Vec<i64>> = mus.into_iter().collect();
    mus.sort_by_key(|b| (height(b), b.clone()));
    for mu in mus {
        let (us, vs) = eng.level_dual_bases(&mu);
        let umaps: Vec<BlockMap> = us.iter().map(|u| l.comb_map(u)).collect();
        let vmaps: Vec<BlockMap> = vs.iter().map(|v| l.comb_map(v)).collect();
        for (tk, tb) in l.blocks.iter().enumerate() {
            let up: Vec<i64> = tb.beta.iter().zip(&mu).map(|(x, y)| x - y).collect();
            if l.block_index(&up).is_none() {
                continue;
            }
            let key = &tb.weight + &rs.from_alpha_ints(&mu);
            let scale = &theta_scalar(rs, &key) * &omega_pairing(&eng.ed, &rs.from_alpha_ints(&mu), &key).to_field();
            for (i, um) in umaps.iter().enumerate() {
                for (j, vm) in vmaps.iter().enumerate() {
                    let prod = vm.mul(um);
                    let mut tr = FieldElem::zero();
                    if let Some(b) = prod.get(tk, tk) {
                        for (d, row) in b.iter().enumerate() {
                            tr = tr + &row[d];
                        }
                    }
                    if tr.is_zero() {
                        continue;
                    }
                    terms.push(ZTerm { mu: mu.clone(), v: vs[i].clone(), eta: tb.weight.clone(), phi: -&key, u: us[j].clone(), coef: &scale * &tr });
                }
            }
        }
    }
    let _ = n;
    Ok(CentralElement { lam: lam.clone(), terms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralReport {
    pub commutes: bool,
    pub scalar: Option<FieldElem>,
    pub predicted: FieldElem,
    pub matches: bool,
    pub first_failure: Option<String>,
}

impl CentralReport {
    pub fn passed(&self) -> bool {
        self.commutes && self.matches
    }
}

/// Commutation with all generators, scalarity, and agreement with
/// `rho^{nu + rho}(xi(z))` for the highest weight `nu` of `m`.
pub fn verify_central(ed: &EulerData, z: &CentralElement, m: &GradedModule) -> CentralReport {
    let zm = z.action(ed, m);
    let mut failure = None;
    for i in 0..ed.rank() {
        for (name, g) in [("e", &m.e[i]), ("f", &m.f[i])] {
            if failure.is_none() {
                failure = first_difference(m, &zm.mul(g), &g.mul(&zm), true).map(|d| format!("[z, {name}{}]: {d}", i + 1));
            }
        }
    }
    let commutes = failure.is_none();
    let mut scalar: Option<FieldElem> = None;
    let mut is_scalar = true;
    for (&(t, s), mat) in zm.entries() {
        if t != s || !m.is_interior(s) {
            if t != s {
                is_scalar = false;
            }
            continue;
        }
        for (r, row) in mat.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if r != c {
                    if !x.is_zero() {
                        is_scalar = false;
                    }
                } else {
                    match &scalar {
                        None => scalar = Some(x.clone()),
                        Some(v) if v != x => is_scalar = false,
                        _ => {}
                    }
                }
            }
        }
    }
    let present: usize = zm.entries().filter(|((t, s), _)| t == s).map(|(_, mat)| mat.len()).sum();
    let interior_dim: usize = (0..m.blocks.len()).filter(|&k| m.is_interior(k)).map(|k| m.blocks[k].labels.len()).sum();
    if present < interior_dim && m.cutoff.is_none() {
        match &scalar {
            Some(v) if !v.is_zero() => is_scalar = false,
            _ => scalar = Some(FieldElem::zero()),
        }
    }
    let predicted = z.hc_projection(ed).eval(ed, &(&m.highest + &ed.rs.rho));
    if !is_scalar {
        failure.get_or_insert_with(|| "z does not act by a scalar".to_string());
        scalar = None;
    }
    let matches = scalar.as_ref() == Some(&predicted);
    if !matches && failure.is_none() {
        failure = Some(format!("scalar {:?} differs from prediction {predicted}", scalar.as_ref().map(|s| s.to_string())));
    }
    CentralReport { commutes, scalar, predicted, matches, first_failure: failure }
}

/// `rosso(z, probe) = tr_{L(lam)}(probe Theta)` for every probe.
pub fn verify_trace_identity(
    eng: &PairingEngine,
    z: &CentralElement,
    l: &GradedModule,
    probes: &[RossoMonomial],
) -> Vec<(FieldElem, FieldElem)> {
    let ed = &eng.ed;
    let th = l.theta(&ed.rs);
    probes
        .iter()
        .map(|p| {
            let mut lhs = FieldElem::zero();
            for t in &z.terms {
                let left = RossoMonomial { f: t.v.clone(), eta: t.eta.clone(), phi: t.phi.clone(), e: t.u.clone() };
                let v = crate::pairing_engine::rosso_trace_form(eng, &left, p);
                if !v.is_zero() {
                    lhs = lhs + &t.coef * &v;
                }
            }
            let pm = l.comb_map(&p.f).mul(&l.torus(ed, &p.eta, &p.phi)).mul(&l.comb_map(&p.e));
            let rhs = l.trace(&pm.mul(&th));
            (lhs, rhs)
        })
        .collect()
}

/// Probes: the unit, torus probes on the support of the torus part, and
/// mixed probes `f_w ω'_eta ω_phi e_w'` of low degree.
pub fn default_probes(eng: &PairingEngine, z: &CentralElement) -> Vec<RossoMonomial> {
    let rs = &eng.ed.rs;
    let n = eng.rank();
    let zero = rs.zero();
    let mut out = vec![RossoMonomial::torus(zero.clone(), zero.clone())];
    for k in z.torus_part().support() {
        out.push(RossoMonomial::torus(k.clone(), -k));
        out.push(RossoMonomial::torus(k.clone(), zero.clone()));
    }
    for i in 0..n {
        let a = rs.simple_root(i);
        out.push(RossoMonomial {
            f: Comb::word(Sign::Minus, &[i]),
            e: Comb::word(Sign::Plus, &[i]),
            ..RossoMonomial::torus(a.clone(), zero.clone())
        });
        out.push(RossoMonomial {
            f: Comb::word(Sign::Minus, &[i]),
            e: Comb::word(Sign::Plus, &[i]),
            ..RossoMonomial::torus(zero.clone(), a.clone())
        });
        for j in 0..n {
            out.push(RossoMonomial {
                f: Comb::word(Sign::Minus, &[i, j]),
                e: Comb::word(Sign::Plus, &[j, i]),
                ..RossoMonomial::torus(zero.clone(), zero.clone())
            });
        }
        out.push(RossoMonomial {
            f: Comb::word(Sign::Minus, &[i]),
            e: Comb::word(Sign::Plus, &[(i + 1) % n]),
            ..RossoMonomial::torus(zero.clone(), zero.clone())
        });
    }
    out
}
