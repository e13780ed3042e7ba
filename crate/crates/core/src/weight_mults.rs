//! Weight multiplicities of finite-dimensional simple modules.
//!
//! Multiplicities are the classical ones: for generic `r s^-1` the category
//! of finite-dimensional weight modules is equivalent to the classical one,
//! so `dim L(lambda)_mu` is computed with Freudenthal's recursion. Kostant's
//! formula and Weyl's dimension formula serve as independent checks.

use crate::error::{Error, Result};
use crate::exact_arith::{rint, Rat};
use crate::root_data::{RootSystem, Weight};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Multiplicities of the dominant weights of `L(lam)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    pub lam: Weight,
    entries: BTreeMap<Weight, u64>,
}

#[derive(Serialize, Deserialize)]
struct MultEntryJson {
    mu: Vec<i64>,
    m: u64,
}

#[derive(Serialize, Deserialize)]
struct MultTableJson {
    #[serde(rename = "type")]
    type_tag: String,
    rank: usize,
    lambda: Vec<i64>,
    mults: Vec<MultEntryJson>,
}

impl MultTable {
    /// Dominant weights with their multiplicities, sorted.
    pub fn entries(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, m)| (w, *m))
    }

    pub fn dominant_weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    /// Multiplicity of any weight, via its dominant representative.
    pub fn mult(&self, rs: &RootSystem, mu: &Weight) -> u64 {
        let (d, _) = rs.dominant_rep(mu);
        self.entries.get(&d).copied().unwrap_or(0)
    }

    /// Every weight with positive multiplicity.
    pub fn all_weights(&self, rs: &RootSystem) -> Vec<(Weight, u64)> {
        let mut out = Vec::new();
        for (d, m) in &self.entries {
            for w in rs.weyl_orbit(d) {
                out.push((w, *m));
            }
        }
        out.sort();
        out
    }

    pub fn dimension(&self, rs: &RootSystem) -> u64 {
        self.entries.iter().map(|(d, m)| rs.weyl_orbit(d).len() as u64 * m).sum()
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        let j = MultTableJson {
            type_tag: rs.type_tag.to_string(),
            rank: rs.rank,
            lambda: self.lam.omega_ints().expect("integral"),
            mults: self
                .entries
                .iter()
                .map(|(w, m)| MultEntryJson { mu: w.omega_ints().expect("integral"), m: *m })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(rs: &RootSystem, v: &serde_json::Value) -> Result<MultTable> {
        let j: MultTableJson = serde_json::from_value(v.clone())?;
        if j.type_tag != rs.type_tag.to_string() || j.rank != rs.rank {
            return Err(Error::Cache("multiplicity table for a different type".into()));
        }
        let lam = rs.from_omega_ints(&j.lambda);
        let entries = j.mults.iter().map(|e| (rs.from_omega_ints(&e.mu), e.m)).collect();
        Ok(MultTable { lam, entries })
    }
}

fn check_dominant_integral(lam: &Weight) -> Result<()> {
    if !lam.in_weight_lattice() {
        return Err(Error::Precondition(format!("highest weight {lam} is not integral")));
    }
    if !lam.is_dominant() {
        return Err(Error::Precondition(format!("highest weight {lam} is not dominant")));
    }
    Ok(())
}

fn height_int(w: &Weight) -> i64 {
    w.height().to_integer().to_i64().expect("small height")
}

/// Dominant weights below `lam`, discovered by subtracting positive roots;
/// sorted by depth `height(lam - mu)` then by coordinates.
pub fn dominant_weights_below(rs: &RootSystem, lam: &Weight) -> Vec<Weight> {
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lam.clone());
    queue.push_back(lam.clone());
    while let Some(mu) = queue.pop_front() {
        for a in &rs.positive_roots {
            let nu = &mu - a;
            if nu.is_dominant() && !seen.contains(&nu) {
                seen.insert(nu.clone());
                queue.push_back(nu);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by_key(|w| (height_int(&(lam - w)), w.clone()));
    out
}

/// Dominant weights whose fundamental-weight coordinates sum to at most `h`.
pub fn dominant_box(rs: &RootSystem, h: i64) -> Vec<Weight> {
    let n = rs.rank;
    let mut out = vec![vec![0i64; n]];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|c| {
                let used: i64 = c.iter().sum();
                (0..=h - used).map(move |k| {
                    let mut d = c.clone();
                    d[i] = k;
                    d
                })
            })
            .collect();
    }
    out.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));
    out.iter().map(|c| rs.from_omega_ints(c)).collect()
}

/// Freudenthal's recursion.
pub fn freudenthal(rs: &RootSystem, lam: &Weight) -> Result<MultTable> {
    freudenthal_with_limit(rs, lam, None)
}

/// Freudenthal's recursion refusing highest weights above `max_height`.
pub fn freudenthal_with_limit(rs: &RootSystem, lam: &Weight, max_height: Option<i64>) -> Result<MultTable> {
    check_dominant_integral(lam)?;
    if let Some(h) = max_height {
        if lam.height() > rint(h) {
            return Err(Error::Precondition(format!("height of {lam} exceeds the configured limit {h}")));
        }
    }
    let lr = lam + &rs.rho;
    let norm_top = rs.inner_product(&lr, &lr);
    let mut entries: BTreeMap<Weight, u64> = BTreeMap::new();
    entries.insert(lam.clone(), 1);
    for mu in dominant_weights_below(rs, lam).into_iter().skip(1) {
        let mut num = Rat::zero();
        for a in &rs.positive_roots {
            let mut nu = &mu + a;
            while rs.dominance_leq(&nu, lam) {
                let (d, _) = rs.dominant_rep(&nu);
                if let Some(m) = entries.get(&d) {
                    num += rs.inner_product(&nu, a) * rint(2 * *m as i64);
                }
                nu = &nu + a;
            }
        }
        let mr = &mu + &rs.rho;
        let den = &norm_top - rs.inner_product(&mr, &mr);
        let m = num / den;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::Consistency(format!("non-integral multiplicity {m} at {mu}")));
        }
        let m = m.to_integer().to_u64().expect("fits");
        if m > 0 {
            entries.insert(mu, m);
        }
    }
    Ok(MultTable { lam: lam.clone(), entries })
}

/// Weyl's dimension formula.
pub fn weyl_dim(rs: &RootSystem, lam: &Weight) -> Result<u64> {
    check_dominant_integral(lam)?;
    let lr = lam + &rs.rho;
    let mut acc = rint(1);
    for a in &rs.positive_roots {
        acc = acc * rs.inner_product(&lr, a) / rs.inner_product(&rs.rho, a);
    }
    if !acc.is_integer() {
        return Err(Error::Consistency(format!("non-integral dimension {acc}")));
    }
    Ok(acc.to_integer().to_u64().expect("fits"))
}

/// Reduced words for all Weyl group elements, enumerated through
/// the regular orbit of rho. Only used for small ranks.
fn weyl_group_words(rs: &RootSystem) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(rs.rho.clone());
    queue.push_back((rs.rho.clone(), Vec::new()));
    let mut out = Vec::new();
    while let Some((w, word)) = queue.pop_front() {
        for i in 0..rs.rank {
            let y = rs.reflect(i, &w);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                let mut wd: Vec<usize> = word.clone();
                wd.push(i);
                queue.push_back((y, wd));
            }
        }
        out.push(word);
    }
    out
}

/// Number of ways to write `beta` (simple-root coordinates) as a sum of
/// positive roots.
pub fn partition_count(rs: &RootSystem, beta: &[i64]) -> u64 {
    let roots: Vec<Vec<i64>> = rs.positive_roots.iter().map(|r| r.alpha_ints().expect("root")).collect();
    let mut memo = HashMap::new();
    count_partitions(&roots, 0, beta.to_vec(), &mut memo)
}

fn count_partitions(roots: &[Vec<i64>], idx: usize, beta: Vec<i64>, memo: &mut HashMap<(usize, Vec<i64>), u64>) -> u64 {
    if beta.iter().all(|&x| x == 0) {
        return 1;
    }
    if idx == roots.len() || beta.iter().any(|&x| x < 0) {
        return 0;
    }
    if let Some(&v) = memo.get(&(idx, beta.clone())) {
        return v;
    }
    let mut total = 0;
    let mut rest = beta.clone();
    loop {
        total += count_partitions(roots, idx + 1, rest.clone(), memo);
        for (x, r) in rest.iter_mut().zip(&roots[idx]) {
            *x -= r;
        }
        if rest.iter().any(|&x| x < 0) {
            break;
        }
    }
    memo.insert((idx, beta), total);
    total
}

/// Kostant's multiplicity formula; limited to rank at most 3.
pub fn kostant_mult(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<u64> {
    if rs.rank > 3 {
        return Err(Error::Precondition(format!("Kostant oracle limited to rank <= 3, got {}", rs.label())));
    }
    check_dominant_integral(lam)?;
    let lr = lam + &rs.rho;
    let mr = mu + &rs.rho;
    let roots: Vec<Vec<i64>> = rs.positive_roots.iter().map(|r| r.alpha_ints().expect("root")).collect();
    let mut memo = HashMap::new();
    let mut total: i64 = 0;
    for word in weyl_group_words(rs) {
        let beta = &rs.apply_word(&word, &lr) - &mr;
        let Some(b) = beta.alpha_ints() else { continue };
        let p = count_partitions(&roots, 0, b, &mut memo) as i64;
        if word.len() % 2 == 0 {
            total += p;
        } else {
            total -= p;
        }
    }
    if total < 0 {
        return Err(Error::Consistency(format!("negative Kostant multiplicity at {mu}")));
    }
    Ok(total as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::LieType;

    #[test]
    fn trivial_module() {
        for (t, n) in [(LieType::A, 1), (LieType::B, 2), (LieType::G, 2)] {
            let rs = RootSystem::new(t, n).unwrap();
            let tab = freudenthal(&rs, &rs.zero()).unwrap();
            assert_eq!(tab.entries().collect::<Vec<_>>(), vec![(&rs.zero(), 1)]);
        }
    }

    #[test]
    fn sl2_ladder() {
        let rs = RootSystem::new(LieType::A, 1).unwrap();
        let tab = freudenthal(&rs, &rs.from_omega_ints(&[2])).unwrap();
        let all: Vec<(Vec<i64>, u64)> =
            tab.all_weights(&rs).into_iter().map(|(w, m)| (w.omega_ints().unwrap(), m)).collect();
        assert_eq!(all, vec![(vec![-2], 1), (vec![0], 1), (vec![2], 1)]);
    }

    #[test]
    fn adjoint_a2() {
        let rs = RootSystem::new(LieType::A, 2).unwrap();
        let lam = rs.from_omega_ints(&[1, 1]);
        let tab = freudenthal(&rs, &lam).unwrap();
        assert_eq!(tab.mult(&rs, &rs.zero()), 2);
        assert_eq!(tab.dimension(&rs), 8);
        assert_eq!(kostant_mult(&rs, &lam, &rs.zero()).unwrap(), 2);
        assert_eq!(kostant_mult(&rs, &lam, &lam).unwrap(), 1);
        assert_eq!(kostant_mult(&rs, &rs.fundamental(0), &rs.fundamental(1)).unwrap(), 0);
    }

    #[test]
    fn dimensions() {
        let a2 = RootSystem::new(LieType::A, 2).unwrap();
        assert_eq!(weyl_dim(&a2, &a2.zero()).unwrap(), 1);
        assert_eq!(weyl_dim(&a2, &a2.fundamental(0)).unwrap(), 3);
        let g2 = RootSystem::new(LieType::G, 2).unwrap();
        assert_eq!(weyl_dim(&g2, &g2.fundamental(0)).unwrap(), 7);
        assert_eq!(weyl_dim(&g2, &g2.fundamental(1)).unwrap(), 14);
        let b2 = RootSystem::new(LieType::B, 2).unwrap();
        // long first root: w1 is the 5-dimensional vector module, w2 the spin module
        assert_eq!(weyl_dim(&b2, &b2.fundamental(0)).unwrap(), 5);
        assert_eq!(weyl_dim(&b2, &b2.fundamental(1)).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_highest_weights() {
        let rs = RootSystem::new(LieType::A, 2).unwrap();
        assert!(freudenthal(&rs, &rs.from_omega_ints(&[-1, 1])).is_err());
        assert!(freudenthal(&rs, &rs.from_alpha_ints(&[1, 0]).scaled(&crate::exact_arith::rat(1, 2))).is_err());
        let a4 = RootSystem::new(LieType::A, 4).unwrap();
        assert!(kostant_mult(&a4, &a4.zero(), &a4.zero()).is_err());
    }

    #[test]
    fn partition_counts() {
        let b2 = RootSystem::new(LieType::B, 2).unwrap();
        assert_eq!(partition_count(&b2, &[2, 2]), 4);
        let a2 = RootSystem::new(LieType::A, 2).unwrap();
        assert_eq!(partition_count(&a2, &[1, 1]), 2);
        assert_eq!(partition_count(&a2, &[2, 2]), 3);
    }
}
