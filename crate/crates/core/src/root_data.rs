//! Root systems of the simple Lie types, weights in both coordinate
//! systems, simple reflections, orbits and the dominance order.
//!
//! Conventions: `c_ij = 2(a_i, a_j)/(a_i, a_i)`, so a weight with
//! simple-root coordinates `x` has fundamental-weight coordinates `C x`.
//! Symmetrizers satisfy `(a_i, a_i) = ell * d_i`, with `ell = 1` for B and F
//! and `ell = 2` otherwise. In type B the last simple root is short, in
//! type C it is long, and `G2` has `a_1` short.

use crate::error::{Error, Result};
use crate::exact_arith::laurent::rat_vec_serde;
use crate::exact_arith::linalg::{inverse, Matrix};
use crate::exact_arith::{rint, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => LieType::A,
            "B" => LieType::B,
            "C" => LieType::C,
            "D" => LieType::D,
            "E" => LieType::E,
            "F" => LieType::F,
            "G" => LieType::G,
            _ => return Err(Error::InvalidType { tag: s.to_string(), rank: 0 }),
        })
    }
}

/// A weight, carried in fundamental-weight (`omega`) and simple-root
/// (`alpha`) coordinates. Ordering is lexicographic on `omega`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "rat_vec_serde")]
    omega: Vec<Rat>,
    #[serde(with = "rat_vec_serde")]
    alpha: Vec<Rat>,
}

impl Weight {
    pub fn omega(&self) -> &[Rat] {
        &self.omega
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    pub fn is_zero(&self) -> bool {
        self.omega.iter().all(|x| x.is_zero())
    }

    /// Member of the weight lattice.
    pub fn in_weight_lattice(&self) -> bool {
        self.omega.iter().all(|x| x.is_integer())
    }

    /// Member of the root lattice.
    pub fn in_root_lattice(&self) -> bool {
        self.alpha.iter().all(|x| x.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.omega.iter().all(|x| !x.is_negative())
    }

    /// Sum of simple-root coordinates.
    pub fn height(&self) -> Rat {
        self.alpha.iter().sum()
    }

    pub fn scaled(&self, k: &Rat) -> Weight {
        Weight { omega: self.omega.iter().map(|x| x * k).collect(), alpha: self.alpha.iter().map(|x| x * k).collect() }
    }

    /// Integer fundamental-weight coordinates, when in the weight lattice.
    pub fn omega_ints(&self) -> Option<Vec<i64>> {
        self.omega.iter().map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None }).collect()
    }

    /// Integer simple-root coordinates, when in the root lattice.
    pub fn alpha_ints(&self) -> Option<Vec<i64>> {
        self.alpha.iter().map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None }).collect()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight {
            omega: self.omega.iter().zip(&o.omega).map(|(a, b)| a + b).collect(),
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight {
            omega: self.omega.iter().zip(&o.omega).map(|(a, b)| a - b).collect(),
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { omega: self.omega.iter().map(|a| -a).collect(), alpha: self.alpha.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.omega.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub type_tag: LieType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
    pub ell: i64,
    pub positive_roots: Vec<Weight>,
    pub rho: Weight,
    pub inverse_cartan: Vec<Vec<Rat>>,
    /// Gram matrix `(a_i, a_j)` of the simple roots.
    gram: Vec<Vec<Rat>>,
}

fn cartan_matrix(t: LieType, n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>, i64)> {
    let bad = || Error::InvalidType { tag: t.to_string(), rank: n };
    let valid = match t {
        LieType::A => n >= 1,
        LieType::B | LieType::C => n >= 2,
        LieType::D => n >= 4,
        LieType::E => (6..=8).contains(&n),
        LieType::F => n == 4,
        LieType::G => n == 2,
    };
    if !valid {
        return Err(bad());
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    let mut d = vec![1i64; n];
    let mut ell = 2;
    match t {
        LieType::A => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        LieType::B => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            c[n - 1][n - 2] = -2;
            d = vec![2; n];
            d[n - 1] = 1;
            ell = 1;
        }
        LieType::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            c[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        LieType::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        LieType::E => {
            // 1-3-4-5-...-n with 2 attached to 4
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        LieType::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[2][1] = -2;
            d = vec![2, 2, 1, 1];
            ell = 1;
        }
        LieType::G => {
            c[0][1] = -3;
            c[1][0] = -1;
            d = vec![1, 3];
        }
    }
    Ok((c, d, ell))
}

/// `|W|` for the given type.
pub fn weyl_group_order(t: LieType, n: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match t {
        LieType::A => fact(n + 1),
        LieType::B | LieType::C => (1u128 << n) * fact(n),
        LieType::D => (1u128 << (n - 1)) * fact(n),
        LieType::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        LieType::F => 1152,
        LieType::G => 12,
    }
}

impl RootSystem {
    pub fn new(t: LieType, n: usize) -> Result<RootSystem> {
        let (cartan, d, ell) = cartan_matrix(t, n)?;
        let cm: Matrix<Rat> = cartan.iter().map(|r| r.iter().map(|&x| rint(x)).collect()).collect();
        let inverse_cartan = inverse(&cm).expect("Cartan matrix is invertible");
        let gram: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| Rat::new((ell * d[i] * cartan[i][j]).into(), 2.into())).collect())
            .collect();
        let mut rs = RootSystem {
            type_tag: t,
            rank: n,
            cartan,
            symmetrizers: d,
            ell,
            positive_roots: Vec::new(),
            rho: Weight { omega: vec![Rat::zero(); n], alpha: vec![Rat::zero(); n] },
            inverse_cartan,
            gram,
        };
        for i in 0..n {
            for j in 0..n {
                assert_eq!(rs.gram[i][j], rs.gram[j][i], "D C must be symmetric");
            }
        }
        rs.positive_roots = rs.compute_positive_roots();
        rs.rho = rs.from_omega_ints(&vec![1; n]);
        let mut half = rs.zero();
        for a in &rs.positive_roots {
            half = &half + a;
        }
        let half = half.scaled(&Rat::new(1.into(), 2.into()));
        assert_eq!(half, rs.rho, "rho is half the sum of positive roots");
        Ok(rs)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.type_tag, self.rank)
    }

    pub fn zero(&self) -> Weight {
        Weight { omega: vec![Rat::zero(); self.rank], alpha: vec![Rat::zero(); self.rank] }
    }

    pub fn from_omega(&self, omega: Vec<Rat>) -> Weight {
        assert_eq!(omega.len(), self.rank);
        let alpha = (0..self.rank)
            .map(|k| (0..self.rank).map(|i| &self.inverse_cartan[k][i] * &omega[i]).sum())
            .collect();
        Weight { omega, alpha }
    }

    pub fn from_alpha(&self, alpha: Vec<Rat>) -> Weight {
        assert_eq!(alpha.len(), self.rank);
        let omega = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| &alpha[j] * Rat::from_integer(self.cartan[i][j].into())).sum())
            .collect();
        Weight { omega, alpha }
    }

    pub fn from_omega_ints(&self, v: &[i64]) -> Weight {
        self.from_omega(v.iter().map(|&x| rint(x)).collect())
    }

    pub fn from_alpha_ints(&self, v: &[i64]) -> Weight {
        self.from_alpha(v.iter().map(|&x| rint(x)).collect())
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.from_alpha_ints(&v)
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.from_omega_ints(&v)
    }

    /// Symmetric form with `(a_i, a_j) = (ell/2) d_i c_ij`.
    pub fn inner_product(&self, x: &Weight, y: &Weight) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if x.alpha[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if !y.alpha[j].is_zero() {
                    acc += &x.alpha[i] * &self.gram[i][j] * &y.alpha[j];
                }
            }
        }
        acc
    }

    /// `(2/ell) (rho, w)`, the exponent of `r s^-1` in the square of the
    /// antipode and in the twist by `rho`.
    pub fn rho_exponent(&self, w: &Weight) -> Rat {
        self.inner_product(&self.rho, w) * Rat::new(2.into(), self.ell.into())
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w.omega[i].clone();
        if k.is_zero() {
            return w.clone();
        }
        let mut omega = w.omega.clone();
        for (j, o) in omega.iter_mut().enumerate() {
            *o -= &k * Rat::from_integer(self.cartan[j][i].into());
        }
        let mut alpha = w.alpha.clone();
        alpha[i] -= &k;
        Weight { omega, alpha }
    }

    /// Applies `s_{word[0]}` first, then `s_{word[1]}`, and so on.
    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        word.iter().fold(w.clone(), |acc, &i| self.reflect(i, &acc))
    }

    fn compute_positive_roots(&self) -> Vec<Weight> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..self.rank {
            let mut v = vec![0i64; self.rank];
            v[i] = 1;
            seen.insert(v.clone());
            queue.push_back(v);
        }
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank {
                let k: i64 = (0..self.rank).map(|j| self.cartan[i][j] * x[j]).sum();
                let mut y = x.clone();
                y[i] -= k;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|&c| c >= 0)).collect();
        pos.sort_by_key(|v| (v.iter().sum::<i64>(), std::cmp::Reverse(v.clone())));
        pos.iter().map(|v| self.from_alpha_ints(v)).collect()
    }

    /// The full orbit, sorted lexicographically by fundamental-weight
    /// coordinates.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank {
                if x.omega[i].is_zero() {
                    continue;
                }
                let y = self.reflect(i, &x);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Dominant representative and the reflection word reaching it.
    pub fn dominant_rep(&self, w: &Weight) -> (Weight, Vec<usize>) {
        let mut x = w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| x.omega[i].is_negative()) {
            x = self.reflect(i, &x);
            word.push(i);
        }
        (x, word)
    }

    /// `mu <= lam` in the dominance order.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        (lam - mu).alpha.iter().all(|x| x.is_integer() && !x.is_negative())
    }

    /// `m = det C`.
    pub fn cartan_det(&self) -> i64 {
        let inv_det = crate::exact_arith::linalg::det(&self.inverse_cartan);
        (Rat::one() / inv_det).to_integer().try_into().expect("small determinant")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.type_tag.to_string(),
            "rank": self.rank,
            "cartan": self.cartan,
            "symmetrizers": self.symmetrizers,
            "ell": self.ell,
            "positive_roots": self.positive_roots.iter().map(|r| r.alpha_ints().unwrap()).collect::<Vec<_>>(),
            "rho": self.rho,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_positive_roots() {
        let rs = RootSystem::new(LieType::A, 2).unwrap();
        let roots: Vec<Vec<i64>> = rs.positive_roots.iter().map(|r| r.alpha_ints().unwrap()).collect();
        assert_eq!(roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn a1_rho_is_fundamental() {
        let rs = RootSystem::new(LieType::A, 1).unwrap();
        assert_eq!(rs.rho, rs.fundamental(0));
    }

    #[test]
    fn g2_has_six_positive_roots() {
        let rs = RootSystem::new(LieType::G, 2).unwrap();
        assert_eq!(rs.positive_roots.len(), 6);
        // the 7-dimensional fundamental weight is 2a1 + a2
        assert_eq!(rs.fundamental(0).alpha_ints().unwrap(), vec![2, 1]);
        assert_eq!(rs.fundamental(1).alpha_ints().unwrap(), vec![3, 2]);
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(RootSystem::new(LieType::E, 5).is_err());
        assert!(RootSystem::new(LieType::G, 3).is_err());
        assert!(RootSystem::new(LieType::D, 3).is_err());
        assert!(RootSystem::new(LieType::A, 0).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let rs = RootSystem::new(LieType::A, 1).unwrap();
        assert_eq!(rs.inner_product(&rs.simple_root(0), &rs.simple_root(0)), rint(2));
        let rs = RootSystem::new(LieType::A, 2).unwrap();
        assert_eq!(rs.inner_product(&rs.fundamental(0), &rs.simple_root(0)), rint(1));
        assert_eq!(rs.inner_product(&rs.fundamental(0), &rs.zero()), rint(0));
        let b2 = RootSystem::new(LieType::B, 2).unwrap();
        assert_eq!(b2.inner_product(&b2.simple_root(0), &b2.simple_root(0)), rint(2));
        assert_eq!(b2.inner_product(&b2.simple_root(1), &b2.simple_root(1)), rint(1));
    }

    #[test]
    fn orbits_and_dominant_reps() {
        let a1 = RootSystem::new(LieType::A, 1).unwrap();
        let w = a1.fundamental(0);
        assert_eq!(a1.weyl_orbit(&w), vec![-&w, w.clone()]);
        assert_eq!(a1.dominant_rep(&-&w), (w.clone(), vec![0]));
        let a2 = RootSystem::new(LieType::A, 2).unwrap();
        assert_eq!(a2.weyl_orbit(&a2.fundamental(0)).len(), 3);
        assert_eq!(a2.weyl_orbit(&a2.zero()), vec![a2.zero()]);
        let x = &(&a2.fundamental(0) - &a2.simple_root(0)) - &a2.simple_root(1);
        let (d, word) = a2.dominant_rep(&x);
        assert_eq!(x, -&a2.fundamental(1));
        assert_eq!(d, a2.fundamental(0));
        assert_eq!(a2.apply_word(&word, &x), d);
    }

    #[test]
    fn dominance_examples() {
        let a2 = RootSystem::new(LieType::A, 2).unwrap();
        let w1 = a2.fundamental(0);
        assert!(a2.dominance_leq(&w1, &w1));
        assert!(a2.dominance_leq(&(&w1 - &a2.simple_root(0)), &w1));
        assert!(!a2.dominance_leq(&a2.fundamental(1), &w1));
    }

    #[test]
    fn classical_root_counts() {
        let cases = [
            (LieType::A, 5, 15),
            (LieType::B, 4, 16),
            (LieType::C, 3, 9),
            (LieType::D, 5, 20),
            (LieType::E, 6, 36),
            (LieType::E, 7, 63),
            (LieType::E, 8, 120),
            (LieType::F, 4, 24),
        ];
        for (t, n, k) in cases {
            assert_eq!(RootSystem::new(t, n).unwrap().positive_roots.len(), k, "{t}{n}");
        }
    }
}
