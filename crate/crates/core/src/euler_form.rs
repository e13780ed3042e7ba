//! The Euler form on the root lattice, the structure-constant matrices
//! `R`, `S` with `a_ij = r^{R_ij} s^{S_ij}`, and determinant/kernel data.

use crate::error::{Error, Result};
use crate::exact_arith::linalg::{bareiss_det, kernel, Matrix};
use crate::exact_arith::{rint, Rat, RsMonomial};
use crate::root_data::{LieType, RootSystem, Weight};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    RMinusS,
    RPlusS,
}

#[derive(Clone, Debug)]
pub struct EulerData {
    pub rs: RootSystem,
    /// `euler[i][j] = <i, j>`.
    pub euler: Vec<Vec<i64>>,
    pub r: Vec<Vec<i64>>,
    pub s: Vec<Vec<i64>>,
}

impl EulerData {
    pub fn new(rs: RootSystem) -> EulerData {
        let n = rs.rank;
        let mut euler = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                euler[i][j] = match i.cmp(&j) {
                    std::cmp::Ordering::Less => rs.symmetrizers[i] * rs.cartan[i][j],
                    std::cmp::Ordering::Equal => rs.symmetrizers[i],
                    std::cmp::Ordering::Greater => 0,
                };
            }
        }
        if rs.type_tag == LieType::D {
            euler[n - 2][n - 1] = -1;
            euler[n - 1][n - 2] = 1;
        }
        let (r, s) = build_rs(&euler);
        let ed = EulerData { rs, euler, r, s };
        ed.assert_invariants();
        ed
    }

    pub fn for_type(t: LieType, n: usize) -> Result<EulerData> {
        Ok(Self::new(RootSystem::new(t, n)?))
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    fn assert_invariants(&self) {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(self.r[i][j], -self.s[j][i], "R = -S^T");
                assert_eq!(
                    self.r[i][j] - self.s[i][j],
                    self.rs.symmetrizers[i] * self.rs.cartan[i][j],
                    "R - S = D C"
                );
            }
        }
    }

    /// Bilinear extension of `<a_i, a_j>` to the weight lattice.
    pub fn euler_pair(&self, x: &Weight, y: &Weight) -> Rat {
        let (xa, ya) = (x.alpha(), y.alpha());
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            if xa[i].is_zero() {
                continue;
            }
            for j in 0..self.rank() {
                if self.euler[i][j] != 0 && !ya[j].is_zero() {
                    acc += &xa[i] * &ya[j] * rint(self.euler[i][j]);
                }
            }
        }
        acc
    }

    /// `a_ij = r^{R_ij} s^{S_ij}` (0-based indices).
    pub fn structure_constant(&self, i: usize, j: usize) -> Result<RsMonomial> {
        let n = self.rank();
        if i >= n || j >= n {
            return Err(Error::Precondition(format!("index ({i}, {j}) out of range for rank {n}")));
        }
        Ok(RsMonomial::new(rint(self.r[i][j]), rint(self.s[i][j])))
    }

    pub fn matrix(&self, which: Which) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match which {
                        Which::RMinusS => self.r[i][j] - self.s[i][j],
                        Which::RPlusS => self.r[i][j] + self.s[i][j],
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact determinant and a basis of the kernel of the transpose.
    pub fn det_and_kernel(&self, which: Which) -> (BigInt, Vec<Vec<Rat>>) {
        let m = self.matrix(which);
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = bareiss_det(&big);
        if !d.is_zero() {
            return (d, Vec::new());
        }
        let n = self.rank();
        let t: Matrix<Rat> = (0..n).map(|i| (0..n).map(|j| rint(m[j][i])).collect()).collect();
        (d, kernel(&t))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (dm, _) = self.det_and_kernel(Which::RMinusS);
        let (dp, kp) = self.det_and_kernel(Which::RPlusS);
        serde_json::json!({
            "type": self.rs.type_tag.to_string(),
            "rank": self.rank(),
            "euler": self.euler,
            "R": self.r,
            "S": self.s,
            "detRminusS": dm.to_string(),
            "detRplusS": dp.to_string(),
            "kernel": kp.iter().map(|v| v.iter().map(crate::exact_arith::rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn build_rs(euler: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = euler.len();
    let r = (0..n).map(|i| (0..n).map(|j| euler[j][i]).collect()).collect();
    let s = (0..n).map(|i| (0..n).map(|j| -euler[i][j]).collect()).collect();
    (r, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(r: i64, s: i64) -> RsMonomial {
        RsMonomial::new(rint(r), rint(s))
    }

    #[test]
    fn euler_examples() {
        let ed = EulerData::for_type(LieType::A, 2).unwrap();
        let (a1, a2) = (ed.rs.simple_root(0), ed.rs.simple_root(1));
        assert_eq!(ed.euler_pair(&a1, &a2), rint(-1));
        assert_eq!(ed.euler_pair(&a2, &a1), rint(0));
        let b3 = EulerData::for_type(LieType::B, 3).unwrap();
        for i in 0..3 {
            let a = b3.rs.simple_root(i);
            assert_eq!(b3.euler_pair(&a, &a), rint(b3.rs.symmetrizers[i]));
        }
    }

    #[test]
    fn structure_constant_examples() {
        let g2 = EulerData::for_type(LieType::G, 2).unwrap();
        assert_eq!(g2.structure_constant(0, 1).unwrap(), mono(0, 3));
        assert_eq!(g2.structure_constant(1, 0).unwrap(), mono(-3, 0));
        assert_eq!(g2.structure_constant(0, 0).unwrap(), mono(1, -1));
        assert_eq!(g2.structure_constant(1, 1).unwrap(), mono(3, -3));
        let a1 = EulerData::for_type(LieType::A, 1).unwrap();
        assert_eq!(a1.structure_constant(0, 0).unwrap(), mono(1, -1));
        let b2 = EulerData::for_type(LieType::B, 2).unwrap();
        assert_eq!(b2.structure_constant(1, 1).unwrap(), mono(1, -1));
        assert_eq!(b2.structure_constant(0, 0).unwrap(), mono(2, -2));
        assert_eq!(b2.structure_constant(0, 1).unwrap(), mono(0, 2));
        let f4 = EulerData::for_type(LieType::F, 4).unwrap();
        assert_eq!(f4.structure_constant(2, 3).unwrap(), mono(0, 1));
        let a3 = EulerData::for_type(LieType::A, 3).unwrap();
        assert_eq!(a3.structure_constant(0, 2).unwrap(), mono(0, 0));
        let d4 = EulerData::for_type(LieType::D, 4).unwrap();
        assert_eq!(d4.structure_constant(2, 3).unwrap(), mono(1, 1));
        assert_eq!(d4.structure_constant(3, 2).unwrap(), mono(-1, -1));
        assert!(d4.structure_constant(4, 0).is_err());
    }

    #[test]
    fn determinant_examples() {
        let a2 = EulerData::for_type(LieType::A, 2).unwrap();
        assert_eq!(a2.det_and_kernel(Which::RPlusS), (BigInt::from(1), vec![]));
        let a3 = EulerData::for_type(LieType::A, 3).unwrap();
        let (d, k) = a3.det_and_kernel(Which::RPlusS);
        assert_eq!(d, BigInt::from(0));
        assert_eq!(k, vec![vec![rint(1), rint(0), rint(1)]]);
        let g2 = EulerData::for_type(LieType::G, 2).unwrap();
        assert_eq!(g2.det_and_kernel(Which::RPlusS).0, BigInt::from(9));
    }
}
