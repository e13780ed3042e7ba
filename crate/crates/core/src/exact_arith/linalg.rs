//! Dense exact linear algebra over `Q` and over the function field.

use super::field::FieldElem;
use super::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Minimal field interface used by the elimination routines.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Inverse of a nonzero element.
    fn inv(&self) -> Self;
    /// Rough size, smaller pivots keep intermediate results small.
    fn size(&self) -> usize;
}

impl Scalar for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn inv(&self) -> Self {
        FieldElem::inv(self).expect("nonzero pivot")
    }
    fn size(&self) -> usize {
        self.weight()
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn size(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn zeros<T: Scalar>(rows: usize, cols: usize) -> Matrix<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out: Matrix<T> = zeros(n, m);
    for i in 0..n {
        for (l, bl) in b.iter().enumerate().take(k) {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    out[i][j] = out[i][j].add(&x.mul(&bl[j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<T: Scalar>(a: &Matrix<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            let mut acc = T::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc
        })
        .collect()
}

pub fn transpose<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn is_zero_matrix<T: Scalar>(a: &Matrix<T>) -> bool {
    a.iter().all(|row| row.iter().all(|x| x.is_zero()))
}

/// Incrementally built row space in reduced form, used for greedy
/// selection of independent vectors in a fixed order.
#[derive(Clone, Debug)]
pub struct RowBasis<T> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Scalar> Default for RowBasis<T> {
    fn default() -> Self {
        RowBasis { rows: Vec::new() }
    }
}

impl<T: Scalar> RowBasis<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the stored rows.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if independent; returns whether it was added.
    pub fn insert(&mut self, v: &[T]) -> bool {
        let mut w = self.reduce(v);
        let piv = w
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .min_by_key(|(i, x)| (x.size(), *i))
            .map(|(i, _)| i);
        let Some(p) = piv else { return false };
        let inv = w[p].inv();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    let mut b = RowBasis::new();
    for row in a {
        b.insert(row);
    }
    b.rank()
}

/// Indices of the lexicographically first maximal independent set of rows.
pub fn greedy_rows<T: Scalar>(a: &Matrix<T>) -> Vec<usize> {
    let mut b = RowBasis::new();
    let mut out = Vec::new();
    for (i, row) in a.iter().enumerate() {
        if b.insert(row) {
            out.push(i);
        }
    }
    out
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.len();
    let mut m: Matrix<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).filter(|&r| !m[r][col].is_zero()).min_by_key(|&r| (m[r][col].size(), r))?;
        m.swap(col, piv);
        let inv = m[col][col].inv();
        for x in m[col].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by Gaussian elimination.
pub fn det<T: Scalar>(a: &Matrix<T>) -> T {
    let n = a.len();
    let mut m = a.clone();
    let mut d = T::one();
    for col in 0..n {
        let Some(piv) = (col..n).filter(|&r| !m[r][col].is_zero()).min_by_key(|&r| (m[r][col].size(), r)) else {
            return T::zero();
        };
        if piv != col {
            m.swap(col, piv);
            d = T::zero().sub(&d);
        }
        d = d.mul(&m[col][col]);
        let inv = m[col][col].inv();
        let prow = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].mul(&inv);
            for (x, y) in row.iter_mut().zip(&prow).skip(col) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }
    d
}

/// Basis of `{x : a x = 0}` from the reduced row echelon form; each vector
/// has a 1 in its free coordinate.
pub fn kernel<T: Scalar>(a: &Matrix<T>) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    let ncols = a[0].len();
    let mut m = a.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][col].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = T::zero().sub(&m[i][free]);
        }
        out.push(v);
    }
    out
}

/// Fraction-free determinant of an integer matrix.
pub fn bareiss_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    &m[n - 1][n - 1] * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(v: &[&[i64]]) -> Matrix<Rat> {
        v.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a: Vec<Vec<BigInt>> =
            [[2, -1, 0], [-1, 2, -1], [0, -1, 2]].iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        assert_eq!(bareiss_det(&a), BigInt::from(4));
        let z: Vec<Vec<BigInt>> =
            [[0, 1, 0], [-1, 0, 1], [0, -1, 0]].iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        assert_eq!(bareiss_det(&z), BigInt::zero());
        let p: Vec<Vec<BigInt>> = [[0, 1], [1, 0]].iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        assert_eq!(bareiss_det(&p), BigInt::from(-1));
    }

    #[test]
    fn kernel_of_antisymmetric_rank_two() {
        let k = kernel(&ri(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], ri(&[&[1, 0, 1]])[0]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = ri(&[&[2, 1], &[7, 4]]);
        let b = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &b), identity(2));
        assert!(inverse(&ri(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn greedy_rows_skip_dependent() {
        let a = ri(&[&[1, 1], &[2, 2], &[0, 1]]);
        assert_eq!(greedy_rows(&a), vec![0, 2]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn function_field_determinant() {
        let r = FieldElem::r();
        let s = FieldElem::s();
        let m = vec![vec![r.clone(), s.clone()], vec![s.clone(), r.clone()]];
        assert_eq!(det(&m), &r * &r - &s * &s);
    }
}
