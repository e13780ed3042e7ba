//! Polynomial gcd over the integers, univariate and bivariate.
//!
//! Units of the Laurent ring are signed monomials, so every gcd returned
//! here is monomial-free with a positive leading coefficient.

use super::poly::IPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
pub type UPoly = Vec<BigInt>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn ucontent(p: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn uprimitive(p: &UPoly) -> UPoly {
    let c = ucontent(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (both nonzero, deg a >= deg b).
fn uprem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Gcd of univariate integer polynomials, primitive part times content gcd,
/// leading coefficient positive.
pub fn ugcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return unormal(b);
    }
    if b.is_empty() {
        return unormal(a);
    }
    let c = ucontent(a).gcd(&ucontent(b));
    let (mut x, mut y) = (uprimitive(a), uprimitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = uprem(&x, &y);
        x = y;
        y = uprimitive(&r);
    }
    let mut g: UPoly = uprimitive(&x).into_iter().map(|v| v * &c).collect();
    if g.last().is_some_and(|l| l.is_negative()) {
        for v in g.iter_mut() {
            *v = -&*v;
        }
    }
    g
}

fn unormal(p: &UPoly) -> UPoly {
    if p.last().is_some_and(|l| l.is_negative()) {
        p.iter().map(|v| -v).collect()
    } else {
        p.clone()
    }
}

fn udiv_exact(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let coef = &r[k + db] / &b[db];
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &coef * bc;
        }
        q[k] = coef;
    }
    q
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Bivariate polynomial as a dense vector (indexed by `u`-degree) of
/// univariate polynomials in `v`.
type BPoly = Vec<UPoly>;

fn to_bpoly(p: &IPoly) -> BPoly {
    let mx = p.max_exps();
    let mut out: BPoly = vec![Vec::new(); mx[0] as usize + 1];
    for (e, c) in p.terms() {
        let row = &mut out[e[0] as usize];
        let j = e[1] as usize;
        if row.len() <= j {
            row.resize(j + 1, BigInt::zero());
        }
        row[j] = c.clone();
    }
    for row in out.iter_mut() {
        trim(row);
    }
    out
}

fn from_bpoly(p: &BPoly) -> IPoly {
    IPoly::from_terms(p.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| ([i as i64, j as i64], c.clone()))
    }))
}

fn btrim(p: &mut BPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn bcontent(p: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for row in p {
        if row.is_empty() {
            continue;
        }
        g = ugcd(&g, row);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn bdiv_content(p: &BPoly, c: &UPoly) -> BPoly {
    if c.len() == 1 && c[0].is_one() {
        return p.clone();
    }
    p.iter().map(|row| udiv_exact(row, c)).collect()
}

fn bprem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = umul(x, lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = umul(&lr, bc);
            let row = &mut r[i + shift];
            if row.len() < t.len() {
                row.resize(t.len(), BigInt::zero());
            }
            for (k, v) in t.into_iter().enumerate() {
                row[k] -= v;
            }
            trim(row);
        }
        btrim(&mut r);
    }
    r
}

fn bgcd(a: &BPoly, b: &BPoly) -> BPoly {
    let ca = bcontent(a);
    let cb = bcontent(b);
    let c = ugcd(&ca, &cb);
    let (mut x, mut y) = (bdiv_content(a, &ca), bdiv_content(b, &cb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = bprem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { bdiv_content(&r, &bcontent(&r)) };
    }
    let cx = bcontent(&x);
    let x = bdiv_content(&x, &cx);
    x.iter().map(|row| umul(row, &c)).collect()
}

/// Gcd in the Laurent ring `Z[u^±, v^±]`, returned monomial-free with
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    let a = a.shift(neg(a.min_exps()));
    let b = b.shift(neg(b.min_exps()));
    if a.is_constant() || b.is_constant() {
        return IPoly::constant(a.content().gcd(&b.content()));
    }
    if a == b {
        return normalize_unit(&a);
    }
    let (small, big) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    if big.div_exact(small).is_some() {
        return normalize_unit(small);
    }
    let ma = a.max_exps();
    let mb = b.max_exps();
    if a.is_homogeneous() && b.is_homogeneous() {
        let ua = dehomogenize(&a);
        let ub = dehomogenize(&b);
        let g = ugcd(&ua, &ub);
        let k = (g.len() - 1) as i64;
        return normalize_unit(&IPoly::from_terms(
            g.into_iter().enumerate().map(|(i, c)| ([i as i64, k - i as i64], c)),
        ));
    }
    if ma[1] == 0 && mb[1] == 0 {
        let g = ugcd(&column(&a, 0), &column(&b, 0));
        return normalize_unit(&IPoly::from_terms(g.into_iter().enumerate().map(|(i, c)| ([i as i64, 0], c))));
    }
    if ma[0] == 0 && mb[0] == 0 {
        let g = ugcd(&column(&a, 1), &column(&b, 1));
        return normalize_unit(&IPoly::from_terms(g.into_iter().enumerate().map(|(i, c)| ([0, i as i64], c))));
    }
    normalize_unit(&from_bpoly(&bgcd(&to_bpoly(&a), &to_bpoly(&b))))
}

fn neg(m: [i64; 2]) -> [i64; 2] {
    [-m[0], -m[1]]
}

fn dehomogenize(p: &IPoly) -> UPoly {
    column(p, 0)
}

fn column(p: &IPoly, var: usize) -> UPoly {
    let d = p.max_exps()[var] as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (e, c) in p.terms() {
        out[e[var] as usize] += c;
    }
    trim(&mut out);
    out
}

fn normalize_unit(p: &IPoly) -> IPoly {
    if p.is_zero() {
        return IPoly::zero();
    }
    let q = p.shift(neg(p.min_exps()));
    if q.lc().is_negative() {
        q.neg()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ts: &[(i64, i64, i64)]) -> IPoly {
        IPoly::from_terms(ts.iter().map(|&(a, b, c)| ([a, b], BigInt::from(c))))
    }

    #[test]
    fn homogeneous_gcd() {
        // (u-v)(u+v) and (u-v)^2
        let a = p(&[(2, 0, 1), (0, 2, -1)]);
        let b = p(&[(2, 0, 1), (1, 1, -2), (0, 2, 1)]);
        assert_eq!(gcd(&a, &b), p(&[(1, 0, 1), (0, 1, -1)]));
    }

    #[test]
    fn inhomogeneous_gcd() {
        // (u v + 1)(u - 2) and (u v + 1)(v + 3)
        let f = p(&[(1, 1, 1), (0, 0, 1)]);
        let a = f.mul(&p(&[(1, 0, 1), (0, 0, -2)]));
        let b = f.mul(&p(&[(0, 1, 1), (0, 0, 3)]));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn integer_content_is_kept() {
        let a = p(&[(1, 0, 6), (0, 0, 4)]);
        let b = p(&[(1, 0, 9), (0, 0, 6)]);
        assert_eq!(gcd(&a, &b), p(&[(1, 0, 3), (0, 0, 2)]));
    }

    #[test]
    fn coprime_gives_one() {
        let a = p(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]);
        let b = p(&[(1, 0, 1), (0, 1, -1), (0, 0, 2)]);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomials_are_units() {
        let a = p(&[(3, 1, 1), (2, 2, -1)]);
        let b = p(&[(-1, 0, 1), (-2, 1, 1)]);
        assert!(gcd(&a, &b).is_one());
    }
}
