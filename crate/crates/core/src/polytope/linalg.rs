//! Exact dense linear algebra over the rationals and integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the content; the zero vector is returned unchanged.
pub(crate) fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Positive multiple of a rational vector with coprime integer entries.
pub(crate) fn integral(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(
        v.iter()
            .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

pub(crate) fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Reduced row echelon form; zero rows dropped.
pub(crate) fn rref(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in &mut rows[r] {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

pub(crate) fn rank(rows: Vec<Vec<BigRational>>) -> usize {
    rref(rows).len()
}

/// Orthogonal (not normalized) basis of the span of `vs`.
pub(crate) fn gram_schmidt(vs: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    for v in vs {
        let w = project_out(v, &basis);
        if w.iter().any(|x| !x.is_zero()) {
            basis.push(w);
        }
    }
    basis
}

/// `v` minus its components along the orthogonal vectors of `basis`.
pub(crate) fn project_out(v: &[BigRational], basis: &[Vec<BigRational>]) -> Vec<BigRational> {
    let mut w = v.to_vec();
    for g in basis {
        let f = dot_q(&w, g) / dot_q(g, g);
        for (x, y) in w.iter_mut().zip(g) {
            *x = &*x - &f * y;
        }
    }
    w
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
