//! Double description for cones `{y : A y >= 0}` over the integers.
//!
//! Constraints are inserted in the given order. The lineality space is kept
//! as a basis; extreme rays (modulo lineality) carry the set of processed
//! constraints they satisfy with equality, and adjacency of two rays is
//! decided combinatorially: no third ray is tight on all their common
//! constraints.

use num_bigint::BigInt;
use num_traits::Zero;

use super::linalg::{dot, primitive, sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bitset(Vec<u64>);

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset(vec![0; n.div_ceil(64)])
    }

    fn full_prefix(n: usize, len: usize) -> Self {
        let mut b = Bitset::new(n);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Bitset) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

pub(crate) struct Generators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<(Vec<BigInt>, Bitset)>,
}

/// Combination of `p` and `q` on the hyperplane `a·y = 0`: `ap > 0 > aq`.
fn combine(p: &[BigInt], ap: &BigInt, q: &[BigInt], aq: &BigInt) -> Vec<BigInt> {
    let neg_aq = -aq;
    primitive(p.iter().zip(q).map(|(x, y)| &neg_aq * x + ap * y).collect())
}

pub(crate) fn generators(constraints: &[Vec<BigInt>], dim: usize) -> Generators {
    let m = constraints.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut rays: Vec<(Vec<BigInt>, Bitset)> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut a0 = dot(a, &l0);
            if sign(&a0) < 0 {
                l0 = l0.into_iter().map(|x| -x).collect();
                a0 = -a0;
            }
            for l in &mut lineality {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = primitive(l.iter().zip(&l0).map(|(x, y)| &a0 * x - &al * y).collect());
                }
            }
            for (r, zero) in &mut rays {
                let ar = dot(a, r);
                if !ar.is_zero() {
                    *r = primitive(r.iter().zip(&l0).map(|(x, y)| &a0 * x - &ar * y).collect());
                }
                zero.insert(k);
            }
            rays.push((primitive(l0), Bitset::full_prefix(m, k)));
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let pointed_dim = dim - lineality.len();
        let mut next: Vec<(Vec<BigInt>, Bitset)> = Vec::new();
        for (i, p) in rays.iter().enumerate() {
            if sign(&values[i]) < 0 {
                continue;
            }
            let mut z = p.1.clone();
            if values[i].is_zero() {
                z.insert(k);
            }
            next.push((p.0.clone(), z));
        }
        for (i, p) in rays.iter().enumerate() {
            if sign(&values[i]) <= 0 {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if sign(&values[j]) >= 0 {
                    continue;
                }
                let common = p.1.and(&q.1);
                if common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, r)| t == i || t == j || !common.is_subset(&r.1));
                if adjacent {
                    let mut z = common;
                    z.insert(k);
                    next.push((combine(&p.0, &values[i], &q.0, &values[j]), z));
                }
            }
        }
        rays = next;
    }
    Generators { lineality, rays }
}
