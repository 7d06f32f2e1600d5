//! Products of MO_2 factors realized by rays in R⁴ and R⁶, and the
//! dimension criterion for finite sub-orthomodular posets of C(Rⁿ).

use serde::Serialize;

use super::Ray;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityCheck {
    pub left: String,
    pub right: String,
    pub expected: bool,
    pub actual: bool,
}

impl OrthogonalityCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// Outcome of checking a list of MO_2 factors realized by rays.
#[derive(Debug, Clone, Serialize)]
pub struct ProductReport {
    pub dimension: usize,
    pub vectors: Vec<(String, String)>,
    pub checks: Vec<OrthogonalityCheck>,
    /// One frame per choice of a complementary pair in every factor.
    pub frames: Vec<(Vec<String>, bool)>,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(OrthogonalityCheck::passed) && self.frames.iter().all(|f| f.1)
    }
}

type Factor = [(String, Ray); 4];

fn vector(name: &str, coords: &[i64]) -> (String, Ray) {
    (name.to_string(), Ray::from_ints(coords).expect("nonzero"))
}

/// Each factor is `(x, x', y, y')`: two complementary pairs spanning the
/// same plane, with no orthogonality across the pairs. Distinct factors
/// must be orthogonal throughout.
fn check_product(factors: Vec<Factor>) -> ProductReport {
    let dimension = factors[0][0].1.dim();
    let mut checks = Vec::new();
    let mut push = |(ln, l): &(String, Ray), (rn, r): &(String, Ray), expected: bool| {
        checks.push(OrthogonalityCheck {
            left: ln.clone(),
            right: rn.clone(),
            expected,
            actual: l.is_orthogonal(r),
        })
    };
    for f in &factors {
        push(&f[0], &f[1], true);
        push(&f[2], &f[3], true);
        for i in 0..2 {
            for j in 2..4 {
                push(&f[i], &f[j], false);
            }
        }
    }
    for (i, f) in factors.iter().enumerate() {
        for g in &factors[i + 1..] {
            for x in f {
                for y in g {
                    push(x, y, true);
                }
            }
        }
    }
    let mut frames = Vec::new();
    for choice in 0..1usize << factors.len() {
        let members: Vec<&(String, Ray)> = factors
            .iter()
            .enumerate()
            .flat_map(|(k, f)| {
                let base = if choice >> k & 1 == 0 { 0 } else { 2 };
                [&f[base], &f[base + 1]]
            })
            .collect();
        let orthogonal = members.iter().enumerate().all(|(i, x)| {
            members[i + 1..].iter().all(|y| x.1.is_orthogonal(&y.1))
        });
        frames.push((
            members.iter().map(|m| m.0.clone()).collect(),
            orthogonal && members.len() == dimension,
        ));
    }
    let vectors = factors
        .iter()
        .flatten()
        .map(|(n, r)| (n.clone(), r.label()))
        .collect();
    ProductReport {
        dimension,
        vectors,
        checks,
        frames,
    }
}

/// MO_2 × MO_2 in R⁴ via a, a', b, b' in the first two coordinates and
/// c, c', d, d' in the last two.
pub fn r4_product_check() -> ProductReport {
    check_product(vec![
        [
            vector("a", &[1, 0, 0, 0]),
            vector("a'", &[0, 1, 0, 0]),
            vector("b", &[1, 1, 0, 0]),
            vector("b'", &[1, -1, 0, 0]),
        ],
        [
            vector("c", &[0, 0, 1, 0]),
            vector("c'", &[0, 0, 0, 1]),
            vector("d", &[0, 0, 1, 1]),
            vector("d'", &[0, 0, 1, -1]),
        ],
    ])
}

/// MO_2 × MO_2 × MO_2 in R⁶, one factor per coordinate pair.
pub fn r6_product_check() -> ProductReport {
    let names = [["a", "a'", "b", "b'"], ["c", "c'", "d", "d'"], ["e", "e'", "f", "f'"]];
    let factors = (0..3)
        .map(|k| {
            let unit = |entries: [(usize, i64); 2]| {
                let mut v = [0i64; 6];
                for (i, x) in entries {
                    v[2 * k + i] += x;
                }
                v
            };
            let n = names[k];
            [
                vector(n[0], &unit([(0, 1), (1, 0)])),
                vector(n[1], &unit([(0, 0), (1, 1)])),
                vector(n[2], &unit([(0, 1), (1, 1)])),
                vector(n[3], &unit([(0, 1), (1, -1)])),
            ]
        })
        .collect();
    check_product(factors)
}

/// Whether `2^q × MO_{n_1} × ... × MO_{n_k}` embeds as a sub-orthomodular
/// poset of the subspace lattice of Rⁿ: `q + 2k <= n`, and a Boolean factor
/// is required in odd dimension.
pub fn embeddable(q: usize, factors: &[usize], n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if let Some(&m) = factors.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidArgument(format!("MO_{m} is not a factor (need m >= 2)")));
    }
    let k = factors.len();
    Ok(q + 2 * k <= n && (n % 2 == 0 || q != 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check<'a>(r: &'a ProductReport, l: &str, rt: &str) -> &'a OrthogonalityCheck {
        r.checks
            .iter()
            .find(|c| c.left == l && c.right == rt)
            .unwrap()
    }

    #[test]
    fn r4_pattern() {
        let r = r4_product_check();
        assert!(r.passed());
        assert!(check(&r, "a", "a'").actual);
        assert!(check(&r, "b", "b'").actual);
        assert!(!check(&r, "a", "b").actual);
        let frames: Vec<&Vec<String>> = r.frames.iter().map(|f| &f.0).collect();
        assert!(frames.contains(&&vec!["a".to_string(), "a'".into(), "c".into(), "c'".into()]));
        assert!(frames.contains(&&vec!["b".to_string(), "b'".into(), "d".into(), "d'".into()]));
    }

    #[test]
    fn r6_pattern() {
        let r = r6_product_check();
        assert_eq!(r.dimension, 6);
        assert_eq!(r.vectors[10].1, "(0 0 0 0 1 1)");
        assert_eq!(r.frames.len(), 8);
        assert!(r.passed());
    }

    #[test]
    fn dimension_criterion() {
        assert!(!embeddable(0, &[2, 2], 5).unwrap());
        assert!(embeddable(0, &[2, 2], 4).unwrap());
        assert!(embeddable(1, &[7], 3).unwrap());
        assert!(!embeddable(0, &[4], 3).unwrap());
        assert!(embeddable(3, &[], 3).unwrap());
        assert!(!embeddable(4, &[], 3).unwrap());
        assert!(embeddable(0, &[1], 4).is_err());
    }
}
