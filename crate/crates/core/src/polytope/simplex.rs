//! Exact phase-one simplex with Bland's rule, used to decide whether a point
//! is a convex combination of given points.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Nonnegative weights `λ` with `Σ λ_j points[j] = target` and `Σ λ_j = 1`,
/// if they exist.
pub(crate) fn convex_weights(points: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = points.len();
    let d = target.len();
    let m = d + 1;
    // rows: coordinates then the normalization Σλ = 1
    let mut rows: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..k)
                .map(|j| if i < d { points[j][i].clone() } else { BigRational::one() })
                .collect();
            row.extend((0..m).map(|a| if a == i { BigRational::one() } else { BigRational::zero() }));
            let rhs = if i < d { target[i].clone() } else { BigRational::one() };
            row.push(rhs);
            row
        })
        .collect();
    for row in &mut rows {
        if row[k + m].is_negative() {
            for (j, x) in row.iter_mut().enumerate() {
                // artificial columns stay +1 on their own row
                if !(k..k + m).contains(&j) {
                    *x = -&*x;
                }
            }
        }
    }
    let cols = k + m;
    let mut basis: Vec<usize> = (k..k + m).collect();
    // reduced costs of the phase-one objective Σ artificials
    let mut cost: Vec<BigRational> = (0..=cols)
        .map(|j| {
            if (k..k + m).contains(&j) {
                BigRational::zero()
            } else {
                -rows.iter().map(|r| r[j].clone()).sum::<BigRational>()
            }
        })
        .collect();

    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[cols] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave.expect("phase-one objective is bounded below");
        let inv = rows[r][enter].recip();
        for x in &mut rows[r] {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, y) in cost.iter_mut().zip(&pivot) {
            *x = &*x - &f * y;
        }
        basis[r] = enter;
    }
    // -cost[cols] is the remaining infeasibility
    if !cost[cols].is_zero() {
        return None;
    }
    let mut weights = vec![BigRational::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            weights[b] = rows[i][cols].clone();
        }
    }
    Some(weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect()
    }

    fn square() -> Vec<Vec<BigRational>> {
        vec![q(&[(0, 1), (0, 1)]), q(&[(0, 1), (1, 1)]), q(&[(1, 1), (0, 1)]), q(&[(1, 1), (1, 1)])]
    }

    fn check(points: &[Vec<BigRational>], target: &[BigRational], w: &[BigRational]) {
        assert!(w.iter().all(|x| !x.is_negative()));
        assert_eq!(w.iter().sum::<BigRational>(), BigRational::one());
        for i in 0..target.len() {
            let s: BigRational = points.iter().zip(w).map(|(p, l)| &p[i] * l).sum();
            assert_eq!(s, target[i]);
        }
    }

    #[test]
    fn interior_point_of_square() {
        let pts = square();
        let t = q(&[(1, 3), (1, 2)]);
        let w = convex_weights(&pts, &t).unwrap();
        check(&pts, &t, &w);
    }

    #[test]
    fn outside_point() {
        assert!(convex_weights(&square(), &q(&[(3, 2), (0, 1)])).is_none());
        assert!(convex_weights(&square(), &q(&[(-1, 2), (1, 2)])).is_none());
    }

    #[test]
    fn vertex_gets_unit_weight() {
        let pts = square();
        let w = convex_weights(&pts, &pts[3]).unwrap();
        check(&pts, &pts[3], &w);
        assert_eq!(w[3], BigRational::one());
    }
}
