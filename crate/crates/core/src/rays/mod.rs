//! Exact projective rays over Q(√2) and the Peres configuration.

mod frames;
mod io;
mod peres;
mod ray;
mod scalar;

use std::collections::BTreeSet;

pub use frames::{embeddable, r4_product_check, r6_product_check, OrthogonalityCheck, ProductReport};
pub use io::{parse_rays, rays_to_text};
pub use peres::{
    derivation_rows, peres_generators, peres_rays, peres_report, replay_derivation,
    seventeen_orthogenerators, DerivationRow, PeresReport,
};
pub use ray::Ray;
pub use scalar::Scalar;

use crate::error::{Error, Result};
use crate::greechie::{maximal_cliques, GreechieDiagram};

/// Default bound on the number of rays an orthogonal closure may add.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

fn common_dim<'a>(rays: impl IntoIterator<Item = &'a Ray>) -> Result<Option<usize>> {
    let mut dim = None;
    for r in rays {
        match dim {
            None => dim = Some(r.dim()),
            Some(d) if d != r.dim() => {
                return Err(Error::Dimension {
                    expected: d,
                    found: r.dim(),
                })
            }
            _ => {}
        }
    }
    Ok(dim)
}

/// Least superset of `rays` closed under `nor` of orthogonal pairs (R³ only).
///
/// Fails with [`Error::ClosureCap`] once more than `cap` rays were added.
pub fn ortho_closure<'a>(
    rays: impl IntoIterator<Item = &'a Ray>,
    cap: usize,
) -> Result<BTreeSet<Ray>> {
    let mut set: BTreeSet<Ray> = rays.into_iter().cloned().collect();
    if let Some(d) = common_dim(&set)? {
        if d != 3 {
            return Err(Error::Dimension {
                expected: 3,
                found: d,
            });
        }
    }
    let mut list: Vec<Ray> = set.iter().cloned().collect();
    let mut fresh_from = 0;
    let mut added = 0;
    loop {
        let mut fresh = Vec::new();
        for j in fresh_from..list.len() {
            for i in 0..j {
                if !list[i].is_orthogonal(&list[j]) {
                    continue;
                }
                let r = list[i].nor(&list[j])?;
                if set.insert(r.clone()) {
                    added += 1;
                    if added > cap {
                        return Err(Error::ClosureCap(cap));
                    }
                    fresh.push(r);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(set);
        }
        fresh_from = list.len();
        list.extend(fresh);
    }
}

/// Greechie diagram whose contexts are the maximal sets of mutually
/// orthogonal rays. Atoms are named by ray labels in canonical ray order.
///
/// Every maximal set must be a complete frame (as many rays as the
/// dimension); a smaller one means the input is not closed and is an error.
pub fn contexts<'a>(rays: impl IntoIterator<Item = &'a Ray>) -> Result<GreechieDiagram> {
    let rays: Vec<&Ray> = rays.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let dim = common_dim(rays.iter().copied())?
        .ok_or_else(|| Error::InvalidDiagram("no rays".into()))?;
    let n = rays.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && rays[i].is_orthogonal(rays[j])).collect())
        .collect();
    let cliques = maximal_cliques(&adj);
    if let Some(bad) = cliques.iter().find(|c| c.len() != dim) {
        let labels: Vec<String> = bad.iter().map(|&i| rays[i].label()).collect();
        return Err(Error::InvalidDiagram(format!(
            "maximal orthogonal set {{{}}} has {} rays in dimension {dim}",
            labels.join(", "),
            bad.len()
        )));
    }
    GreechieDiagram::new(rays.iter().map(|r| r.label()).collect(), cliques)
}

/// Number of elements of the orthoposet generated by a ray set in R³:
/// 0, 1, the rays, and the distinct planes arising as orthocomplements of
/// rays or as spans of orthogonal pairs (each plane counted once, by its
/// normal ray).
pub fn element_count_of_orthoposet<'a>(rays: impl IntoIterator<Item = &'a Ray>) -> Result<usize> {
    let rays: BTreeSet<&Ray> = rays.into_iter().collect();
    if let Some(d) = common_dim(rays.iter().copied())? {
        if d != 3 {
            return Err(Error::Dimension {
                expected: 3,
                found: d,
            });
        }
    }
    let mut plane_normals: BTreeSet<Ray> = rays.iter().map(|&r| r.clone()).collect();
    let list: Vec<&Ray> = rays.iter().copied().collect();
    for (j, v) in list.iter().enumerate() {
        for u in &list[..j] {
            if u.is_orthogonal(v) {
                plane_normals.insert(u.nor(v)?);
            }
        }
    }
    Ok(2 + rays.len() + plane_normals.len())
}
