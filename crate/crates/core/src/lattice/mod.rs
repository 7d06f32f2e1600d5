//! Finite bounded lattices and ortholattices.
//!
//! Elements are dense indices `0..len()` carrying string labels. The order is
//! stored as a boolean matrix and meets/joins are tabulated once at
//! construction, so every query afterwards is a table lookup.

mod build;
pub(crate) mod dot;
mod iso;
mod json;
mod laws;
pub(crate) mod paste;

use std::collections::HashMap;
use std::ops::Deref;

use crate::error::{Error, Result};

pub use build::{boolean, chain, horizontal_sum, mo, product, two};
pub use json::LatticeJson;
pub use laws::{Counterexample, Law, LawCheck};

/// Default cap on the number of elements an O(n³) scan will accept.
pub const DEFAULT_SCAN_LIMIT: usize = 1000;

/// Size guard for exhaustive law scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanLimit(Option<usize>);

impl ScanLimit {
    pub fn at_most(limit: usize) -> Self {
        ScanLimit(Some(limit))
    }

    /// Disables the guard.
    pub fn unlimited() -> Self {
        ScanLimit(None)
    }

    pub(crate) fn check(self, size: usize) -> Result<()> {
        match self.0 {
            Some(limit) if size > limit => Err(Error::SizeLimit { size, limit }),
            _ => Ok(()),
        }
    }
}

impl Default for ScanLimit {
    fn default() -> Self {
        ScanLimit(Some(DEFAULT_SCAN_LIMIT))
    }
}

/// A finite bounded lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    zero: usize,
    one: usize,
}

impl Lattice {
    /// Builds a lattice from labels and a row-major `leq` matrix
    /// (`leq[x * n + y]` is `x <= y`).
    ///
    /// Fails unless the relation is a partial order with a least and a
    /// greatest element in which every pair has a meet and a join.
    pub fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotAPartialOrder("empty element set".into()));
        }
        if leq.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                found: leq.len(),
            });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate label `{label}`")));
            }
        }
        let le = |x: usize, y: usize| leq[x * n + y];
        for x in 0..n {
            if !le(x, x) {
                return Err(Error::NotAPartialOrder(format!("`{}` is not <= itself", labels[x])));
            }
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "`{}` and `{}` are mutually below each other",
                        labels[x], labels[y]
                    )));
                }
                if !le(x, y) {
                    continue;
                }
                for z in 0..n {
                    if le(y, z) && !le(x, z) {
                        return Err(Error::NotAPartialOrder(format!(
                            "not transitive at `{}` <= `{}` <= `{}`",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        let zero = (0..n)
            .find(|&x| (0..n).all(|y| le(x, y)))
            .ok_or_else(|| Error::NotAPartialOrder("no least element".into()))?;
        let one = (0..n)
            .find(|&x| (0..n).all(|y| le(y, x)))
            .ok_or_else(|| Error::NotAPartialOrder("no greatest element".into()))?;

        // The meet, when it exists, is the lower bound with the largest
        // down-set; likewise the join has the largest up-set.
        let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&z| le(z, x)).count()).collect();
        let up: Vec<usize> = (0..n).map(|x| (0..n).filter(|&z| le(x, z)).count()).collect();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let lower = |z: usize| le(z, x) && le(z, y);
                let upper = |z: usize| le(x, z) && le(y, z);
                let glb = (0..n)
                    .filter(|&z| lower(z))
                    .max_by_key(|&z| down[z])
                    .filter(|&g| (0..n).all(|w| !lower(w) || le(w, g)))
                    .ok_or_else(|| Error::NotALattice {
                        op: "meet",
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                    })?;
                let lub = (0..n)
                    .filter(|&z| upper(z))
                    .max_by_key(|&z| up[z])
                    .filter(|&g| (0..n).all(|w| !upper(w) || le(g, w)))
                    .ok_or_else(|| Error::NotALattice {
                        op: "join",
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                    })?;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
                join[x * n + y] = lub;
                join[y * n + x] = lub;
            }
        }
        Ok(Lattice {
            labels,
            index,
            leq,
            meet,
            join,
            zero,
            one,
        })
    }

    /// Builds a lattice from labels and the pairs `(x, y)` with `x <= y`.
    /// Reflexive pairs are added automatically; the relation must already be
    /// transitive.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::InvalidArgument(format!("pair ({x}, {y}) out of range")));
            }
            leq[x * n + y] = true;
        }
        Lattice::from_order(labels, leq)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: a bounded lattice has at least one element.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Greatest lower bound.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    /// Least upper bound.
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    /// `y` covers `x`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.len()).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    /// Covering pairs `(lower, upper)` in index order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.covers(x, y) {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    /// Elements covering the least element.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers(self.zero, x)).collect()
    }

    /// Length of the longest chain from the least element to `x`.
    pub fn height(&self, x: usize) -> usize {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&y| (0..self.len()).filter(|&z| self.leq(z, y)).count());
        let mut h = vec![0usize; self.len()];
        for &y in &order {
            for z in 0..self.len() {
                if self.lt(z, y) {
                    h[y] = h[y].max(h[z] + 1);
                }
            }
        }
        h[x]
    }

    /// Checks commutativity, associativity and absorption of meet and join
    /// by exhaustive scan. Returns a description of the first failure.
    pub fn check_lattice_axioms(&self, limit: ScanLimit) -> Result<Option<String>> {
        limit.check(self.len())?;
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return Ok(Some(format!("commutativity at ({x}, {y})")));
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return Ok(Some(format!("absorption at ({x}, {y})")));
                }
                for z in 0..n {
                    if self.meet(x, self.meet(y, z)) != self.meet(self.meet(x, y), z)
                        || self.join(x, self.join(y, z)) != self.join(self.join(x, y), z)
                    {
                        return Ok(Some(format!("associativity at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// A finite bounded ortholattice: a lattice with an order-reversing
/// involution `'` such that `x ∧ x' = 0` and `x ∨ x' = 1`.
#[derive(Clone, Debug)]
pub struct OrthoLattice {
    lattice: Lattice,
    ortho: Vec<usize>,
}

impl OrthoLattice {
    pub fn new(lattice: Lattice, ortho: Vec<usize>) -> Result<Self> {
        let n = lattice.len();
        if ortho.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: ortho.len(),
            });
        }
        let name = |x: usize| lattice.label(x).to_string();
        for x in 0..n {
            let xc = ortho[x];
            if xc >= n {
                return Err(Error::NotAnOrtholattice(format!("complement of `{}` out of range", name(x))));
            }
            if ortho[xc] != x {
                return Err(Error::NotAnOrtholattice(format!("complement is not involutive at `{}`", name(x))));
            }
            if lattice.meet(x, xc) != lattice.zero() || lattice.join(x, xc) != lattice.one() {
                return Err(Error::NotAnOrtholattice(format!(
                    "`{}` and `{}` are not complements",
                    name(x),
                    name(xc)
                )));
            }
            for y in 0..n {
                if lattice.leq(x, y) && !lattice.leq(ortho[y], xc) {
                    return Err(Error::NotAnOrtholattice(format!(
                        "complement does not reverse `{}` <= `{}`",
                        name(x),
                        name(y)
                    )));
                }
            }
        }
        Ok(OrthoLattice { lattice, ortho })
    }

    /// Convenience constructor from labels, order pairs and complement pairs
    /// given by label.
    pub fn from_labelled(
        labels: Vec<String>,
        leq_pairs: &[(usize, usize)],
        ortho_pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let lattice = Lattice::from_pairs(labels, leq_pairs)?;
        let n = lattice.len();
        let mut ortho = vec![usize::MAX; n];
        for &(x, y) in ortho_pairs {
            if x >= n || y >= n {
                return Err(Error::InvalidArgument(format!("complement pair ({x}, {y}) out of range")));
            }
            for (a, b) in [(x, y), (y, x)] {
                if ortho[a] != usize::MAX && ortho[a] != b {
                    return Err(Error::NotAnOrtholattice(format!(
                        "`{}` has two complements",
                        lattice.label(a)
                    )));
                }
                ortho[a] = b;
            }
        }
        if let Some(x) = ortho.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotAnOrtholattice(format!(
                "`{}` has no complement",
                lattice.label(x)
            )));
        }
        OrthoLattice::new(lattice, ortho)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ortho(&self, x: usize) -> usize {
        self.ortho[x]
    }

    pub(crate) fn ortho_map(&self) -> &[usize] {
        &self.ortho
    }

    /// `x ⊥ y`, i.e. `x <= y'`.
    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        self.leq(x, self.ortho(y))
    }

    /// Comeasurability: mutually orthogonal `a, b, c` exist with
    /// `p = a ∨ b` and `q = a ∨ c`. Returns the first such triple.
    pub fn compatibility_witness(&self, p: usize, q: usize) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in (0..n).filter(|&a| self.leq(a, p) && self.leq(a, q)) {
            for b in (0..n).filter(|&b| self.orthogonal(a, b) && self.join(a, b) == p) {
                for c in 0..n {
                    if self.orthogonal(a, c) && self.orthogonal(b, c) && self.join(a, c) == q {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn are_compatible(&self, p: usize, q: usize) -> bool {
        self.compatibility_witness(p, q).is_some()
    }
}

impl Deref for OrthoLattice {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}

/// Makes labels unique by suffixing `#k` to repeats, keeping first
/// occurrences untouched.
pub(crate) fn dedup_labels(labels: Vec<String>) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let taken: std::collections::HashSet<String> = labels.iter().cloned().collect();
    let mut out = Vec::with_capacity(labels.len());
    for label in labels {
        let count = seen.entry(label.clone()).or_insert(0);
        *count += 1;
        if *count == 1 {
            out.push(label);
            continue;
        }
        let mut k = *count;
        let mut candidate = format!("{label}#{k}");
        while taken.contains(&candidate) || out.contains(&candidate) {
            k += 1;
            candidate = format!("{label}#{k}");
        }
        out.push(candidate);
    }
    out
}
