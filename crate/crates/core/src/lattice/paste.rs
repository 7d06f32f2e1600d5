//! Pasting of Boolean blocks.
//!
//! Every block is a Boolean algebra 2^k whose elements are bit masks over its
//! k atoms. Identifications between elements of different blocks are kept in
//! a union-find; identifying two elements also identifies their complements,
//! and all blocks share 0 and 1. The pasted order is the transitive closure
//! of the block orders.

use super::{dedup_labels, Lattice, OrthoLattice};
use crate::error::{Error, Result};

/// Largest block handled (2^16 elements per block).
const MAX_BLOCK_ATOMS: usize = 16;

pub(crate) struct Pasting {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    parent: Vec<usize>,
}

/// Result of a pasting: the ortholattice plus, for every block, the global
/// element of each mask.
pub(crate) struct Pasted {
    pub lattice: OrthoLattice,
    pub block_elements: Vec<Vec<usize>>,
}

impl Pasting {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Pasting("no blocks".into()));
        }
        if let Some(&k) = sizes.iter().find(|&&k| k > MAX_BLOCK_ATOMS) {
            return Err(Error::Pasting(format!("block with {k} atoms is too large")));
        }
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for &k in &sizes {
            offsets.push(total);
            total += 1 << k;
        }
        let mut pasting = Pasting {
            sizes,
            offsets,
            parent: (0..total).collect(),
        };
        for b in 1..pasting.sizes.len() {
            pasting.identify(0, 0, b, 0);
        }
        Ok(pasting)
    }

    fn full(&self, block: usize) -> u64 {
        (1u64 << self.sizes[block]) - 1
    }

    fn slot(&self, block: usize, mask: u64) -> usize {
        self.offsets[block] + mask as usize
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }

    /// Identifies `mask1` of block `b1` with `mask2` of block `b2`, and their
    /// complements.
    pub fn identify(&mut self, b1: usize, mask1: u64, b2: usize, mask2: u64) {
        let (s1, s2) = (self.slot(b1, mask1), self.slot(b2, mask2));
        self.union(s1, s2);
        let c1 = self.slot(b1, self.full(b1) ^ mask1);
        let c2 = self.slot(b2, self.full(b2) ^ mask2);
        self.union(c1, c2);
    }

    /// Builds the pasted ortholattice. `label` names an element from its
    /// representatives `(block, mask)`, listed in block order.
    pub fn build(mut self, label: impl Fn(&[(usize, u64)]) -> String) -> Result<Pasted> {
        let blocks = self.sizes.len();
        // classes in order of first occurrence
        let mut class_of_root = std::collections::HashMap::new();
        let mut members: Vec<Vec<(usize, u64)>> = Vec::new();
        let mut block_elements = vec![Vec::new(); blocks];
        for b in 0..blocks {
            for mask in 0..=self.full(b) {
                let root = {
                    let s = self.slot(b, mask);
                    self.find(s)
                };
                let class = *class_of_root.entry(root).or_insert_with(|| {
                    members.push(Vec::new());
                    members.len() - 1
                });
                members[class].push((b, mask));
                block_elements[b].push(class);
            }
        }
        for (class, reps) in members.iter().enumerate() {
            for (i, &(b, m)) in reps.iter().enumerate() {
                if let Some(&(_, m2)) = reps[i + 1..].iter().find(|&&(b2, _)| b2 == b) {
                    return Err(Error::Pasting(format!(
                        "identification collapses masks {m:#b} and {m2:#b} of block {b} (element {class})"
                    )));
                }
            }
        }
        let n = members.len();
        // Put 1 last so the element order reads bottom to top at the ends.
        let one_class = block_elements[0][self.full(0) as usize];
        let mut perm: Vec<usize> = (0..n).filter(|&c| c != one_class).collect();
        perm.push(one_class);
        let mut position = vec![0; n];
        for (pos, &c) in perm.iter().enumerate() {
            position[c] = pos;
        }
        for elems in &mut block_elements {
            for e in elems.iter_mut() {
                *e = position[*e];
            }
        }

        let mut leq = vec![false; n * n];
        for (b, elems) in block_elements.iter().enumerate() {
            let full = self.full(b);
            for x in 0..=full {
                for y in 0..=full {
                    if x & y == x {
                        leq[elems[x as usize] * n + elems[y as usize]] = true;
                    }
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut ortho = vec![0; n];
        for (b, elems) in block_elements.iter().enumerate() {
            let full = self.full(b);
            for x in 0..=full {
                ortho[elems[x as usize]] = elems[(full ^ x) as usize];
            }
        }
        let labels = dedup_labels(perm.iter().map(|&c| label(&members[c])).collect());
        let lattice = Lattice::from_order(labels, leq).map_err(|e| match e {
            Error::NotAPartialOrder(msg) => Error::Pasting(format!("pasted order is not antisymmetric: {msg}")),
            other => other,
        })?;
        let lattice = OrthoLattice::new(lattice, ortho)?;
        Ok(Pasted {
            lattice,
            block_elements,
        })
    }
}
