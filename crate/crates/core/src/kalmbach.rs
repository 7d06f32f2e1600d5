//! Kalmbach embeddings of bounded posets of sets.
//!
//! Every maximal chain `0 = c0 < c1 < ... < ck = 1` yields a Boolean block
//! whose atoms are the differences `ci \ c(i-1)`. An element of a block is a
//! union of atoms, i.e. a union of maximal runs of consecutive atoms; each
//! run `[cs, ce]` is recorded by its endpoints. Elements of different blocks
//! with the same endpoint sequence are identified (together with their
//! complements, which then also agree), and the blocks are pasted.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::greechie::GreechieDiagram;
use crate::lattice::paste::Pasting;
use crate::lattice::OrthoLattice;
use crate::states::{classify, StateClassification};

type Set = BTreeSet<String>;

fn set_label(s: &Set) -> String {
    format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(","))
}

/// A finite poset of sets under inclusion, with the empty set as bottom and
/// the union of all listed sets as top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPoset {
    elements: Vec<Set>,
}

impl SetPoset {
    /// Elements are sorted by size, then lexicographically.
    pub fn new(elements: Vec<Set>) -> Result<Self> {
        let mut elements = elements;
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("duplicate element {}", set_label(&w[0]))));
        }
        if elements.first().is_none_or(|b| !b.is_empty()) {
            return Err(Error::InvalidArgument("the empty set (bottom) is missing".into()));
        }
        let top: Set = elements.iter().flatten().cloned().collect();
        if elements.last() != Some(&top) {
            return Err(Error::InvalidArgument(format!(
                "the union {} of all elements (top) is missing",
                set_label(&top)
            )));
        }
        if let Some(bad) = top.iter().find(|x| x.is_empty() || x.contains(|c: char| "{},#'".contains(c) || c.is_whitespace())) {
            return Err(Error::InvalidArgument(format!("invalid ground element `{bad}`")));
        }
        Ok(SetPoset { elements })
    }

    pub fn from_literals(literals: &[&[&str]]) -> Result<Self> {
        SetPoset::new(
            literals
                .iter()
                .map(|l| l.iter().map(|x| x.to_string()).collect())
                .collect(),
        )
    }

    /// One set literal per line, e.g. `{a,b}` or `{}`; `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let inner = line
                .strip_prefix('{')
                .and_then(|l| l.strip_suffix('}'))
                .ok_or_else(|| Error::parse(i + 1, format!("`{line}` is not a set literal")))?;
            let set: Set = inner
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(String::from)
                .collect();
            elements.push(set);
        }
        SetPoset::new(elements).map_err(|e| Error::parse(0, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        self.elements.iter().map(|s| set_label(s) + "\n").collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Set] {
        &self.elements
    }

    pub fn label(&self, x: usize) -> String {
        set_label(&self.elements[x])
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.elements[x].is_subset(&self.elements[y])
    }

    pub fn covers(&self, x: usize, y: usize) -> bool {
        x != y
            && self.leq(x, y)
            && !(0..self.len()).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&z| self.leq(z, m)))
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(y, z)).collect();
        upper.iter().copied().find(|&j| upper.iter().all(|&z| self.leq(j, z)))
    }
}

/// All maximal chains from bottom to top as element index lists, sorted.
pub fn maximal_chains(p: &SetPoset) -> Vec<Vec<usize>> {
    fn walk(p: &SetPoset, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == p.top() {
            out.push(path.clone());
            return;
        }
        for y in 0..p.len() {
            if p.covers(last, y) {
                path.push(y);
                walk(p, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(p, &mut vec![p.bottom()], &mut out);
    out.sort();
    out
}

/// The Boolean block of a chain: its atoms are the successive differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainBlock {
    pub chain: Vec<usize>,
    pub atoms: Vec<Set>,
}

impl ChainBlock {
    pub fn size(&self) -> usize {
        1 << self.atoms.len()
    }
}

pub fn chain_block(p: &SetPoset, chain: &[usize]) -> Result<ChainBlock> {
    if chain.len() < 2 {
        return Err(Error::InvalidArgument("a chain needs at least two elements".into()));
    }
    let mut atoms = Vec::with_capacity(chain.len() - 1);
    for w in chain.windows(2) {
        let (lo, hi) = (&p.elements[w[0]], &p.elements[w[1]]);
        if !lo.is_subset(hi) || lo == hi {
            return Err(Error::InvalidArgument(format!(
                "chain is not strictly increasing at {} -> {}",
                set_label(lo),
                set_label(hi)
            )));
        }
        atoms.push(hi.difference(lo).cloned().collect());
    }
    Ok(ChainBlock {
        chain: chain.to_vec(),
        atoms,
    })
}

/// Endpoints of the maximal runs of set bits of `mask` along `chain`.
fn interval_key(chain: &[usize], mask: u64) -> Vec<usize> {
    let k = chain.len() - 1;
    let mut key = Vec::new();
    let mut i = 0;
    while i < k {
        if mask >> i & 1 == 1 {
            let start = i;
            while i < k && mask >> i & 1 == 1 {
                i += 1;
            }
            key.push(chain[start]);
            key.push(chain[i]);
        } else {
            i += 1;
        }
    }
    key
}

/// The embedding `φ: P -> K(P)`.
#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    pub source: SetPoset,
    pub target: OrthoLattice,
    /// Image of each source element.
    pub images: Vec<usize>,
    pub blocks: Vec<ChainBlock>,
    /// Target elements of each block, indexed by atom mask.
    pub block_elements: Vec<Vec<usize>>,
}

pub fn kalmbach_embedding(p: &SetPoset) -> Result<(OrthoLattice, EmbeddingMap)> {
    let chains = maximal_chains(p);
    let blocks = chains
        .iter()
        .map(|c| chain_block(p, c))
        .collect::<Result<Vec<_>>>()?;
    let mut pasting = Pasting::new(blocks.iter().map(|b| b.atoms.len()).collect())?;
    let mut first_seen: HashMap<Vec<usize>, (usize, u64)> = HashMap::new();
    for (b, block) in blocks.iter().enumerate() {
        for mask in 0..block.size() as u64 {
            let key = interval_key(&block.chain, mask);
            match first_seen.get(&key) {
                Some(&(b0, m0)) => pasting.identify(b0, m0, b, mask),
                None => {
                    first_seen.insert(key, (b, mask));
                }
            }
        }
    }
    let element_labels: BTreeSet<String> = (0..p.len()).map(|x| p.label(x)).collect();
    let label = |reps: &[(usize, u64)]| -> String {
        let (b, mask) = reps[0];
        let block = &blocks[b];
        let key = interval_key(&block.chain, mask);
        if key.is_empty() {
            return p.label(p.bottom());
        }
        if key.len() == 2 && key[0] == p.bottom() {
            return p.label(key[1]);
        }
        let union: Set = (0..block.atoms.len())
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| block.atoms[i].iter().cloned())
            .collect();
        let l = set_label(&union);
        if element_labels.contains(&l) {
            l + "*"
        } else {
            l
        }
    };
    let pasted = pasting.build(label)?;
    let images = (0..p.len())
        .map(|x| {
            let (b, block) = blocks
                .iter()
                .enumerate()
                .find(|(_, blk)| blk.chain.contains(&x))
                .expect("every element lies on a maximal chain");
            let pos = block.chain.iter().position(|&c| c == x).unwrap();
            pasted.block_elements[b][(1usize << pos) - 1]
        })
        .collect();
    let map = EmbeddingMap {
        source: p.clone(),
        target: pasted.lattice.clone(),
        images,
        blocks,
        block_elements: pasted.block_elements,
    };
    Ok((pasted.lattice, map))
}

/// Result of one embedding property, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub property: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub checks: Vec<PropertyCheck>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(property: &'static str, witness: Option<String>) -> PropertyCheck {
    PropertyCheck {
        property,
        passed: witness.is_none(),
        witness,
    }
}

/// Exhaustive check of injectivity, order embedding (i), preservation of
/// existing meets (ii) and joins (iii), and that each maximal chain lands
/// in its Boolean block.
pub fn verify_embedding(m: &EmbeddingMap) -> EmbeddingReport {
    let p = &m.source;
    let l = &m.target;
    let phi = &m.images;
    let n = p.len();
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let name = |x: usize| p.label(x);

    let injective = pairs()
        .find(|&(x, y)| x < y && phi[x] == phi[y])
        .map(|(x, y)| format!("{} and {} have the same image", name(x), name(y)));
    let order = pairs()
        .find(|&(x, y)| p.leq(x, y) != l.leq(phi[x], phi[y]))
        .map(|(x, y)| format!("{} <= {} is {} but fails to carry over", name(x), name(y), p.leq(x, y)));
    let meets = pairs()
        .find_map(|(x, y)| {
            let m = p.meet(x, y)?;
            (phi[m] != l.meet(phi[x], phi[y])).then(|| {
                format!("meet of {} and {} is {} but maps to {}", name(x), name(y), name(m), l.label(l.meet(phi[x], phi[y])))
            })
        });
    let joins = pairs()
        .find_map(|(x, y)| {
            let j = p.join(x, y)?;
            (phi[j] != l.join(phi[x], phi[y])).then(|| {
                format!("join of {} and {} is {} but maps to {}", name(x), name(y), name(j), l.label(l.join(phi[x], phi[y])))
            })
        });
    let chains = m.blocks.iter().zip(&m.block_elements).find_map(|(b, elems)| {
        b.chain
            .iter()
            .find(|&&x| !elems.contains(&phi[x]))
            .map(|&x| format!("{} is outside the block of its chain", name(x)))
    });
    EmbeddingReport {
        checks: vec![
            check("injective", injective),
            check("order", order),
            check("meets", meets),
            check("joins", joins),
            check("chains_in_blocks", chains),
        ],
    }
}

/// Two-valued states of the pasted lattice, via its Greechie diagram.
pub fn full_state_check(l: &OrthoLattice) -> Result<StateClassification> {
    let d = GreechieDiagram::from_lattice_named(l, |x| {
        l.label(x).replace(',', " ").replace('#', "~")
    })?;
    Ok(classify(&d))
}

/// Named chain blocks, for reports.
pub fn describe_blocks(m: &EmbeddingMap) -> Vec<BTreeMap<&'static str, Vec<String>>> {
    m.blocks
        .iter()
        .zip(&m.block_elements)
        .map(|(b, elems)| {
            BTreeMap::from([
                ("chain", b.chain.iter().map(|&x| m.source.label(x)).collect()),
                (
                    "atoms",
                    (0..b.atoms.len())
                        .map(|i| m.target.label(elems[1 << i]).to_string())
                        .collect(),
                ),
            ])
        })
        .collect()
}
