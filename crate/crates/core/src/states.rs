//! Two-valued states on Greechie diagrams: 0/1 assignments to atoms with
//! exactly one true atom in every context.
//!
//! Enumeration is a backtracking search over contexts. Making an atom true
//! forces every atom sharing a context with it to false, and a context left
//! with a single undecided atom and no true atom forces that atom to true.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::greechie::GreechieDiagram;
use crate::FORMAT_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoValuedState {
    values: Vec<bool>,
}

impl TwoValuedState {
    pub fn new(values: Vec<bool>) -> Self {
        TwoValuedState { values }
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, atom: usize) -> bool {
        self.values[atom]
    }

    pub fn true_atoms(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&a| self.values[a]).collect()
    }

    /// Exactly one true atom per context.
    pub fn is_admissible(&self, d: &GreechieDiagram) -> bool {
        self.values.len() == d.atoms().len()
            && d
                .contexts()
                .iter()
                .all(|ctx| ctx.iter().filter(|&&a| self.values[a]).count() == 1)
    }

    pub fn to_named(&self, d: &GreechieDiagram) -> BTreeMap<String, u8> {
        d.atoms()
            .iter()
            .zip(&self.values)
            .map(|(name, &v)| (name.clone(), u8::from(v)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StateClassification {
    pub count: usize,
    /// Every atom is true in some state.
    pub unital: bool,
    /// Every pair of distinct atoms is told apart by some state.
    pub separating: bool,
    /// Reported as separating and unital.
    pub full: bool,
}

struct Search<'a> {
    diagram: &'a GreechieDiagram,
    values: Vec<Option<bool>>,
    out: Vec<TwoValuedState>,
}

impl Search<'_> {
    /// Unit propagation to a fixpoint. Returns the assignments made (for
    /// undo) or `None` on conflict.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for ctx in self.diagram.contexts() {
                let trues = ctx.iter().filter(|&&a| self.values[a] == Some(true)).count();
                let open: Vec<usize> = ctx.iter().copied().filter(|&a| self.values[a].is_none()).collect();
                match (trues, open.len()) {
                    (t, _) if t > 1 => return false,
                    (1, 0) => {}
                    (1, _) => {
                        for a in open {
                            self.values[a] = Some(false);
                            trail.push(a);
                        }
                        changed = true;
                    }
                    (0, 0) => return false,
                    (0, 1) => {
                        self.values[open[0]] = Some(true);
                        trail.push(open[0]);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn undo(&mut self, trail: &[usize]) {
        for &a in trail {
            self.values[a] = None;
        }
    }

    fn run(&mut self) {
        let mut trail = Vec::new();
        if !self.propagate(&mut trail) {
            self.undo(&trail);
            return;
        }
        let open_ctx = self.diagram.contexts().iter().find(|ctx| {
            ctx.iter().all(|&a| self.values[a] != Some(true))
        });
        match open_ctx {
            None => {
                // every context has its true atom, so propagation decided all
                // atoms that lie in some context
                let values = self.values.iter().map(|v| v.unwrap_or(false)).collect();
                self.out.push(TwoValuedState { values });
            }
            Some(ctx) => {
                let choices: Vec<usize> = ctx.iter().copied().filter(|&a| self.values[a].is_none()).collect();
                for a in choices {
                    self.values[a] = Some(true);
                    self.run();
                    self.values[a] = None;
                }
            }
        }
        self.undo(&trail);
    }
}

fn enumerate_from(d: &GreechieDiagram, seed: Option<usize>) -> Vec<TwoValuedState> {
    let mut search = Search {
        diagram: d,
        values: vec![None; d.atoms().len()],
        out: Vec::new(),
    };
    if let Some(a) = seed {
        search.values[a] = Some(true);
    }
    search.run();
    let mut states = search.out;
    // canonical order: earlier atoms true first
    states.sort_by(|x, y| y.cmp(x));
    states.dedup();
    states
}

/// All two-valued states of `d`, duplicate-free, in canonical order.
pub fn enumerate_states(d: &GreechieDiagram) -> Vec<TwoValuedState> {
    enumerate_from(d, None)
}

/// All states in which the named atom is true.
pub fn symmetric_seed(d: &GreechieDiagram, atom: &str) -> Result<Vec<TwoValuedState>> {
    let a = d
        .atom_index(atom)
        .ok_or_else(|| Error::UnknownAtom(atom.to_string()))?;
    Ok(enumerate_from(d, Some(a)))
}

pub fn classify_states(d: &GreechieDiagram, states: &[TwoValuedState]) -> StateClassification {
    let n = d.atoms().len();
    let count = states.len();
    let unital = count > 0 && (0..n).all(|a| states.iter().any(|s| s.value(a)));
    let separating = count > 0
        && (0..n).all(|a| (a + 1..n).all(|b| states.iter().any(|s| s.value(a) != s.value(b))));
    StateClassification {
        count,
        unital,
        separating,
        full: unital && separating,
    }
}

pub fn classify(d: &GreechieDiagram) -> StateClassification {
    classify_states(d, &enumerate_states(d))
}

#[derive(Serialize)]
struct StatesJson<'a> {
    format_version: u32,
    atoms: &'a [String],
    states: Vec<BTreeMap<String, u8>>,
    classification: StateClassification,
}

/// JSON document with the states as atom-to-bit maps and the classification.
pub fn states_json(d: &GreechieDiagram, states: &[TwoValuedState]) -> String {
    let doc = StatesJson {
        format_version: FORMAT_VERSION,
        atoms: d.atoms(),
        states: states.iter().map(|s| s.to_named(d)).collect(),
        classification: classify_states(d, states),
    };
    serde_json::to_string_pretty(&doc).expect("states JSON serializes")
}
