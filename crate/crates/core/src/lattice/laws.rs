//! Exhaustive law checks. Every checker scans tuples in lexicographic index
//! order and reports the first failing tuple, so witnesses are reproducible.

use serde::Serialize;

use super::{Lattice, OrthoLattice, ScanLimit};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Distributive,
    Modular,
    Orthomodular,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Distributive => "distributive",
            Law::Modular => "modular",
            Law::Orthomodular => "orthomodular",
        }
    }
}

/// A failing instance of a law: the quantified elements and the two sides of
/// the equation as evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub elements: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: Law,
    pub counterexample: Option<Counterexample>,
}

impl LawCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl Lattice {
    /// Both sides of `a ∨ (b ∧ c) = (a ∨ b) ∧ (a ∨ c)`.
    pub fn distributivity_sides(&self, a: usize, b: usize, c: usize) -> (usize, usize) {
        (
            self.join(a, self.meet(b, c)),
            self.meet(self.join(a, b), self.join(a, c)),
        )
    }

    /// Both sides of `(a ∨ b) ∧ c = a ∨ (b ∧ c)`, meaningful for `a <= c`.
    pub fn modularity_sides(&self, a: usize, b: usize, c: usize) -> (usize, usize) {
        (self.meet(self.join(a, b), c), self.join(a, self.meet(b, c)))
    }

    pub fn is_distributive(&self) -> Result<LawCheck> {
        self.check_distributive(ScanLimit::default())
    }

    pub fn check_distributive(&self, limit: ScanLimit) -> Result<LawCheck> {
        limit.check(self.len())?;
        let n = self.len();
        let mut counterexample = None;
        'scan: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (lhs, rhs) = self.distributivity_sides(a, b, c);
                    if lhs != rhs {
                        counterexample = Some(Counterexample {
                            elements: vec![a, b, c],
                            lhs,
                            rhs,
                        });
                        break 'scan;
                    }
                }
            }
        }
        Ok(LawCheck {
            law: Law::Distributive,
            counterexample,
        })
    }

    pub fn is_modular(&self) -> Result<LawCheck> {
        self.check_modular(ScanLimit::default())
    }

    pub fn check_modular(&self, limit: ScanLimit) -> Result<LawCheck> {
        limit.check(self.len())?;
        let n = self.len();
        let mut counterexample = None;
        'scan: for a in 0..n {
            for b in 0..n {
                for c in (0..n).filter(|&c| self.leq(a, c)) {
                    let (lhs, rhs) = self.modularity_sides(a, b, c);
                    if lhs != rhs {
                        counterexample = Some(Counterexample {
                            elements: vec![a, b, c],
                            lhs,
                            rhs,
                        });
                        break 'scan;
                    }
                }
            }
        }
        Ok(LawCheck {
            law: Law::Modular,
            counterexample,
        })
    }
}

impl OrthoLattice {
    pub fn is_orthomodular(&self) -> Result<LawCheck> {
        self.check_orthomodular(ScanLimit::default())
    }

    /// `a <= b` implies `b = a ∨ (b ∧ a')`.
    pub fn check_orthomodular(&self, limit: ScanLimit) -> Result<LawCheck> {
        limit.check(self.len())?;
        let n = self.len();
        let mut counterexample = None;
        'scan: for a in 0..n {
            for b in (0..n).filter(|&b| self.leq(a, b)) {
                let rhs = self.join(a, self.meet(b, self.ortho(a)));
                if rhs != b {
                    counterexample = Some(Counterexample {
                        elements: vec![a, b],
                        lhs: b,
                        rhs,
                    });
                    break 'scan;
                }
            }
        }
        Ok(LawCheck {
            law: Law::Orthomodular,
            counterexample,
        })
    }

    /// All three law checks in the order distributive, modular, orthomodular.
    pub fn check_all(&self, limit: ScanLimit) -> Result<[LawCheck; 3]> {
        Ok([
            self.check_distributive(limit)?,
            self.check_modular(limit)?,
            self.check_orthomodular(limit)?,
        ])
    }
}
