//! Greechie diagrams: atoms plus contexts (blocks), the hypergraph form of a
//! pasting of Boolean algebras.
//!
//! Text format: one context per line, atom names separated by commas, `#`
//! starts a comment. Atoms are numbered in order of first appearance.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::dot::quote;
use crate::lattice::paste::Pasting;
use crate::lattice::OrthoLattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreechieDiagram {
    atoms: Vec<String>,
    contexts: Vec<Vec<usize>>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.trim() == name
        && !name.contains([',', '#', '\n', '\r'])
}

impl GreechieDiagram {
    /// Validates and builds a diagram. Atom indices inside each context are
    /// sorted; context order is kept.
    pub fn new(atoms: Vec<String>, contexts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, name) in atoms.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidDiagram(format!("invalid atom name `{name}`")));
            }
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidDiagram(format!("duplicate atom `{name}`")));
            }
        }
        let mut sorted = Vec::with_capacity(contexts.len());
        for (c, ctx) in contexts.iter().enumerate() {
            let set: BTreeSet<usize> = ctx.iter().copied().collect();
            if set.len() != ctx.len() {
                return Err(Error::InvalidDiagram(format!("context {} repeats an atom", c + 1)));
            }
            if set.len() < 2 {
                return Err(Error::InvalidDiagram(format!(
                    "context {} has fewer than 2 atoms",
                    c + 1
                )));
            }
            if let Some(&bad) = set.iter().find(|&&a| a >= atoms.len()) {
                return Err(Error::InvalidDiagram(format!("atom index {bad} out of range")));
            }
            sorted.push(set);
        }
        for i in 0..sorted.len() {
            for j in 0..sorted.len() {
                if i != j && sorted[i].is_subset(&sorted[j]) {
                    return Err(Error::InvalidDiagram(format!(
                        "context {} is contained in context {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for (a, name) in atoms.iter().enumerate() {
            if !sorted.iter().any(|s| s.contains(&a)) {
                return Err(Error::InvalidDiagram(format!("atom `{name}` lies in no context")));
            }
        }
        Ok(GreechieDiagram {
            atoms,
            contexts: sorted.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Builds a diagram from contexts given by atom name; atoms are numbered
    /// in order of first appearance.
    pub fn from_named_contexts<C, S>(contexts: C) -> Result<Self>
    where
        C: IntoIterator,
        C::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut atoms: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut ctxs = Vec::new();
        for ctx in contexts {
            let mut ids = Vec::new();
            for name in ctx {
                let name = name.as_ref();
                let id = *index.entry(name.to_string()).or_insert_with(|| {
                    atoms.push(name.to_string());
                    atoms.len() - 1
                });
                ids.push(id);
            }
            ctxs.push(ids);
        }
        GreechieDiagram::new(atoms, ctxs)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// Contexts as sorted sets of atom names, sorted; equal for diagrams that
    /// differ only in atom numbering and context order.
    pub fn named_context_set(&self) -> BTreeSet<BTreeSet<String>> {
        self.contexts
            .iter()
            .map(|c| c.iter().map(|&a| self.atoms[a].clone()).collect())
            .collect()
    }

    /// Renames every atom through `rename`, keeping the structure.
    pub fn relabel(&self, rename: impl Fn(&str) -> String) -> Result<Self> {
        let atoms = self.atoms.iter().map(|a| rename(a)).collect();
        GreechieDiagram::new(atoms, self.contexts.clone())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut contexts: Vec<Vec<String>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let names: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
            if names.iter().any(String::is_empty) {
                return Err(Error::parse(i + 1, "empty atom name"));
            }
            contexts.push(names);
        }
        GreechieDiagram::from_named_contexts(contexts).map_err(|e| match e {
            Error::InvalidDiagram(msg) => Error::parse(0, msg),
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ctx in &self.contexts {
            let names: Vec<&str> = ctx.iter().map(|&a| self.atoms[a].as_str()).collect();
            out.push_str(&names.join(","));
            out.push('\n');
        }
        out
    }

    /// DOT rendering: atoms as points, each context drawn as a path through
    /// its atoms.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph greechie {\n  node [shape=circle];\n");
        for (i, name) in self.atoms.iter().enumerate() {
            let _ = writeln!(out, "  a{i} [label={}];", quote(name));
        }
        for (c, ctx) in self.contexts.iter().enumerate() {
            for pair in ctx.windows(2) {
                let _ = writeln!(out, "  a{} -- a{} [label=\"c{}\"];", pair[0], pair[1], c + 1);
            }
        }
        out.push_str("}\n");
        out
    }

    /// Pastes one Boolean block per context, identifying shared atoms (and
    /// hence their complements).
    ///
    /// Contexts sharing more than one atom are rejected. Fails as well when the
    /// pasting is not a lattice, e.g. for loops of order three.
    pub fn to_lattice(&self) -> Result<OrthoLattice> {
        for i in 0..self.contexts.len() {
            for j in i + 1..self.contexts.len() {
                let shared = self.contexts[i].iter().filter(|a| self.contexts[j].contains(a)).count();
                if shared > 1 {
                    return Err(Error::Pasting(format!(
                        "contexts {} and {} share {shared} atoms",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let sizes = self.contexts.iter().map(Vec::len).collect();
        let mut pasting = Pasting::new(sizes)?;
        let bit = |ctx: &[usize], a: usize| 1u64 << ctx.iter().position(|&x| x == a).unwrap();
        for i in 0..self.contexts.len() {
            for j in i + 1..self.contexts.len() {
                for &a in self.contexts[i].iter().filter(|a| self.contexts[j].contains(a)) {
                    pasting.identify(i, bit(&self.contexts[i], a), j, bit(&self.contexts[j], a));
                }
            }
        }
        let pasted = pasting.build(|reps| self.element_label(reps))?;
        let l = pasted.lattice;
        if l.atoms().len() != self.atoms.len() {
            // e.g. two 2-atom contexts sharing one atom force the other two equal
            return Err(Error::InvalidDiagram(format!(
                "pasting identifies atoms: {} atoms become {}",
                self.atoms.len(),
                l.atoms().len()
            )));
        }
        Ok(l)
    }

    fn element_label(&self, reps: &[(usize, u64)]) -> String {
        let names = |b: usize, mask: u64| -> Vec<&str> {
            self.contexts[b]
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| self.atoms[a].as_str())
                .collect()
        };
        let (b0, m0) = reps[0];
        let full = |b: usize| (1u64 << self.contexts[b].len()) - 1;
        if m0 == 0 {
            return "0".into();
        }
        if m0 == full(b0) {
            return "1".into();
        }
        if let Some(&(b, m)) = reps.iter().find(|(_, m)| m.count_ones() == 1) {
            return names(b, m)[0].to_string();
        }
        if let Some(&(b, m)) = reps.iter().find(|&&(b, m)| (full(b) ^ m).count_ones() == 1) {
            return format!("{}'", names(b, full(b) ^ m)[0]);
        }
        format!("{{{}}}", names(b0, m0).join(","))
    }

    /// Re-extracts the diagram of an atomic ortholattice: atoms are the
    /// elements covering 0, contexts the maximal sets of mutually orthogonal
    /// atoms. Each context must join to 1.
    pub fn from_lattice(l: &OrthoLattice) -> Result<Self> {
        GreechieDiagram::from_lattice_named(l, |x| l.label(x).to_string())
    }

    /// As [`GreechieDiagram::from_lattice`], naming each atom by `name`
    /// (given the element index) instead of its label.
    pub fn from_lattice_named(l: &OrthoLattice, name: impl Fn(usize) -> String) -> Result<Self> {
        let atoms = l.atoms();
        let k = atoms.len();
        let adj: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| i != j && l.orthogonal(atoms[i], atoms[j])).collect())
            .collect();
        let cliques = maximal_cliques(&adj);
        for clique in &cliques {
            let join = clique.iter().fold(l.zero(), |acc, &i| l.join(acc, atoms[i]));
            if join != l.one() {
                return Err(Error::InvalidDiagram(format!(
                    "maximal orthogonal set {{{}}} does not join to 1",
                    clique.iter().map(|&i| l.label(atoms[i])).collect::<Vec<_>>().join(",")
                )));
            }
        }
        let names = atoms.iter().map(|&a| name(a)).collect();
        GreechieDiagram::new(names, cliques)
    }
}

/// Maximal cliques of a small undirected graph (Bron–Kerbosch with pivot),
/// each sorted, in lexicographic order.
pub(crate) fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn expand(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut clique = r.clone();
                clique.sort_unstable();
                out.push(clique);
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(x.iter())
            .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
            .unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            expand(adj, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    expand(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, mo, product, two};

    #[test]
    fn validation_rules() {
        assert!(GreechieDiagram::from_named_contexts([["a"]]).is_err());
        assert!(GreechieDiagram::from_named_contexts([vec!["a", "a"]]).is_err());
        assert!(GreechieDiagram::from_named_contexts([vec!["a", "b", "c"], vec!["a", "b"]]).is_err());
        assert!(GreechieDiagram::new(vec!["a".into(), "b".into(), "c".into()], vec![vec![0, 1]]).is_err());
        assert!(GreechieDiagram::new(vec!["a,b".into(), "c".into()], vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn text_format_parses_comments_and_round_trips() {
        let text = "# two spin one-half systems\np-, p+\nq-,q+  # second\n\n";
        let d = GreechieDiagram::parse(text).unwrap();
        assert_eq!(d.atoms(), ["p-", "p+", "q-", "q+"]);
        assert_eq!(d.contexts(), [vec![0, 1], vec![2, 3]]);
        assert_eq!(GreechieDiagram::parse(&d.to_text()).unwrap(), d);
        assert!(GreechieDiagram::parse("a,,b\n").unwrap_err().is_parse_error());
    }

    #[test]
    fn two_disjoint_pairs_paste_to_mo2() {
        let d = GreechieDiagram::from_named_contexts([["p-", "p+"], ["q-", "q+"]]).unwrap();
        let l = d.to_lattice().unwrap();
        assert!(l.is_isomorphic(&mo(2).unwrap()));
    }

    #[test]
    fn single_triad_is_boolean() {
        let d = GreechieDiagram::from_named_contexts([["a", "b", "c"]]).unwrap();
        assert!(d.to_lattice().unwrap().is_isomorphic(&boolean(3)));
    }

    #[test]
    fn triads_sharing_an_atom() {
        // 2 * 8 elements, minus the four shared ones: 0, 1, x and x'
        let d = GreechieDiagram::from_named_contexts([["x", "a", "b"], ["x", "c", "d"]]).unwrap();
        let l = d.to_lattice().unwrap();
        assert_eq!(l.len(), 12);
        assert!(l.is_isomorphic(&product(&two(), &mo(2).unwrap()).unwrap()));
        assert!(l.index_of("x'").is_some());
    }

    #[test]
    fn pairs_sharing_an_atom_are_rejected() {
        let d = GreechieDiagram::from_named_contexts([["a", "b"], ["a", "c"]]).unwrap();
        assert!(matches!(d.to_lattice(), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn contexts_sharing_two_atoms_are_rejected() {
        let d = GreechieDiagram::from_named_contexts([["a", "b", "c"], ["a", "b", "d"]]).unwrap();
        assert!(matches!(d.to_lattice(), Err(Error::Pasting(_))));
    }

    #[test]
    fn triangle_of_triads_is_not_a_lattice() {
        let d = GreechieDiagram::from_named_contexts([
            ["a", "x", "b"],
            ["b", "y", "c"],
            ["c", "z", "a"],
        ])
        .unwrap();
        assert!(d.to_lattice().is_err());
    }

    #[test]
    fn extraction_recovers_the_diagram() {
        let d = GreechieDiagram::from_named_contexts([["x", "a", "b"], ["x", "c", "d"]]).unwrap();
        let back = GreechieDiagram::from_lattice(&d.to_lattice().unwrap()).unwrap();
        assert_eq!(back.named_context_set(), d.named_context_set());

        let m = GreechieDiagram::from_lattice(&mo(3).unwrap()).unwrap();
        assert_eq!(m.contexts().len(), 3);
        assert!(m.contexts().iter().all(|c| c.len() == 2));
    }

    #[test]
    fn dot_lists_every_atom() {
        let d = GreechieDiagram::from_named_contexts([["a", "b", "c"]]).unwrap();
        let dot = d.to_dot();
        assert_eq!(dot.matches("[label=\"c1\"]").count(), 2);
        assert!(dot.starts_with("graph greechie"));
    }

    #[test]
    fn cliques_of_a_square() {
        let adj = vec![
            vec![false, true, false, true],
            vec![true, false, true, false],
            vec![false, true, false, true],
            vec![true, false, true, false],
        ];
        assert_eq!(maximal_cliques(&adj), vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
    }
}
