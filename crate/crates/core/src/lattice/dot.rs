use std::fmt::Write;

use super::Lattice;

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Lattice {
    /// Hasse diagram in Graphviz DOT: covering edges only, drawn bottom-up.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
        for x in 0..self.len() {
            let _ = writeln!(out, "  n{x} [label={}];", quote(self.label(x)));
        }
        for (x, y) in self.hasse_edges() {
            let _ = writeln!(out, "  n{x} -> n{y} [arrowhead=none];");
        }
        out.push_str("}\n");
        out
    }
}
