//! Hasse diagrams in Graphviz DOT, drawn bottom to top with one rank per
//! height.

use std::fmt::Write as _;

use crate::space::FiniteSpace;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn to_dot(space: &FiniteSpace) -> String {
    let heights = space.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&space.kind().to_string()));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for h in 0..=top {
        let row: Vec<String> = (0..space.len())
            .filter(|&p| heights[p] == h)
            .map(|p| quote(space.label(p)))
            .collect();
        if !row.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", row.join("; "));
        }
    }
    for (a, b) in space.hasse_edges() {
        let _ = writeln!(out, "  {} -> {};", quote(space.label(a)), quote(space.label(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::circle_model;

    #[test]
    fn circle_diagram() {
        let dot = to_dot(&circle_model(2).unwrap());
        assert!(dot.starts_with("digraph \"circle(2)\" {"));
        assert!(dot.contains("{ rank=same; \"x0\"; \"x1\"; }"));
        assert!(dot.contains("{ rank=same; \"y0\"; \"y1\"; }"));
        assert_eq!(dot.matches("->").count(), 4);
    }
}
