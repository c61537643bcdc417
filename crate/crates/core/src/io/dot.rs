use std::fmt::Write;

use crate::graph::GitGraph;

fn white(end: usize, i: usize) -> String {
    format!("w{end}_{i}")
}

/// Edges in a fixed order: the main chain, then each branch in end order,
/// start to end.
pub fn edges(g: &GitGraph) -> Vec<(String, String)> {
    let mut out = Vec::with_capacity(g.size());
    for i in 1..g.k() {
        out.push((format!("m{i}"), format!("m{}", i + 1)));
    }
    let mut branches = g.branches().to_vec();
    branches.sort_unstable_by_key(|b| b.end);
    for b in &branches {
        let mut prev = format!("m{}", b.start);
        for i in 1..=b.length {
            let w = white(b.end, i);
            out.push((prev, w.clone()));
            prev = w;
        }
        out.push((prev, format!("m{}", b.end)));
    }
    out
}

/// One edge per line, `source target`.
pub fn serialize_edges(g: &GitGraph) -> String {
    let mut s = String::new();
    for (a, b) in edges(g) {
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}

/// Graphviz rendering, main vertices filled, drawn left to right.
pub fn serialize_dot(g: &GitGraph) -> String {
    let mut s = String::from("digraph gitgraph {\n  rankdir=LR;\n");
    for i in 1..=g.k() {
        writeln!(
            s,
            "  m{i} [style=filled, fillcolor=black, fontcolor=white];"
        )
        .unwrap();
    }
    let mut branches = g.branches().to_vec();
    branches.sort_unstable_by_key(|b| b.end);
    for b in &branches {
        for i in 1..=b.length {
            writeln!(s, "  {} [style=solid];", white(b.end, i)).unwrap();
        }
    }
    for (a, b) in edges(g) {
        writeln!(s, "  {a} -> {b};").unwrap();
    }
    s.push_str("}\n");
    s
}
