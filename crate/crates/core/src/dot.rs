//! Graphviz export of the pipeline stages.
//!
//! Output is deterministic: graph vertices in block order, edges sorted,
//! tree vertices numbered in canonical preorder. Isomorphic trees therefore
//! render byte-identically.

use std::fmt::Write as _;

use crate::canonical::canonical_preorder;
use crate::decoration::DecoratedGraph;
use crate::tree::Tree;

pub fn graph_to_dot(g: &DecoratedGraph) -> String {
    let mut out = String::from("digraph decorated {\n");
    for &v in g.vertices() {
        let _ = writeln!(out, "  x{v} [label=\"X{v} {}\"];", g.ty(v).token());
    }
    let mut edges = g.edges().to_vec();
    edges.sort_unstable();
    for (s, t) in edges {
        let _ = writeln!(out, "  x{s} -> x{t};");
    }
    for &v in g.vertices() {
        for _ in 0..g.loop_count(v) {
            let _ = writeln!(out, "  x{v} -> x{v};");
        }
    }
    out.push_str("}\n");
    out
}

pub fn tree_to_dot(t: &Tree) -> String {
    let order = canonical_preorder(t);
    let mut index = vec![usize::MAX; t.id_bound()];
    for (i, v) in order.iter().enumerate() {
        index[v.0] = i;
    }
    let mut out = String::from("digraph tree {\n");
    for (i, &v) in order.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", t.ty(v).token());
    }
    for &v in &order[1..] {
        let p = t.parent(v).expect("non-root");
        let _ = writeln!(out, "  n{} -> n{};", index[p.0], index[v.0]);
    }
    out.push_str("}\n");
    out
}
