//! GraphViz DOT output for triangulations and their dual trees.
//!
//! The polygon layout pins every vertex to a circle, so `neato` reproduces
//! the usual convex drawing. Output is byte-for-byte deterministic.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::construct::{DualNode, DualTree};
use crate::triangulation::Triangulation;

/// DOT source drawing `t` as a convex polygon with its diagonals.
///
/// Boundary sides are drawn bold, diagonals dashed. Positions are pinned,
/// so render with `neato -n` semantics (`dot -Kneato` also works).
pub fn triangulation_dot(t: &Triangulation) -> String {
    let n = t.n();
    let radius = (n as f64 * 0.25).max(1.5);
    let mut out = String::from("graph triangulation {\n");
    out.push_str("  layout=neato;\n");
    out.push_str("  node [shape=circle fixedsize=true width=0.35];\n");
    for v in 0..n {
        let angle = TAU * v as f64 / n as f64;
        let x = radius * angle.cos();
        let y = radius * angle.sin();
        writeln!(out, "  v{v} [pos=\"{x:.4},{y:.4}!\"];").expect("write to string");
    }
    if n == 2 {
        out.push_str("  v0 -- v1 [penwidth=2];\n");
    } else {
        for v in 0..n {
            writeln!(out, "  v{} -- v{} [penwidth=2];", v, (v + 1) % n).expect("write to string");
        }
    }
    for &(a, b) in t.diagonals() {
        writeln!(out, "  v{a} -- v{b} [style=dashed];").expect("write to string");
    }
    out.push_str("}\n");
    out
}

/// DOT source drawing the dual tree: one circle per face, labeled by its
/// vertex triple, and one point per polygon side.
pub fn dual_tree_dot(tree: &DualTree) -> String {
    let mut out = String::from("graph dual {\n");
    out.push_str("  node [shape=circle];\n");
    for (i, face) in tree.faces().iter().enumerate() {
        let [a, b, c] = face.vertices;
        writeln!(out, "  f{i} [label=\"{a},{b},{c}\"];").expect("write to string");
    }
    for i in 0..tree.internal_count() {
        for side in tree.neighbors(i) {
            if let DualNode::Leaf(k) = side {
                writeln!(out, "  s{k} [shape=point];").expect("write to string");
            }
        }
    }
    for i in 0..tree.internal_count() {
        for neighbor in tree.neighbors(i) {
            match neighbor {
                DualNode::Face(j) if j > i => {
                    writeln!(out, "  f{i} -- f{j};").expect("write to string");
                }
                DualNode::Face(_) => {}
                DualNode::Leaf(k) => {
                    writeln!(out, "  f{i} -- s{k};").expect("write to string");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::dual_tree;

    #[test]
    fn square_dot_is_stable() {
        let t = Triangulation::new(4, vec![(1, 3)]).unwrap();
        let text = triangulation_dot(&t);
        assert!(text.starts_with("graph triangulation {\n"));
        assert!(text.contains("v0 [pos=\"1.5000,0.0000!\"];"));
        assert!(text.contains("v1 [pos=\"0.0000,1.5000!\"];"));
        assert!(text.contains("v0 -- v1 [penwidth=2];"));
        assert!(text.contains("v1 -- v3 [style=dashed];"));
        assert!(text.ends_with("}\n"));
        assert_eq!(text, triangulation_dot(&t));
    }

    #[test]
    fn degenerate_dot_has_single_edge() {
        let text = triangulation_dot(&Triangulation::degenerate());
        assert_eq!(text.matches(" -- ").count(), 1);
    }

    #[test]
    fn dual_dot_lists_faces_and_sides() {
        let t = Triangulation::new(4, vec![(1, 3)]).unwrap();
        let tree = dual_tree(&t).unwrap();
        let text = dual_tree_dot(&tree);
        assert!(text.contains("f0 [label=\"0,1,3\"];"));
        assert!(text.contains("f1 [label=\"1,2,3\"];"));
        assert!(text.contains("f0 -- f1;"));
        assert_eq!(text.matches("shape=point").count(), 4);
        assert_eq!(text.matches(" -- ").count(), 5);
    }
}
