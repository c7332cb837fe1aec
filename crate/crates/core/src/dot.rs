//! Graphviz DOT export for quivers and AR quivers.

use std::fmt::Write as _;

use crate::ar::ArQuiver;
use crate::quiver::Quiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices in index order, one edge per arrow labelled by its name.
pub fn quiver_dot(q: &Quiver, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for v in q.vertex_names() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(q.vertex_name(a.source)),
            quote(q.vertex_name(a.target)),
            quote(&a.name)
        );
    }
    out.push_str("}\n");
    out
}

/// Nodes `m<i>` labelled by composition diagrams (layers on separate lines),
/// irreducible maps as solid edges with multiplicities, `τ` as dashed edges.
pub fn ar_quiver_dot(ar: &ArQuiver, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for (i, v) in ar.vertices.iter().enumerate() {
        let label = v.label.replace(" / ", "\n").replace('/', "\n");
        let mut attrs = format!("label={}", quote(&label));
        if v.projective {
            attrs.push_str(", shape=box");
        }
        if v.injective && !v.projective {
            attrs.push_str(", shape=ellipse, peripheries=2");
        }
        let _ = writeln!(out, "  m{i} [{attrs}];");
    }
    for (&(a, b), &k) in &ar.arrows {
        if k == 1 {
            let _ = writeln!(out, "  m{a} -> m{b};");
        } else {
            let _ = writeln!(out, "  m{a} -> m{b} [label=\"{k}\"];");
        }
    }
    for (t, tau) in ar.tau.iter().enumerate() {
        if let Some(s) = tau {
            let _ = writeln!(out, "  m{t} -> m{s} [style=dashed, constraint=false];");
        }
    }
    out.push_str("}\n");
    out
}
