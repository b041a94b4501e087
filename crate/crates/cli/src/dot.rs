//! DOT rendering of Hasse diagrams: one node per lattice element, one
//! directed edge per cover relation, in deterministic index order.

use std::fmt::Write;

use matroid_adjoint::lattice::Poset;

pub fn export_dot(poset: &Poset, graph_name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {graph_name} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for i in 0..poset.len() {
        writeln!(out, "  n{i} [label=\"{}\"];", poset.label(i)).unwrap();
    }
    for (lower, upper) in poset.cover_pairs() {
        writeln!(out, "  n{lower} -> n{upper};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
