//! Graphviz output for frames, L-orders and open-set lattices.

use std::fmt::Write;

use crate::frame::Frame;
use crate::lorder::{leq_raw, render_values};
use crate::lorder::LOrderedSet;
use crate::ltop::LTopology;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn graph(name: &str, labels: &[String], edges: &[(usize, usize, Option<String>, bool)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(l)).unwrap();
    }
    for (a, b, label, dashed) in edges {
        let mut attrs = Vec::new();
        if let Some(l) = label {
            attrs.push(format!("label={}", quote(l)));
        }
        if *dashed {
            attrs.push("style=dashed".to_string());
        }
        if attrs.is_empty() {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        } else {
            writeln!(out, "  n{a} -> n{b} [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Covering pairs of the preorder `leq` on `0..n`.
fn hasse(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && leq(a, b);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// The Hasse diagram of a frame.
pub fn frame_dot(f: &Frame) -> String {
    let edges: Vec<_> = f.covers().iter().map(|&(a, b)| (a.index(), b.index(), None, false)).collect();
    graph(f.name(), f.names(), &edges)
}

/// The `⊤`-part of `e` as a Hasse diagram, plus one dashed edge per pair
/// `x ≠ y` with `e(x,y) ≠ ⊤`, labelled by its value.
pub fn lorder_dot(name: &str, p: &LOrderedSet) -> String {
    let f = p.frame();
    let n = p.len();
    let top = f.top();
    let mut edges: Vec<_> = hasse(n, |x, y| p.e(x, y) == top)
        .into_iter()
        .map(|(x, y)| (x, y, Some(f.name_of(top).to_string()), false))
        .collect();
    for x in 0..n {
        for y in 0..n {
            if x != y && p.e(x, y) != top {
                edges.push((x, y, Some(f.name_of(p.e(x, y)).to_string()), true));
            }
        }
    }
    graph(name, p.carrier().names(), &edges)
}

/// The lattice of opens ordered by inclusion, which is the `⊤`-part of `sub`.
pub fn open_lattice_dot(name: &str, t: &LTopology) -> String {
    let f = t.frame();
    let opens = t.raw_opens();
    let labels: Vec<String> = opens.iter().map(|o| render_values(f, o)).collect();
    let edges: Vec<_> = hasse(opens.len(), |i, j| leq_raw(f, &opens[i], &opens[j]))
        .into_iter()
        .map(|(i, j)| (i, j, None, false))
        .collect();
    graph(name, &labels, &edges)
}
