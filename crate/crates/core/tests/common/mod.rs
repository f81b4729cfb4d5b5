//! Independent oracles shared by the integration suites. Nothing here calls
//! the library routine it is compared against.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Rational64;
use sethom::casesolver::Label;
use sethom::edges::KHypergraph;
use sethom::treelike::{CircleDoc, UnrootedDoc, UnrootedLeafTree};

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).expect("fixture readable")
}

pub fn sextet_pair() -> (UnrootedLeafTree, UnrootedLeafTree) {
    let v: serde_json::Value = serde_json::from_str(&fixture("sextet_pair.json")).unwrap();
    let tree = |key: &str| {
        let doc: UnrootedDoc = serde_json::from_value(v[key].clone()).unwrap();
        UnrootedLeafTree::from_doc(&doc).unwrap()
    };
    (tree("caterpillar"), tree("snowflake"))
}

/// Labels realized by `P^i_J`, read off an explicit `(k+1)`-set whose edges
/// are the subsets omitting each index outside `J`.
pub fn realized_oracle(i: usize, j: &[usize], k: usize) -> BTreeSet<Label> {
    assert_eq!(j.len(), k + 1 - i);
    let omitted_is_edge = |m: usize| !j.contains(&m);
    let mut out = BTreeSet::new();
    for a in 1..=k + 1 {
        for b in 1..=k + 1 {
            if a.abs_diff(b) >= 2 && omitted_is_edge(a) && !omitted_is_edge(b) {
                out.insert(Label::S(a, b));
            }
        }
    }
    for m in 1..=k {
        if omitted_is_edge(m) != omitted_is_edge(m + 1) {
            out.insert(Label::T(m));
        }
    }
    out
}

/// Exact rational from `"p/q"` or `"p"`.
pub fn rational(s: &str) -> Rational64 {
    match s.split_once('/') {
        Some((p, q)) => Rational64::new(p.trim().parse().unwrap(), q.trim().parse().unwrap()),
        None => Rational64::from_integer(s.trim().parse().unwrap()),
    }
}

/// A triple of circle points lies in an open half circle iff some gap
/// between cyclically consecutive points exceeds one half.
pub fn half_circle_oracle(doc: &CircleDoc, t: [usize; 3]) -> bool {
    let mut p: Vec<Rational64> = t.iter().map(|&i| rational(&doc.positions[i])).collect();
    p.sort();
    let one = Rational64::from_integer(1);
    let half = Rational64::new(1, 2);
    let gaps = [p[1] - p[0], p[2] - p[1], one - p[2] + p[0]];
    gaps.iter().any(|g| *g > half)
}

/// Some bijection maps the edges of `a` onto those of `b` (all `n!` maps).
pub fn brute_isomorphic(a: &KHypergraph, b: &KHypergraph) -> bool {
    if a.n() != b.n() || a.k() != b.k() || a.edge_count() != b.edge_count() {
        return false;
    }
    let ea = a.sorted_edges();
    (0..a.n()).permutations(a.n()).any(|p| ea.iter().all(|e| b.contains(&e.iter().map(|&x| p[x]).collect::<Vec<_>>())))
}

/// Edges of an `M3` fragment on an increasing 4-set: one edge sits on the
/// three smallest points, two edges both contain the two largest, three
/// edges miss the one omitting the smallest.
pub fn m3_quad_oracle(h: &KHypergraph, q: [usize; 4]) -> (usize, bool) {
    let present: Vec<[usize; 3]> = q.iter().copied().combinations(3).map(|c| [c[0], c[1], c[2]]).filter(|c| h.contains(c)).collect();
    let ok = match present.len() {
        1 => present[0] == [q[0], q[1], q[2]],
        2 => present.iter().all(|e| e.contains(&q[2]) && e.contains(&q[3])),
        3 => !present.contains(&[q[1], q[2], q[3]]),
        _ => true,
    };
    (present.len(), ok)
}

/// Size of the common intersection of the edges inside `s`, when any.
pub fn intersection_defect(h: &KHypergraph, s: &[usize]) -> Option<(usize, usize)> {
    let edges: Vec<Vec<usize>> =
        s.iter().copied().combinations(h.k()).filter(|e| h.contains(e)).collect();
    if edges.is_empty() {
        return None;
    }
    let common = s.iter().filter(|v| edges.iter().all(|e| e.contains(v))).count();
    Some((edges.len(), common))
}
