use serde::{Deserialize, Serialize};

use super::iso::{automorphism_group, RelKind, StructuredSet};
use crate::edges::KHypergraph;
use crate::error::Result;
use crate::groups::Permutation;
use crate::relstruct::TernaryRel;
use crate::subset::{full_mask, k_subsets, mask_of, vertices_of};
use crate::treelike::LeafTree;

/// `(k+1)`-subsets whose `i > 0` edges do not meet in exactly `k+1−i` vertices.
pub fn edge_intersection_violations(h: &KHypergraph) -> Vec<u64> {
    let k = h.k();
    k_subsets(h.n(), k + 1)
        .filter(|&s| {
            let edges = h.edges_inside(s);
            if edges.is_empty() {
                return false;
            }
            let common = edges.iter().fold(s, |acc, &e| acc & e);
            common.count_ones() as usize != k + 1 - edges.len()
        })
        .collect()
}

/// How the edges of an increasing 4-set `a<b<c<d` sit in an `M3` hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPattern {
    pub edges: usize,
    pub matches: bool,
}

/// Checks the edge placement on `quad` (sorted): one edge is `abc`; two
/// edges both contain `c,d`; three edges miss exactly the one omitting `a`.
pub fn m3_quad_pattern(h: &KHypergraph, quad: [usize; 4]) -> QuadPattern {
    let [a, b, c, d] = quad;
    let e = |x: usize, y: usize, z: usize| h.contains_mask(mask_of(&[x, y, z]));
    let list = [e(a, b, c), e(a, b, d), e(a, c, d), e(b, c, d)];
    let edges = list.iter().filter(|&&x| x).count();
    let matches = match edges {
        1 => list[0],
        2 => list[2] && list[3],
        3 => !list[3],
        _ => true,
    };
    QuadPattern { edges, matches }
}

/// Ordered partitions `(P, Q)` of `u` with `|P|, |Q| ≥ 2` such that every
/// `p ∈ P` with distinct `q, q′ ∈ Q` is an edge and no `q ∈ Q` with
/// distinct `p, p′ ∈ P` is.
pub fn star_partitions(h: &KHypergraph, u: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = u.len();
    let mut out = Vec::new();
    if !(4..=20).contains(&m) {
        return out;
    }
    for bits in 1..full_mask(m) {
        let p: Vec<usize> = vertices_of(bits).into_iter().map(|i| u[i]).collect();
        let q: Vec<usize> = vertices_of(full_mask(m) & !bits).into_iter().map(|i| u[i]).collect();
        if p.len() < 2 || q.len() < 2 {
            continue;
        }
        let e = |x: usize, y: usize, z: usize| h.contains_mask(mask_of(&[x, y, z]));
        let ok = p.iter().all(|&x| q.iter().enumerate().all(|(i, &y)| q[i + 1..].iter().all(|&z| e(x, y, z))))
            && q.iter().all(|&x| p.iter().enumerate().all(|(i, &y)| p[i + 1..].iter().all(|&z| !e(x, y, z))));
        if ok {
            out.push((p, q));
        }
    }
    out
}

/// The two cones at the top of the subtree spanned by `u` (leaf labels), when
/// that split is binary.
pub fn root_split(t: &LeafTree, u: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let first = *u.first()?;
    let top = u.iter().skip(1).map(|&x| t.meet(first, x)).min_by_key(|&v| t.depth(v))?;
    let mut sides: Vec<(usize, Vec<usize>)> = Vec::new();
    for &x in u {
        let c = t.child_towards(top, x);
        match sides.iter_mut().find(|(k, _)| *k == c) {
            Some((_, v)) => v.push(x),
            None => sides.push((c, vec![x])),
        }
    }
    if sides.len() != 2 {
        return None;
    }
    let mut a = sides.swap_remove(0).1;
    let mut b = sides.swap_remove(0).1;
    a.sort_unstable();
    b.sort_unstable();
    if a[0] > b[0] {
        std::mem::swap(&mut a, &mut b);
    }
    Some((a, b))
}

/// An ordering `w₁,…,w_m` of `w` with `C(wᵢ;wⱼ,wₗ)` whenever `i<j<l`.
pub fn chain_ordering(c: &TernaryRel, w: &[usize]) -> Option<Vec<usize>> {
    fn go(c: &TernaryRel, rest: &mut Vec<usize>, acc: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for i in 0..rest.len() {
            let x = rest[i];
            let others: Vec<usize> = rest.iter().copied().filter(|&y| y != x).collect();
            let top = others.iter().enumerate().all(|(j, &y)| others[j + 1..].iter().all(|&z| c.holds([x, y, z])));
            if top {
                rest.remove(i);
                acc.push(x);
                if go(c, rest, acc) {
                    return true;
                }
                acc.pop();
                rest.insert(i, x);
            }
        }
        false
    }
    let mut rest = w.to_vec();
    let mut acc = Vec::new();
    go(c, &mut rest, &mut acc).then_some(acc)
}

/// Vertex sets of size at least `min` spanning no edge.
pub fn null_subsets(h: &KHypergraph, min: usize) -> Vec<Vec<usize>> {
    (0..=full_mask(h.n()))
        .filter(|m| m.count_ones() as usize >= min && h.edges_within(*m) == 0)
        .map(vertices_of)
        .collect()
}

/// First automorphism of `s` (for the relations `respect`) that moves some
/// edge of `h` off the edge set.
pub fn automorphism_breaking_edges(s: &StructuredSet, respect: &[RelKind], h: &KHypergraph) -> Result<Option<Permutation>> {
    let g = automorphism_group(s, respect)?;
    Ok(g.elements().iter().find(|p| h.edge_masks().any(|m| !h.contains_mask(p.apply_mask(m)))).cloned())
}
