use serde::{Deserialize, Serialize};

use super::rooted::LeafTree;
use super::unrooted::UnrootedLeafTree;
use crate::error::{Error, Result};

/// Shape of the subtree spanned by four or six leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Topology {
    /// Resolved quartet `pairs[0] | pairs[1]`.
    Split { pairs: [[usize; 2]; 2] },
    /// Unresolved quartet.
    Star { leaves: [usize; 4] },
    /// Six leaves whose four branch nodes form a path; `ends` are the leaf
    /// pairs at the two end nodes, `middle` the single leaves along the path.
    Caterpillar { ends: [[usize; 2]; 2], middle: [usize; 2] },
    /// Six leaves whose branch nodes form a star: three cherries around a centre.
    Snowflake { cherries: [[usize; 2]; 3] },
    Other { leaves: Vec<usize> },
}

impl Topology {
    pub fn is_split(&self) -> bool {
        matches!(self, Topology::Split { .. })
    }

    pub fn is_caterpillar(&self) -> bool {
        matches!(self, Topology::Caterpillar { .. })
    }
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Classifies the subtree induced by a 4- or 6-set of leaves.
pub fn induced_topology(t: &UnrootedLeafTree, leaves: &[usize]) -> Result<Topology> {
    let n = t.n_leaves();
    for (i, &l) in leaves.iter().enumerate() {
        if l >= n {
            return Err(Error::OutOfRange { vertex: l, n });
        }
        if leaves[..i].contains(&l) {
            return Err(Error::InvalidInput(format!("leaf {l} repeated")));
        }
    }
    match leaves.len() {
        4 => Ok(quartet(t, [leaves[0], leaves[1], leaves[2], leaves[3]])),
        6 => Ok(sextet(t, leaves)),
        k => Err(Error::InvalidInput(format!("topology needs 4 or 6 leaves, got {k}"))),
    }
}

fn quartet(t: &UnrootedLeafTree, q: [usize; 4]) -> Topology {
    let [a, b, c, d] = q;
    for (x, y, z, w) in [(a, b, c, d), (a, c, b, d), (a, d, b, c)] {
        if t.path(x, y) & t.path(z, w) == 0 {
            let mut pairs = [sorted2(x, y), sorted2(z, w)];
            pairs.sort();
            return Topology::Split { pairs };
        }
    }
    let mut leaves = q;
    leaves.sort();
    Topology::Star { leaves }
}

fn sextet(t: &UnrootedLeafTree, leaves: &[usize]) -> Topology {
    let mut span = 0u128;
    for &a in leaves {
        for &b in leaves {
            span |= t.path(a, b);
        }
    }
    let in_span = |v: usize| span >> v & 1 == 1;
    let span_degree = |v: usize| t.neighbors(v).iter().filter(|&&w| in_span(w)).count();
    let branch: Vec<usize> = (0..t.node_count()).filter(|&v| in_span(v) && span_degree(v) >= 3).collect();
    let other = || {
        let mut l = leaves.to_vec();
        l.sort();
        Topology::Other { leaves: l }
    };
    if branch.len() != 4 || branch.iter().any(|&v| span_degree(v) != 3) {
        return other();
    }
    let is_key = |v: usize| leaves.contains(&v) || branch.contains(&v);
    // suppressed neighbours of each branch node: leaves and branch nodes
    let reach = |start: usize| -> Vec<usize> {
        let mut out = Vec::new();
        for &first in t.neighbors(start) {
            if !in_span(first) {
                continue;
            }
            let (mut prev, mut cur) = (start, first);
            while !is_key(cur) {
                let next = *t
                    .neighbors(cur)
                    .iter()
                    .find(|&&w| w != prev && in_span(w))
                    .expect("degree-2 span node continues");
                prev = cur;
                cur = next;
            }
            out.push(cur);
        }
        out
    };
    let nbrs: Vec<Vec<usize>> = branch.iter().map(|&v| reach(v)).collect();
    let leaf_nbrs = |i: usize| -> Vec<usize> { nbrs[i].iter().copied().filter(|v| leaves.contains(v)).collect() };
    let inner_deg: Vec<usize> = (0..4).map(|i| nbrs[i].iter().filter(|v| branch.contains(v)).count()).collect();
    let mut degs = inner_deg.clone();
    degs.sort();
    match degs.as_slice() {
        [1, 1, 2, 2] => {
            let ends: Vec<usize> = (0..4).filter(|&i| inner_deg[i] == 1).collect();
            let start = ends[0];
            // walk the path of branch nodes from one end
            let mut order = vec![start];
            while order.len() < 4 {
                let last = *order.last().unwrap();
                let next = nbrs[last]
                    .iter()
                    .filter_map(|v| branch.iter().position(|b| b == v))
                    .find(|i| !order.contains(i))
                    .expect("path continues");
                order.push(next);
            }
            let e0 = leaf_nbrs(order[0]);
            let e1 = leaf_nbrs(order[3]);
            let m0 = leaf_nbrs(order[1]);
            let m1 = leaf_nbrs(order[2]);
            let mut ends = [sorted2(e0[0], e0[1]), sorted2(e1[0], e1[1])];
            let mut middle = [m0[0], m1[0]];
            if ends[1] < ends[0] {
                ends.swap(0, 1);
                middle.swap(0, 1);
            }
            Topology::Caterpillar { ends, middle }
        }
        [1, 1, 1, 3] => {
            let mut cherries: Vec<[usize; 2]> = (0..4)
                .filter(|&i| inner_deg[i] == 1)
                .map(|i| {
                    let l = leaf_nbrs(i);
                    sorted2(l[0], l[1])
                })
                .collect();
            cherries.sort();
            Topology::Snowflake { cherries: [cherries[0], cherries[1], cherries[2]] }
        }
        _ => other(),
    }
}

/// Shape of a rooted quartet, read off the partition of the four leaves by
/// the child of their lowest common ancestor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuartetShape {
    TwoCherries { pairs: [[usize; 2]; 2] },
    Other { blocks: Vec<Vec<usize>> },
}

pub fn rooted_quartet_shape(t: &LeafTree, q: [usize; 4]) -> QuartetShape {
    let mut top = t.meet(q[0], q[1]);
    for &l in &q[2..] {
        while !t.is_ancestor(top, t.leaf_node(l)) {
            top = t.parent(top).expect("root is a common ancestor");
        }
    }
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    for &l in &q {
        let c = t.child_towards(top, l);
        match blocks.iter_mut().find(|(id, _)| *id == c) {
            Some((_, b)) => b.push(l),
            None => blocks.push((c, vec![l])),
        }
    }
    let mut blocks: Vec<Vec<usize>> = blocks
        .into_iter()
        .map(|(_, mut b)| {
            b.sort();
            b
        })
        .collect();
    blocks.sort();
    if blocks.len() == 2 && blocks[0].len() == 2 {
        QuartetShape::TwoCherries { pairs: [[blocks[0][0], blocks[0][1]], [blocks[1][0], blocks[1][1]]] }
    } else {
        QuartetShape::Other { blocks }
    }
}
