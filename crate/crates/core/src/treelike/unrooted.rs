use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::rooted::{LeafTree, Shape};
use crate::error::{Error, Result};
use crate::relstruct::QuaternaryRel;

/// Largest node count supported (path sets are stored as `u128` masks).
pub const MAX_UNROOTED_NODES: usize = 128;

/// An unrooted tree. Nodes `0..n` are the leaves, internal nodes follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrootedLeafTree {
    n: usize,
    adj: Vec<Vec<usize>>,
    paths: Vec<u128>,
}

/// Edge-list JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnrootedDoc {
    pub leaves: usize,
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
}

impl UnrootedLeafTree {
    /// Builds and validates a tree on `nodes` nodes whose first `leaves`
    /// nodes are the leaves.
    pub fn from_edges(leaves: usize, nodes: usize, edges: &[[usize; 2]]) -> Result<Self> {
        if leaves == 0 || nodes < leaves {
            return Err(Error::TreeSpec("tree needs at least one leaf".into()));
        }
        if nodes > MAX_UNROOTED_NODES {
            return Err(Error::SizeCap { what: "unrooted tree", size: nodes, cap: MAX_UNROOTED_NODES });
        }
        if edges.len() + 1 != nodes {
            return Err(Error::TreeSpec(format!("{} edges cannot span a tree on {nodes} nodes", edges.len())));
        }
        let mut adj = vec![Vec::new(); nodes];
        for &[a, b] in edges {
            if a >= nodes || b >= nodes || a == b {
                return Err(Error::TreeSpec(format!("bad edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::TreeSpec("edge list is not connected".into()));
        }
        for (v, list) in adj.iter().enumerate() {
            let ok = if v < leaves { list.len() <= 1 } else { list.len() >= 3 };
            if !ok {
                return Err(Error::TreeSpec(format!("node {v} has degree {}", list.len())));
            }
        }
        let mut t = UnrootedLeafTree { n: leaves, adj, paths: Vec::new() };
        t.paths = t.compute_paths();
        Ok(t)
    }

    fn compute_paths(&self) -> Vec<u128> {
        let n = self.n;
        let mut paths = vec![0u128; n * n];
        for a in 0..n {
            let parent = self.bfs_parents(a);
            for b in 0..n {
                let mut mask = 0u128;
                let mut v = b;
                loop {
                    mask |= 1u128 << v;
                    if v == a {
                        break;
                    }
                    v = parent[v];
                }
                paths[a * n + b] = mask;
            }
        }
        paths
    }

    fn bfs_parents(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// The unrooted version of a rooted tree: a root with two children is
    /// suppressed. With `extra_leaf`, a new leaf (label `n`) is attached to
    /// the root instead.
    pub fn from_rooted(t: &LeafTree, extra_leaf: bool) -> Result<Self> {
        let m = t.n_leaves();
        let total_leaves = m + usize::from(extra_leaf);
        let mut id = vec![usize::MAX; t.node_count()];
        let mut next = total_leaves;
        for v in 0..t.node_count() {
            id[v] = match t.node_leaf(v) {
                Some(l) => l,
                None => {
                    next += 1;
                    next - 1
                }
            };
        }
        let mut edges = Vec::new();
        let root = t.root();
        let suppress = !extra_leaf && t.children(root).len() == 2;
        for v in 0..t.node_count() {
            if let Some(p) = t.parent(v) {
                if !(suppress && p == root) {
                    edges.push([id[p], id[v]]);
                }
            }
        }
        let mut nodes = next;
        if suppress {
            let ch = t.children(root);
            edges.push([id[ch[0]], id[ch[1]]]);
            // drop the root's id by renumbering the internal nodes above it
            let r = id[root];
            nodes -= 1;
            for e in edges.iter_mut() {
                for x in e.iter_mut() {
                    if *x > r {
                        *x -= 1;
                    }
                }
            }
        }
        if extra_leaf {
            edges.push([m, id[root]]);
        }
        Self::from_edges(total_leaves, nodes, &edges)
    }

    pub fn n_leaves(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degrees of the internal nodes.
    pub fn internal_degrees(&self) -> Vec<usize> {
        (self.n..self.node_count()).map(|v| self.degree(v)).collect()
    }

    pub fn max_internal_degree(&self) -> usize {
        self.internal_degrees().into_iter().max().unwrap_or(0)
    }

    /// Node set of the path between two leaves.
    pub fn path(&self, a: usize, b: usize) -> u128 {
        self.paths[a * self.n + b]
    }

    /// The rooted tree obtained by deleting leaf `a` and rooting at its
    /// neighbour. Returns the tree and the original label of each of its
    /// leaves (in planar order).
    pub fn rooted_at_leaf(&self, a: usize) -> Result<(LeafTree, Vec<usize>)> {
        if a >= self.n {
            return Err(Error::OutOfRange { vertex: a, n: self.n });
        }
        if self.n < 2 {
            return Err(Error::TreeSpec("cannot root a one-leaf tree at a neighbour".into()));
        }
        let p = self.adj[a][0];
        let shape = self.shape_from(p, a);
        let tree = LeafTree::from_shape(&shape)?;
        let origin = tree.names().iter().map(|s| s.parse().expect("numeric leaf name")).collect();
        Ok((tree, origin))
    }

    fn shape_from(&self, v: usize, from: usize) -> Shape {
        if v < self.n {
            return Shape::Leaf(v.to_string());
        }
        Shape::Node(
            self.adj[v]
                .iter()
                .filter(|&&w| w != from)
                .map(|&w| self.shape_from(w, v))
                .collect(),
        )
    }

    pub fn to_doc(&self) -> UnrootedDoc {
        let mut edges = Vec::new();
        for (v, list) in self.adj.iter().enumerate() {
            for &w in list {
                if v < w {
                    edges.push([v, w]);
                }
            }
        }
        UnrootedDoc { leaves: self.n, nodes: self.node_count(), edges }
    }

    pub fn from_doc(doc: &UnrootedDoc) -> Result<Self> {
        Self::from_edges(doc.leaves, doc.nodes, &doc.edges)
    }
}

/// `D(x,y;z,w)` holds iff the leaf paths `x–y` and `z–w` are vertex-disjoint
/// (the path from a leaf to itself is that leaf).
pub fn d_of_leaves(t: &UnrootedLeafTree) -> QuaternaryRel {
    QuaternaryRel::from_fn(t.n_leaves(), |[x, y, z, w]| t.path(x, y) & t.path(z, w) == 0)
}
