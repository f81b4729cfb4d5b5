use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::relstruct::{FinOrder, TernaryRel};

/// Nested-list description of a rooted planar tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf(String),
    Node(Vec<Shape>),
}

impl Shape {
    pub fn leaf(name: impl Into<String>) -> Self {
        Shape::Leaf(name.into())
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Shape::Leaf(_) => 1,
            Shape::Node(ch) => ch.iter().map(Shape::leaf_count).sum(),
        }
    }
}

/// A rooted tree whose leaves are labelled `0..n` by left-to-right position.
#[derive(Clone, Debug)]
pub struct LeafTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    leaf_node: Vec<usize>,
    node_leaf: Vec<Option<usize>>,
    names: Vec<String>,
    meet: Vec<usize>,
}

impl LeafTree {
    /// Builds the tree described by `shape`; every internal node must have
    /// at least two children.
    pub fn from_shape(shape: &Shape) -> Result<Self> {
        let mut t = LeafTree {
            parent: Vec::new(),
            children: Vec::new(),
            depth: Vec::new(),
            tin: Vec::new(),
            tout: Vec::new(),
            leaf_node: Vec::new(),
            node_leaf: Vec::new(),
            names: Vec::new(),
            meet: Vec::new(),
        };
        let mut clock = 0;
        t.add(shape, None, 0, &mut clock)?;
        let n = t.leaf_node.len();
        t.meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let m = t.compute_meet(t.leaf_node[a], t.leaf_node[b]);
                t.meet[a * n + b] = m;
            }
        }
        Ok(t)
    }

    fn add(&mut self, shape: &Shape, parent: Option<usize>, depth: usize, clock: &mut usize) -> Result<usize> {
        let id = self.parent.len();
        self.parent.push(parent);
        self.children.push(Vec::new());
        self.depth.push(depth);
        self.tin.push(*clock);
        self.tout.push(0);
        self.node_leaf.push(None);
        *clock += 1;
        match shape {
            Shape::Leaf(name) => {
                self.node_leaf[id] = Some(self.leaf_node.len());
                self.leaf_node.push(id);
                self.names.push(name.clone());
            }
            Shape::Node(ch) => {
                if ch.len() < 2 {
                    return Err(Error::TreeSpec(format!(
                        "internal node with {} child(ren)",
                        ch.len()
                    )));
                }
                for c in ch {
                    let cid = self.add(c, Some(id), depth + 1, clock)?;
                    self.children[id].push(cid);
                }
            }
        }
        self.tout[id] = *clock;
        Ok(id)
    }

    fn compute_meet(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    pub fn n_leaves(&self) -> usize {
        self.leaf_node.len()
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn internal_count(&self) -> usize {
        self.node_count() - self.n_leaves()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn leaf_node(&self, leaf: usize) -> usize {
        self.leaf_node[leaf]
    }

    pub fn node_leaf(&self, v: usize) -> Option<usize> {
        self.node_leaf[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Largest number of children of any internal node.
    pub fn max_branching(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_binary(&self) -> bool {
        self.children.iter().all(|c| c.is_empty() || c.len() == 2)
    }

    /// `a` is an ancestor of `b` (reflexive).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    /// `b` lies strictly below `a`.
    pub fn strictly_below(&self, b: usize, a: usize) -> bool {
        a != b && self.is_ancestor(a, b)
    }

    /// Lowest common ancestor of two leaves.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n_leaves() + b]
    }

    /// Leaves below node `v`, in planar order.
    pub fn leaves_below(&self, v: usize) -> Vec<usize> {
        (0..self.n_leaves())
            .filter(|&l| self.is_ancestor(v, self.leaf_node[l]))
            .collect()
    }

    /// The child of `v` on the path to leaf `leaf` (`v` a strict ancestor).
    pub fn child_towards(&self, v: usize, leaf: usize) -> usize {
        let target = self.leaf_node[leaf];
        *self.children[v]
            .iter()
            .find(|&&c| self.is_ancestor(c, target))
            .expect("leaf lies below v")
    }

    /// Shape of the tree with leaves named by planar position.
    pub fn shape(&self) -> Shape {
        self.shape_from(self.root())
    }

    fn shape_from(&self, v: usize) -> Shape {
        match self.node_leaf[v] {
            Some(l) => Shape::Leaf(l.to_string()),
            None => Shape::Node(self.children[v].iter().map(|&c| self.shape_from(c)).collect()),
        }
    }

    /// Nested-list text with leaves written as planar positions, e.g. `((0,1),(2,3))`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(self.root(), &mut out);
        out
    }

    fn write_text(&self, v: usize, out: &mut String) {
        match self.node_leaf[v] {
            Some(l) => {
                let _ = write!(out, "{l}");
            }
            None => {
                out.push('(');
                for (i, &c) in self.children[v].iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.write_text(c, out);
                }
                out.push(')');
            }
        }
    }
}

/// Parses a nested-list specification such as `((a,b),(c,d))`. Leaves are
/// numbered by their left-to-right position; `max_branching` bounds the
/// number of children of any internal node.
pub fn build_leaf_tree(text: &str, max_branching: Option<usize>) -> Result<LeafTree> {
    let shape = parse_shape(text)?;
    let tree = LeafTree::from_shape(&shape)?;
    if let Some(t) = max_branching {
        if tree.max_branching() > t {
            return Err(Error::TreeSpec(format!(
                "node with {} children exceeds branching bound {t}",
                tree.max_branching()
            )));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for name in tree.names() {
        if !seen.insert(name.as_str()) {
            return Err(Error::TreeSpec(format!("leaf label `{name}` repeated")));
        }
    }
    Ok(tree)
}

/// Parses nested-list text into a [`Shape`] without validating arities.
pub fn parse_shape(text: &str) -> Result<Shape> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::TreeSpec("empty specification".into()));
    }
    let mut pos = 0;
    let shape = parse_node(&chars, &mut pos)?;
    if pos != chars.len() {
        return Err(Error::TreeSpec(format!("unexpected trailing input at position {pos}")));
    }
    Ok(shape)
}

fn parse_node(chars: &[char], pos: &mut usize) -> Result<Shape> {
    match chars.get(*pos) {
        Some('(') => {
            *pos += 1;
            let mut children = vec![parse_node(chars, pos)?];
            loop {
                match chars.get(*pos) {
                    Some(',') => {
                        *pos += 1;
                        children.push(parse_node(chars, pos)?);
                    }
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(Error::TreeSpec(format!("expected `,` or `)` at position {pos}"))),
                }
            }
            if children.len() < 2 {
                return Err(Error::TreeSpec("unary internal node".into()));
            }
            Ok(Shape::Node(children))
        }
        Some(_) => {
            let start = *pos;
            while let Some(&c) = chars.get(*pos) {
                if c == '(' || c == ')' || c == ',' {
                    break;
                }
                *pos += 1;
            }
            if *pos == start {
                return Err(Error::TreeSpec(format!("missing leaf label at position {start}")));
            }
            Ok(Shape::Leaf(chars[start..*pos].iter().collect()))
        }
        None => Err(Error::TreeSpec("unexpected end of specification".into())),
    }
}

/// The C-relation on the leaves and the planar leaf order.
/// `C(x;y,z)` holds iff `meet(y,z)` lies strictly below `meet(x,y)`; this
/// covers repeated arguments as well (`C(x;y,y)` for `x ≠ y`).
pub fn c_of_leaves(t: &LeafTree) -> (TernaryRel, FinOrder) {
    let n = t.n_leaves();
    let c = TernaryRel::from_fn(n, |[x, y, z]| t.strictly_below(t.meet(y, z), t.meet(x, y)));
    (c, FinOrder::natural(n))
}
