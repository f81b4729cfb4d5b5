use super::rooted::{c_of_leaves, LeafTree, Shape};
use crate::error::{Error, Result};

/// A tree enlarged by witness leaves, with the surviving original leaves
/// marked as the core.
#[derive(Clone, Debug)]
pub struct ClosedTree {
    pub tree: LeafTree,
    /// Original label of each leaf, `None` for added witnesses.
    pub origin: Vec<Option<usize>>,
    /// Current label of each original leaf.
    pub core: Vec<usize>,
    /// Every core instance of the strong-density axiom has both witnesses.
    pub complete: bool,
}

struct Arena {
    children: Vec<Vec<usize>>,
    origin: Vec<Option<Option<usize>>>,
}

impl Arena {
    fn leaf(&mut self, origin: Option<usize>) -> usize {
        self.children.push(Vec::new());
        self.origin.push(Some(origin));
        self.children.len() - 1
    }

    fn node(&mut self, children: Vec<usize>) -> usize {
        self.children.push(children);
        self.origin.push(None);
        self.children.len() - 1
    }

    fn shape(&self, v: usize, preorder: &mut Vec<usize>) -> Shape {
        preorder.push(v);
        match self.origin[v] {
            Some(Some(o)) => Shape::Leaf(format!("o{o}")),
            Some(None) => Shape::Leaf("w".into()),
            None => Shape::Node(self.children[v].iter().map(|&c| self.shape(c, preorder)).collect()),
        }
    }
}

/// Adds leaves to a binary planar tree so that core triples acquire the
/// ordered witnesses of strong density: first every original leaf `y` is
/// replaced by the gadget `(w₁,(y,w₂))`, then for each remaining core
/// instance `C(x;y,z)` lacking a witness a leaf is inserted directly above
/// `meet(y,z)` on the missing side. Stops once `max_leaves` is reached.
pub fn witness_closure(t: &LeafTree, max_leaves: usize) -> Result<ClosedTree> {
    if !t.is_binary() {
        return Err(Error::InvalidInput("witness closure needs a binary tree".into()));
    }
    let mut arena = Arena { children: Vec::new(), origin: Vec::new() };
    let root = copy_with_gadgets(t, t.root(), &mut arena);
    let mut root = root;
    loop {
        let mut preorder = Vec::new();
        let shape = arena.shape(root, &mut preorder);
        let tree = LeafTree::from_shape(&shape)?;
        let origin: Vec<Option<usize>> = tree
            .names()
            .iter()
            .map(|s| s.strip_prefix('o').map(|d| d.parse().expect("numeric origin")))
            .collect();
        let mut core = vec![0; t.n_leaves()];
        for (label, o) in origin.iter().enumerate() {
            if let Some(o) = o {
                core[*o] = label;
            }
        }
        let missing = first_missing(&tree, &core);
        let Some((meet, low)) = missing else {
            return Ok(ClosedTree { tree, origin, core, complete: true });
        };
        if tree.n_leaves() >= max_leaves {
            return Ok(ClosedTree { tree, origin, core, complete: false });
        }
        let target = preorder[meet];
        let w = arena.leaf(None);
        let kids = if low { vec![w, target] } else { vec![target, w] };
        let fresh = arena.node(kids);
        match (0..arena.children.len()).find(|&p| arena.children[p].contains(&target) && p != fresh) {
            Some(p) => {
                let slot = arena.children[p].iter().position(|&c| c == target).unwrap();
                arena.children[p][slot] = fresh;
            }
            None => root = fresh,
        }
    }
}

fn copy_with_gadgets(t: &LeafTree, v: usize, arena: &mut Arena) -> usize {
    match t.node_leaf(v) {
        Some(l) => {
            let w1 = arena.leaf(None);
            let y = arena.leaf(Some(l));
            let w2 = arena.leaf(None);
            let inner = arena.node(vec![y, w2]);
            arena.node(vec![w1, inner])
        }
        None => {
            let kids = t.children(v).iter().map(|&c| copy_with_gadgets(t, c, arena)).collect();
            arena.node(kids)
        }
    }
}

/// First core instance `C(x;y,z)` missing a witness: returns `meet(y,z)` and
/// whether the low witness is the missing one.
fn first_missing(tree: &LeafTree, core: &[usize]) -> Option<(usize, bool)> {
    let (c, _) = c_of_leaves(tree);
    let n = tree.n_leaves();
    for &x in core {
        for &y in core {
            for &z in core {
                if !c.holds([x, y, z]) {
                    continue;
                }
                let (lo, hi) = (y.min(z), y.max(z));
                let ok = |w: usize| c.holds([w, y, z]) && c.holds([x, y, w]);
                if !(0..lo).any(ok) {
                    return Some((tree.meet(y, z), true));
                }
                if !(hi + 1..n).any(ok) {
                    return Some((tree.meet(y, z), false));
                }
            }
        }
    }
    None
}
