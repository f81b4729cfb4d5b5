//! k-uniform hypergraphs and the edge rules of the five tree- and
//! circle-derived families.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relstruct::{QuaternaryRel, TernaryRel};
use crate::subset::{k_subsets, k_subsets_of, mask_of, map_mask, vertices_of, MAX_VERTICES};
use crate::treelike::{c_of_leaves, d_of_leaves, induced_topology, LeafTree, UnrootedLeafTree};
use crate::RationalCircle;

/// A k-uniform hypergraph on `{0..n-1}`; edges are stored as vertex bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KHypergraph {
    n: usize,
    k: usize,
    edges: BTreeSet<u64>,
}

impl fmt::Debug for KHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KHypergraph")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("edges", &self.sorted_edges())
            .finish()
    }
}

/// JSON form with lexicographically sorted edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphDoc {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<Vec<usize>>,
}

impl KHypergraph {
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeCap { what: "hypergraph", size: n, cap: MAX_VERTICES });
        }
        if k == 0 {
            return Err(Error::InvalidInput("edge size must be positive".into()));
        }
        Ok(KHypergraph { n, k, edges: BTreeSet::new() })
    }

    pub fn complete(n: usize, k: usize) -> Result<Self> {
        let mut h = Self::empty(n, k)?;
        h.edges = k_subsets(n, k).collect();
        Ok(h)
    }

    pub fn from_edges(n: usize, k: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut h = Self::empty(n, k)?;
        for e in edges {
            if e.len() != k {
                return Err(Error::InvalidInput(format!("edge {e:?} does not have {k} vertices")));
            }
            for &v in e {
                if v >= n {
                    return Err(Error::OutOfRange { vertex: v, n });
                }
            }
            let m = mask_of(e);
            if m.count_ones() as usize != k {
                return Err(Error::InvalidInput(format!("edge {e:?} repeats a vertex")));
            }
            h.edges.insert(m);
        }
        Ok(h)
    }

    /// Builds from edge masks; masks must have `k` bits inside `0..n`.
    pub fn from_masks(n: usize, k: usize, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut h = Self::empty(n, k)?;
        let full = crate::subset::full_mask(n);
        for m in masks {
            if m.count_ones() as usize != k || m & !full != 0 {
                return Err(Error::InvalidInput(format!("mask {m:#b} is not a {k}-subset of 0..{n}")));
            }
            h.edges.insert(m);
        }
        Ok(h)
    }

    /// Edges are the `k`-subsets satisfying `pred`.
    pub fn from_predicate(n: usize, k: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Result<Self> {
        let mut h = Self::empty(n, k)?;
        for m in k_subsets(n, k) {
            if pred(&vertices_of(m)) {
                h.edges.insert(m);
            }
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains_mask(&self, m: u64) -> bool {
        self.edges.contains(&m)
    }

    pub fn contains(&self, vertices: &[usize]) -> bool {
        vertices.len() == self.k && self.edges.contains(&mask_of(vertices))
    }

    /// Edges as sorted vertex lists, in lexicographic order.
    pub fn sorted_edges(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.edges.iter().map(|&m| vertices_of(m)).collect();
        out.sort();
        out
    }

    /// Number of edges inside the vertex set `mask`.
    pub fn edges_within(&self, mask: u64) -> usize {
        if (mask.count_ones() as usize) < self.k {
            return 0;
        }
        if self.edges.len() < 64 {
            return self.edges.iter().filter(|&&e| e & !mask == 0).count();
        }
        k_subsets_of(mask, self.k).filter(|m| self.edges.contains(m)).count()
    }

    /// Edges inside `mask`, as masks.
    pub fn edges_inside(&self, mask: u64) -> Vec<u64> {
        k_subsets_of(mask, self.k).filter(|m| self.edges.contains(m)).collect()
    }

    /// The induced subhypergraph on `vertices`, relabelled `0..len` in listing order.
    pub fn induced(&self, vertices: &[usize]) -> KHypergraph {
        let m = vertices.len();
        let mut h = KHypergraph { n: m, k: self.k, edges: BTreeSet::new() };
        for sub in k_subsets(m, self.k) {
            let orig: Vec<usize> = vertices_of(sub).into_iter().map(|i| vertices[i]).collect();
            if self.edges.contains(&mask_of(&orig)) {
                h.edges.insert(sub);
            }
        }
        h
    }

    /// Image under the vertex map `image` (a permutation of `0..n`).
    pub fn relabel(&self, image: &[usize]) -> KHypergraph {
        KHypergraph {
            n: self.n,
            k: self.k,
            edges: self.edges.iter().map(|&m| map_mask(m, image)).collect(),
        }
    }

    /// Number of edges through each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &m in &self.edges {
            for v in vertices_of(m) {
                d[v] += 1;
            }
        }
        d
    }

    pub fn to_doc(&self) -> HypergraphDoc {
        HypergraphDoc { n: self.n, k: self.k, edges: self.sorted_edges() }
    }

    pub fn from_doc(doc: &HypergraphDoc) -> Result<Self> {
        Self::from_edges(doc.n, doc.k, &doc.edges)
    }
}

/// Non-edges become edges and vice versa.
pub fn complement(h: &KHypergraph) -> KHypergraph {
    KHypergraph {
        n: h.n,
        k: h.k,
        edges: k_subsets(h.n, h.k).filter(|m| !h.edges.contains(m)).collect(),
    }
}

/// The five families and their edge sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    M3,
    N3,
    M4,
    N4,
    M6,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::M3, Family::N3, Family::M4, Family::N4, Family::M6];

    pub fn arity(self) -> usize {
        match self {
            Family::M3 | Family::N3 => 3,
            Family::M4 | Family::N4 => 4,
            Family::M6 => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "M3" => Ok(Family::M3),
            "N3" => Ok(Family::N3),
            "M4" => Ok(Family::M4),
            "N4" => Ok(Family::N4),
            "M6" => Ok(Family::M6),
            _ => Err(Error::InvalidInput(format!("unknown family `{s}`"))),
        }
    }
}

/// The structure a family's edges are read from.
#[derive(Clone, Copy, Debug)]
pub enum Carrier<'a> {
    Rooted(&'a LeafTree),
    Unrooted(&'a UnrootedLeafTree),
    Circle(&'a RationalCircle),
}

fn mismatch(family: Family, reason: impl Into<String>) -> Error {
    Error::CarrierMismatch { family: family.to_string(), reason: reason.into() }
}

/// Edge set of `family` on `carrier`.
pub fn derive_edges(family: Family, carrier: Carrier<'_>) -> Result<KHypergraph> {
    match (family, carrier) {
        (Family::M3, Carrier::Rooted(t)) => {
            if !t.is_binary() {
                return Err(mismatch(family, "needs a binary rooted tree"));
            }
            let (c, _) = c_of_leaves(t);
            Ok(m3_edges(&c))
        }
        (Family::M4, Carrier::Rooted(t)) => {
            let (c, _) = c_of_leaves(t);
            Ok(m4_edges(&c))
        }
        (Family::N3, Carrier::Circle(z)) => {
            KHypergraph::from_predicate(z.n(), 3, |v| z.in_open_half_circle([v[0], v[1], v[2]]))
        }
        (Family::N4, Carrier::Unrooted(t)) => {
            if t.max_internal_degree() > 4 {
                return Err(mismatch(family, "internal degree exceeds 4"));
            }
            Ok(n4_edges(&d_of_leaves(t)))
        }
        (Family::M6, Carrier::Unrooted(t)) => {
            if t.internal_degrees().iter().any(|&d| d != 3) {
                return Err(mismatch(family, "internal degrees must all equal 3"));
            }
            KHypergraph::from_predicate(t.n_leaves(), 6, |v| {
                induced_topology(t, v).map(|topo| topo.is_caterpillar()).unwrap_or(false)
            })
        }
        (f, c) => Err(mismatch(
            f,
            format!(
                "carrier kind {} does not match",
                match c {
                    Carrier::Rooted(_) => "rooted tree",
                    Carrier::Unrooted(_) => "unrooted tree",
                    Carrier::Circle(_) => "circle configuration",
                }
            ),
        )),
    }
}

/// `E(x,y,z)` for `x<y<z` iff `C(x;y,z)` (vertex labels carry the order).
pub fn m3_edges(c: &TernaryRel) -> KHypergraph {
    KHypergraph::from_predicate(c.n(), 3, |v| c.holds([v[0], v[1], v[2]])).expect("size checked by relation")
}

/// Quartets `{x₁,x₂,y₁,y₂}` with `C(xᵢ;y₁,y₂)` and `C(yᵢ;x₁,x₂)`.
pub fn m4_edges(c: &TernaryRel) -> KHypergraph {
    KHypergraph::from_predicate(c.n(), 4, |v| {
        let [a, b, x, y] = [v[0], v[1], v[2], v[3]];
        pairings(a, b, x, y).into_iter().any(|([x1, x2], [y1, y2])| {
            c.holds([x1, y1, y2]) && c.holds([x2, y1, y2]) && c.holds([y1, x1, x2]) && c.holds([y2, x1, x2])
        })
    })
    .expect("size checked by relation")
}

/// Quartets satisfying `D` under some ordering.
pub fn n4_edges(d: &QuaternaryRel) -> KHypergraph {
    KHypergraph::from_predicate(d.n(), 4, |v| {
        pairings(v[0], v[1], v[2], v[3]).into_iter().any(|([x, y], [z, w])| d.holds([x, y, z, w]))
    })
    .expect("size checked by relation")
}

/// The three ways to split four points into two pairs.
pub fn pairings(a: usize, b: usize, c: usize, d: usize) -> [([usize; 2], [usize; 2]); 3] {
    [([a, b], [c, d]), ([a, c], [b, d]), ([a, d], [b, c])]
}

/// Number of `m`-subsets carrying each edge count.
pub fn edge_distribution(h: &KHypergraph, m: usize) -> Result<BTreeMap<usize, usize>> {
    if m < h.k() || m > h.n() {
        return Err(Error::InvalidInput(format!(
            "subset size {m} must lie in [{}, {}]",
            h.k(),
            h.n()
        )));
    }
    let mut out = BTreeMap::new();
    for s in k_subsets(h.n(), m) {
        *out.entry(h.edges_within(s)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Classes of `a ~_U b ⇔ a = b ∨ ∀x ∈ U∖{a,b}: {a,b,x} is an edge`, for a
/// 3-hypergraph, each class listed in increasing vertex order.
pub fn similarity_classes(h: &KHypergraph, u: &[usize]) -> Vec<Vec<usize>> {
    assert_eq!(h.k(), 3, "similarity classes are defined for 3-hypergraphs");
    let similar = |a: usize, b: usize| {
        a == b || u.iter().filter(|&&x| x != a && x != b).all(|&x| h.contains_mask(mask_of(&[a, b, x])))
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    for &a in &sorted {
        match classes.iter_mut().find(|cl| similar(cl[0], a)) {
            Some(cl) => cl.push(a),
            None => classes.push(vec![a]),
        }
    }
    classes
}

/// All `~_U` classes are singletons.
pub fn is_balanced(h: &KHypergraph, u: &[usize]) -> bool {
    similarity_classes(h, u).iter().all(|c| c.len() == 1)
}
