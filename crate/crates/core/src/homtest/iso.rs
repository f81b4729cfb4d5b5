use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::edges::KHypergraph;
use crate::error::{Error, Result};
use crate::groups::{PermGroup, Permutation, MAX_ORDER};
use crate::relstruct::{all_tuples, FinOrder, QuaternaryRel, TernaryRel};
use crate::subset::{k_subsets, k_subsets_of, map_mask, vertices_of};

/// Largest vertex count for exhaustive automorphism enumeration.
pub const MAX_AUT_VERTICES: usize = 10;

/// Relations an isomorphism may be asked to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelKind {
    Edges,
    Order,
    C,
    D,
    R,
}

/// A hypergraph with optional companion relations on the same vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredSet {
    pub graph: KHypergraph,
    pub order: Option<FinOrder>,
    pub c: Option<TernaryRel>,
    pub d: Option<QuaternaryRel>,
    pub r: Option<TernaryRel>,
}

impl StructuredSet {
    pub fn new(graph: KHypergraph) -> Self {
        StructuredSet { graph, order: None, c: None, d: None, r: None }
    }

    fn check(&self, what: &str, m: usize) -> Result<()> {
        if m != self.n() {
            return Err(Error::InvalidInput(format!("{what} has {m} vertices, hypergraph has {}", self.n())));
        }
        Ok(())
    }

    pub fn with_order(mut self, order: FinOrder) -> Result<Self> {
        self.check("order", order.n())?;
        self.order = Some(order);
        Ok(self)
    }

    pub fn with_c(mut self, c: TernaryRel) -> Result<Self> {
        self.check("C", c.n())?;
        self.c = Some(c);
        Ok(self)
    }

    pub fn with_d(mut self, d: QuaternaryRel) -> Result<Self> {
        self.check("D", d.n())?;
        self.d = Some(d);
        Ok(self)
    }

    pub fn with_r(mut self, r: TernaryRel) -> Result<Self> {
        self.check("R", r.n())?;
        self.r = Some(r);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn has(&self, kind: RelKind) -> bool {
        match kind {
            RelKind::Edges => true,
            RelKind::Order => self.order.is_some(),
            RelKind::C => self.c.is_some(),
            RelKind::D => self.d.is_some(),
            RelKind::R => self.r.is_some(),
        }
    }

    /// Substructure on `vertices`, relabelled `0..len` in listing order.
    pub fn induced(&self, vertices: &[usize]) -> StructuredSet {
        StructuredSet {
            graph: self.graph.induced(vertices),
            order: self.order.as_ref().map(|o| o.induced(vertices)),
            c: self.c.as_ref().map(|c| c.induced(vertices)),
            d: self.d.as_ref().map(|d| d.induced(vertices)),
            r: self.r.as_ref().map(|r| r.induced(vertices)),
        }
    }
}

fn check_respect(a: &StructuredSet, b: &StructuredSet, respect: &[RelKind]) -> Result<()> {
    if let Some(kind) = respect.iter().find(|&&k| !a.has(k) || !b.has(k)) {
        return Err(Error::InvalidInput(format!("relation {kind:?} is missing from one side")));
    }
    if a.graph.k() != b.graph.k() && respect.contains(&RelKind::Edges) {
        return Err(Error::InvalidInput("edge sizes differ".into()));
    }
    Ok(())
}

/// Whether `map` (vertex `i` of `a` to `map[i]` of `b`) is a bijection
/// preserving every relation in `respect`. Checks every tuple.
pub fn is_isomorphism(a: &StructuredSet, b: &StructuredSet, map: &[usize], respect: &[RelKind]) -> bool {
    let n = a.n();
    if b.n() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &w in map {
        if w >= n || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    respect.iter().all(|kind| match kind {
        RelKind::Edges => {
            a.graph.k() == b.graph.k()
                && k_subsets(n, a.graph.k())
                    .all(|m| a.graph.contains_mask(m) == b.graph.contains_mask(map_mask(m, map)))
        }
        RelKind::Order => match (&a.order, &b.order) {
            (Some(x), Some(y)) => (0..n).cartesian_product(0..n).all(|(u, v)| x.less(u, v) == y.less(map[u], map[v])),
            _ => false,
        },
        RelKind::C | RelKind::R => {
            let (x, y) = if *kind == RelKind::C { (&a.c, &b.c) } else { (&a.r, &b.r) };
            match (x, y) {
                (Some(x), Some(y)) => {
                    all_tuples::<3>(n).all(|t| x.holds(t) == y.holds([map[t[0]], map[t[1]], map[t[2]]]))
                }
                _ => false,
            }
        }
        RelKind::D => match (&a.d, &b.d) {
            (Some(x), Some(y)) => {
                all_tuples::<4>(n).all(|t| x.holds(t) == y.holds([map[t[0]], map[t[1]], map[t[2]], map[t[3]]]))
            }
            _ => false,
        },
    })
}

/// Per-vertex invariants: a base vector of relation counts, refined once by
/// the multiset of co-member invariants over incident edges.
fn invariants(s: &StructuredSet, respect: &[RelKind]) -> Vec<Vec<usize>> {
    let n = s.n();
    let mut base: Vec<Vec<usize>> = vec![Vec::new(); n];
    for kind in respect {
        match kind {
            RelKind::Edges => {
                for (v, d) in s.graph.degrees().into_iter().enumerate() {
                    base[v].push(d);
                }
            }
            RelKind::Order => {
                let o = s.order.as_ref().expect("checked");
                for (v, b) in base.iter_mut().enumerate() {
                    b.push(o.rank(v));
                }
            }
            RelKind::C | RelKind::R => {
                let rel = if *kind == RelKind::C { s.c.as_ref() } else { s.r.as_ref() }.expect("checked");
                let mut counts = vec![[0usize; 3]; n];
                for t in rel.tuples() {
                    for (pos, &v) in t.iter().enumerate() {
                        counts[v][pos] += 1;
                    }
                }
                for (v, c) in counts.into_iter().enumerate() {
                    base[v].extend(c);
                }
            }
            RelKind::D => {
                let rel = s.d.as_ref().expect("checked");
                let mut counts = vec![0usize; n];
                for t in rel.tuples() {
                    counts[t[0]] += 1;
                }
                for (v, c) in counts.into_iter().enumerate() {
                    base[v].push(c);
                }
            }
        }
    }
    if !respect.contains(&RelKind::Edges) {
        return base;
    }
    let mut refined = base.clone();
    let mut incident: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for m in s.graph.edge_masks() {
        let members = vertices_of(m);
        for &v in &members {
            let mut co: Vec<usize> = members.iter().filter(|&&u| u != v).flat_map(|&u| base[u].clone()).collect();
            co.sort_unstable();
            incident[v].push(co);
        }
    }
    for (v, mut inc) in incident.into_iter().enumerate() {
        inc.sort();
        for co in inc {
            refined[v].push(usize::MAX);
            refined[v].extend(co);
        }
    }
    refined
}

struct Search<'a> {
    a: &'a StructuredSet,
    b: &'a StructuredSet,
    respect: &'a [RelKind],
    sequence: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned_mask: u64,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(a: &'a StructuredSet, b: &'a StructuredSet, respect: &'a [RelKind]) -> Option<Self> {
        let n = a.n();
        if b.n() != n {
            return None;
        }
        if respect.contains(&RelKind::Edges) && a.graph.edge_count() != b.graph.edge_count() {
            return None;
        }
        let ia = invariants(a, respect);
        let ib = invariants(b, respect);
        let mut sa = ia.clone();
        let mut sb = ib.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        let candidates: Vec<Vec<usize>> =
            (0..n).map(|v| (0..n).filter(|&w| ia[v] == ib[w]).collect()).collect();
        let mut sequence: Vec<usize> = (0..n).collect();
        sequence.sort_by_key(|&v| (candidates[v].len(), v));
        Some(Search {
            a,
            b,
            respect,
            sequence,
            candidates,
            map: vec![UNSET; n],
            used: vec![false; n],
            assigned_mask: 0,
        })
    }

    fn consistent(&self, v: usize, w: usize, done: &[usize]) -> bool {
        let (a, b) = (self.a, self.b);
        let img = |u: usize| if u == v { w } else { self.map[u] };
        for kind in self.respect {
            let ok = match kind {
                RelKind::Edges => {
                    let k = a.graph.k();
                    if k == 1 {
                        a.graph.contains_mask(1 << v) == b.graph.contains_mask(1 << w)
                    } else if done.len() + 1 < k {
                        true
                    } else {
                        k_subsets_of(self.assigned_mask, k - 1).all(|s| {
                            let image = vertices_of(s).into_iter().fold(0u64, |m, u| m | 1 << self.map[u]);
                            a.graph.contains_mask(s | 1 << v) == b.graph.contains_mask(image | 1 << w)
                        })
                    }
                }
                RelKind::Order => {
                    let (x, y) = (a.order.as_ref().unwrap(), b.order.as_ref().unwrap());
                    done.iter().all(|&u| x.less(u, v) == y.less(self.map[u], w) && x.less(v, u) == y.less(w, self.map[u]))
                }
                RelKind::C | RelKind::R => {
                    let (x, y) = if *kind == RelKind::C {
                        (a.c.as_ref().unwrap(), b.c.as_ref().unwrap())
                    } else {
                        (a.r.as_ref().unwrap(), b.r.as_ref().unwrap())
                    };
                    let pts: Vec<usize> = done.iter().copied().chain([v]).collect();
                    pts.iter().cartesian_product(&pts).cartesian_product(&pts).all(|((&p, &q), &r)| {
                        if p != v && q != v && r != v {
                            return true;
                        }
                        x.holds([p, q, r]) == y.holds([img(p), img(q), img(r)])
                    })
                }
                RelKind::D => {
                    let (x, y) = (a.d.as_ref().unwrap(), b.d.as_ref().unwrap());
                    let pts: Vec<usize> = done.iter().copied().chain([v]).collect();
                    pts.iter().cartesian_product(&pts).cartesian_product(&pts).cartesian_product(&pts).all(
                        |(((&p, &q), &r), &s)| {
                            if p != v && q != v && r != v && s != v {
                                return true;
                            }
                            x.holds([p, q, r, s]) == y.holds([img(p), img(q), img(r), img(s)])
                        },
                    )
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Depth-first search; `visit` returns `false` to stop.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.sequence.len() {
            return visit(&self.map);
        }
        let v = self.sequence[depth];
        let done: Vec<usize> = self.sequence[..depth].to_vec();
        for idx in 0..self.candidates[v].len() {
            let w = self.candidates[v][idx];
            if self.used[w] || !self.consistent(v, w, &done) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            self.assigned_mask |= 1 << v;
            let go_on = self.run(depth + 1, visit);
            self.assigned_mask &= !(1 << v);
            self.used[w] = false;
            self.map[v] = UNSET;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// An isomorphism `a → b` preserving `respect`, or `None` after exhaustive
/// search. Invariant classes prune candidates; ties go to the lowest index.
pub fn find_isomorphism(a: &StructuredSet, b: &StructuredSet, respect: &[RelKind]) -> Result<Option<Vec<usize>>> {
    check_respect(a, b, respect)?;
    let Some(mut search) = Search::new(a, b, respect) else {
        return Ok(None);
    };
    let mut found = None;
    search.run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    if let Some(m) = &found {
        assert!(is_isomorphism(a, b, m, respect), "search produced a non-isomorphism");
    }
    Ok(found)
}

/// Every isomorphism `a → b`, up to `limit` of them.
pub fn all_isomorphisms(a: &StructuredSet, b: &StructuredSet, respect: &[RelKind], limit: usize) -> Result<Vec<Vec<usize>>> {
    check_respect(a, b, respect)?;
    let Some(mut search) = Search::new(a, b, respect) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut overflow = false;
    search.run(0, &mut |m| {
        if out.len() == limit {
            overflow = true;
            return false;
        }
        out.push(m.to_vec());
        true
    });
    if overflow {
        return Err(Error::BudgetExceeded(limit));
    }
    out.sort();
    Ok(out)
}

/// All permutations preserving `respect`, as a group.
pub fn automorphism_group(s: &StructuredSet, respect: &[RelKind]) -> Result<PermGroup> {
    if s.n() > MAX_AUT_VERTICES {
        return Err(Error::SizeCap { what: "automorphism search", size: s.n(), cap: MAX_AUT_VERTICES });
    }
    let maps = all_isomorphisms(s, s, respect, MAX_ORDER)?;
    let elements = maps.into_iter().map(|m| Permutation::new(m).expect("bijection")).collect();
    PermGroup::from_elements(s.n(), elements)
}

/// Automorphism group of a bare hypergraph.
pub fn hypergraph_automorphisms(h: &KHypergraph) -> Result<PermGroup> {
    automorphism_group(&StructuredSet::new(h.clone()), &[RelKind::Edges])
}

/// Hypergraph isomorphism, ignoring companion relations.
pub fn hypergraph_isomorphism(a: &KHypergraph, b: &KHypergraph) -> Option<Vec<usize>> {
    if a.k() != b.k() {
        return None;
    }
    find_isomorphism(&StructuredSet::new(a.clone()), &StructuredSet::new(b.clone()), &[RelKind::Edges])
        .expect("edges always present")
}

/// Lexicographically least sorted edge-mask list over all relabellings,
/// with a relabelling attaining it. Exhaustive over `n!` permutations.
pub fn canonical_form(h: &KHypergraph) -> (Vec<u64>, Vec<usize>) {
    let n = h.n();
    let edges: Vec<u64> = h.edge_masks().collect();
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    for perm in (0..n).permutations(n) {
        let mut img: Vec<u64> = edges.iter().map(|&m| map_mask(m, &perm)).collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| img < *b) {
            best = Some((img, perm));
        }
    }
    best.unwrap_or_else(|| (Vec::new(), Vec::new()))
}

/// `true` when `perm` preserves the edge set.
pub fn preserves_edges(h: &KHypergraph, perm: &[usize]) -> bool {
    h.edge_masks().all(|m| h.contains_mask(map_mask(m, perm)))
}

/// Brute-force check over all `n!` permutations: some automorphism satisfies `pred`.
pub fn exists_automorphism(h: &KHypergraph, mut pred: impl FnMut(&[usize]) -> bool) -> bool {
    let n = h.n();
    (0..n).permutations(n).any(|p| preserves_edges(h, &p) && pred(&p))
}
