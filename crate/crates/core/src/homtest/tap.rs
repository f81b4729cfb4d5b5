use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::iso::canonical_form;
use crate::edges::KHypergraph;
use crate::error::{Error, Result};
use crate::subset::{k_subsets, k_subsets_of, map_mask, vertices_of};

/// Largest structure accepted in a class.
pub const MAX_TAP_SIZE: usize = 5;

/// Which amalgamation problems are posed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TapMode {
    /// Every `(A, B₁, B₂, f₁, f₂)` drawn from the class.
    Strict,
    /// Only problems whose free amalgam `|B₁|+|B₂|−|A|` fits the largest class member.
    Bounded,
}

/// An amalgamation problem with no solution in the class. Indices refer to
/// the class; `f1[i]` and `f2[i]` are the images of vertex `i` of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapFailure {
    pub a: usize,
    pub b1: usize,
    pub b2: usize,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapInstance {
    pub mode: TapMode,
    pub class_size: usize,
    pub holds: bool,
    /// Amalgamation problems examined.
    pub problems: usize,
    pub failure: Option<TapFailure>,
}

impl TapInstance {
    /// Re-checks a recorded failure with a search over all injective maps
    /// (no pruning): `f₁`, `f₂` are embeddings and no `(D, g₁, g₂, h)` exists.
    pub fn verify(&self, class: &[KHypergraph]) -> bool {
        let Some(fail) = &self.failure else {
            return self.holds;
        };
        let (Some(a), Some(b1), Some(b2)) = (class.get(fail.a), class.get(fail.b1), class.get(fail.b2)) else {
            return false;
        };
        if !is_embedding(a, b1, &fail.f1) || !is_embedding(a, b2, &fail.f2) {
            return false;
        }
        let auts: Vec<Vec<usize>> = injections(a.n(), a.n()).filter(|h| is_embedding(a, a, h)).collect();
        let solvable = class.iter().any(|d| {
            injections(b1.n(), d.n()).filter(|g| is_embedding(b1, d, g)).any(|g1| {
                injections(b2.n(), d.n()).filter(|g| is_embedding(b2, d, g)).any(|g2| {
                    auts.iter().any(|h| (0..a.n()).all(|x| g1[fail.f1[x]] == g2[fail.f2[h[x]]]))
                })
            })
        });
        !self.holds && !solvable
    }
}

fn injections(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(m)
}

/// Whether `f` is an injective map `a → b` preserving edges and non-edges.
pub fn is_embedding(a: &KHypergraph, b: &KHypergraph, f: &[usize]) -> bool {
    if f.len() != a.n() || a.k() != b.k() || f.iter().any(|&x| x >= b.n()) || f.iter().duplicates().next().is_some() {
        return false;
    }
    k_subsets(a.n(), a.k()).all(|m| a.contains_mask(m) == b.contains_mask(map_mask(m, f)))
}

/// Embeddings `a → b` whose value at each `i` with `fixed[i] = Some(y)` is `y`.
fn embeddings_with(a: &KHypergraph, b: &KHypergraph, fixed: &[Option<usize>], stop_at_first: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if a.n() > b.n() || a.k() != b.k() {
        return out;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend(a, b, fixed, 0, &mut map, &mut used, &mut out, stop_at_first);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &KHypergraph,
    b: &KHypergraph,
    fixed: &[Option<usize>],
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    stop: bool,
) -> bool {
    if v == a.n() {
        out.push(map.clone());
        return stop;
    }
    let choices: Vec<usize> = match fixed.get(v).copied().flatten() {
        Some(y) => vec![y],
        None => (0..b.n()).collect(),
    };
    let k = a.k();
    let before = if v == 0 { 0 } else { (1u64 << v) - 1 };
    for w in choices {
        if w >= b.n() || used[w] {
            continue;
        }
        map[v] = w;
        let ok = v + 1 < k
            || k_subsets_of(before, k - 1).all(|s| {
                let img = vertices_of(s).into_iter().fold(1u64 << w, |m, u| m | 1 << map[u]);
                a.contains_mask(s | 1 << v) == b.contains_mask(img)
            });
        if ok {
            used[w] = true;
            let done = extend(a, b, fixed, v + 1, map, used, out, stop);
            used[w] = false;
            if done {
                map[v] = usize::MAX;
                return true;
            }
        }
        map[v] = usize::MAX;
    }
    false
}

/// All embeddings `a → b`.
pub fn embeddings(a: &KHypergraph, b: &KHypergraph) -> Vec<Vec<usize>> {
    embeddings_with(a, b, &[], false)
}

/// Checks the twisted amalgamation property over a finite class: for all
/// `A, B₁, B₂` and embeddings `f₁: A→B₁`, `f₂: A→B₂` there are `D` in
/// the class, embeddings `g₁, g₂` and `h ∈ Aut(A)` with `g₁∘f₁ = g₂∘f₂∘h`.
/// Stops at the first unsolvable problem.
pub fn check_tap(class: &[KHypergraph], mode: TapMode) -> Result<TapInstance> {
    if let Some(big) = class.iter().find(|c| c.n() > MAX_TAP_SIZE) {
        return Err(Error::SizeCap { what: "TAP class member", size: big.n(), cap: MAX_TAP_SIZE });
    }
    if class.iter().map(|c| c.k()).dedup().count() > 1 {
        return Err(Error::InvalidInput("class mixes edge sizes".into()));
    }
    let cap = class.iter().map(|c| c.n()).max().unwrap_or(0);
    let mut by_size: Vec<usize> = (0..class.len()).collect();
    by_size.sort_by_key(|&i| (class[i].n(), i));
    let mut problems = 0;
    for (ai, a) in class.iter().enumerate() {
        let auts = embeddings(a, a);
        for (b1i, b1) in class.iter().enumerate() {
            let f1s = embeddings(a, b1);
            if f1s.is_empty() {
                continue;
            }
            for (b2i, b2) in class.iter().enumerate() {
                if mode == TapMode::Bounded && b1.n() + b2.n() - a.n() > cap {
                    continue;
                }
                let f2s = embeddings(a, b2);
                for f1 in &f1s {
                    for f2 in &f2s {
                        problems += 1;
                        if !amalgamates(class, &by_size, a, b1, b2, f1, f2, &auts) {
                            return Ok(TapInstance {
                                mode,
                                class_size: class.len(),
                                holds: false,
                                problems,
                                failure: Some(TapFailure { a: ai, b1: b1i, b2: b2i, f1: f1.clone(), f2: f2.clone() }),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(TapInstance { mode, class_size: class.len(), holds: true, problems, failure: None })
}

#[allow(clippy::too_many_arguments)]
fn amalgamates(
    class: &[KHypergraph],
    by_size: &[usize],
    a: &KHypergraph,
    b1: &KHypergraph,
    b2: &KHypergraph,
    f1: &[usize],
    f2: &[usize],
    auts: &[Vec<usize>],
) -> bool {
    by_size.iter().map(|&i| &class[i]).filter(|d| d.n() >= b1.n().max(b2.n())).any(|d| {
        embeddings(b1, d).into_iter().any(|g1| {
            auts.iter().any(|h| {
                let mut fixed: Vec<Option<usize>> = vec![None; b2.n()];
                for x in 0..a.n() {
                    fixed[f2[h[x]]] = Some(g1[f1[x]]);
                }
                !embeddings_with(b2, d, &fixed, true).is_empty()
            })
        })
    })
}

/// All `k`-hypergraphs on at most `max_n` vertices (from 1), one per isomorphism type.
pub fn all_hypergraphs_up_to(max_n: usize, k: usize) -> Result<Vec<KHypergraph>> {
    if max_n > MAX_TAP_SIZE {
        return Err(Error::SizeCap { what: "hypergraph class", size: max_n, cap: MAX_TAP_SIZE });
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        let slots: Vec<u64> = k_subsets(n, k).collect();
        let mut seen = BTreeSet::new();
        for bits in 0u64..(1u64 << slots.len()) {
            let h = KHypergraph::from_masks(n, k, slots.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &m)| m))?;
            if seen.insert(canonical_form(&h).0) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// The induced substructures of `h` on 1 to `max_n` vertices, one per isomorphism type.
pub fn substructure_class(h: &KHypergraph, max_n: usize) -> Result<Vec<KHypergraph>> {
    if max_n > MAX_TAP_SIZE {
        return Err(Error::SizeCap { what: "hypergraph class", size: max_n, cap: MAX_TAP_SIZE });
    }
    let mut out = Vec::new();
    for n in 1..=max_n.min(h.n()) {
        let mut seen = BTreeSet::new();
        for m in k_subsets(h.n(), n) {
            let sub = h.induced(&vertices_of(m));
            if seen.insert(canonical_form(&sub).0) {
                out.push(sub);
            }
        }
    }
    Ok(out)
}
