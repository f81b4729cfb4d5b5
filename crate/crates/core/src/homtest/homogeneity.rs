use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::iso::{all_isomorphisms, exists_automorphism, hypergraph_automorphisms, hypergraph_isomorphism, RelKind, StructuredSet};
use crate::edges::KHypergraph;
use crate::error::{Error, Result};
use crate::groups::{orbits_on_subsets, PermGroup, MAX_ORDER};
use crate::subset::{mask_of, map_mask, vertices_of};

/// Largest vertex count accepted by the homogeneity checks.
pub const MAX_HOMOGENEITY_VERTICES: usize = 8;

/// Flags for substructures of one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelFlags {
    pub t: usize,
    /// Orbits of the group on `t`-subsets.
    pub orbits: usize,
    /// Isomorphism types among `t`-subsets.
    pub types: usize,
    pub set_homogeneous: bool,
    pub homogeneous: bool,
}

/// Evidence that a check fails. Maps are listed pointwise: `u[i] ↦ v[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `u` and `v` carry isomorphic substructures but no group element maps `u` onto `v`.
    NotSetHomogeneous { u: Vec<usize>, v: Vec<usize> },
    /// The isomorphism `domain[i] ↦ image[i]` extends to no group element.
    NonExtendingIsomorphism { domain: Vec<usize>, image: Vec<usize> },
}

impl Certificate {
    /// Re-checks the certificate by brute force over all `n!` permutations
    /// (restricted to `group` when one is supplied).
    pub fn verify(&self, h: &KHypergraph, group: Option<&PermGroup>) -> bool {
        let (u, v) = match self {
            Certificate::NotSetHomogeneous { u, v } => (u, v),
            Certificate::NonExtendingIsomorphism { domain, image } => (domain, image),
        };
        if u.len() != v.len() || u.iter().chain(v).any(|&x| x >= h.n()) {
            return false;
        }
        let (mu, mv) = (mask_of(u), mask_of(v));
        if mu.count_ones() as usize != u.len() || mv.count_ones() as usize != v.len() {
            return false;
        }
        let (hu, hv) = (h.induced(u), h.induced(v));
        let witness = |p: &[usize]| match self {
            Certificate::NotSetHomogeneous { .. } => map_mask(mu, p) == mv,
            Certificate::NonExtendingIsomorphism { .. } => u.iter().zip(v).all(|(&a, &b)| p[a] == b),
        };
        let blocked = match group {
            Some(g) => !g.elements().iter().any(|p| witness(p.images())),
            None => !exists_automorphism(h, witness),
        };
        match self {
            Certificate::NotSetHomogeneous { .. } => hypergraph_isomorphism(&hu, &hv).is_some() && blocked,
            Certificate::NonExtendingIsomorphism { .. } => hu == hv && blocked,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    /// Order of the group tested: the full automorphism group unless supplied.
    pub group_order: usize,
    pub supplied_group: bool,
    pub set_homogeneous: bool,
    pub homogeneous: bool,
    pub levels: Vec<LevelFlags>,
    pub certificate: Option<Certificate>,
}

/// Set-homogeneity and homogeneity of `h` against its full automorphism group.
pub fn homogeneity_report(h: &KHypergraph) -> Result<HomReport> {
    if h.n() > MAX_HOMOGENEITY_VERTICES {
        return Err(Error::SizeCap { what: "homogeneity report", size: h.n(), cap: MAX_HOMOGENEITY_VERTICES });
    }
    let g = hypergraph_automorphisms(h)?;
    report_for(h, &g, false)
}

/// The same checks for a supplied group of automorphisms of `h`: whether
/// `g` maps any subset onto any isomorphic one, and realizes every
/// isomorphism.
pub fn homogeneity_report_for_group(h: &KHypergraph, g: &PermGroup) -> Result<HomReport> {
    if h.n() > MAX_HOMOGENEITY_VERTICES {
        return Err(Error::SizeCap { what: "homogeneity report", size: h.n(), cap: MAX_HOMOGENEITY_VERTICES });
    }
    if g.degree() != h.n() {
        return Err(Error::DegreeMismatch { expected: h.n(), found: g.degree() });
    }
    if let Some(bad) = g.generators().iter().find(|p| h.edge_masks().any(|m| !h.contains_mask(p.apply_mask(m)))) {
        return Err(Error::InvalidInput(format!("{bad:?} is not an automorphism")));
    }
    report_for(h, g, true)
}

fn report_for(h: &KHypergraph, g: &PermGroup, supplied: bool) -> Result<HomReport> {
    let n = h.n();
    let mut levels = Vec::new();
    let mut certificate = None;
    for t in 1..=n {
        let orbits = orbits_on_subsets(g, t)?;
        let reps: Vec<Vec<usize>> = orbits.iter().map(|o| vertices_of(o[0])).collect();
        let induced: Vec<KHypergraph> = reps.iter().map(|r| h.induced(r)).collect();
        let mut type_of: Vec<usize> = Vec::with_capacity(reps.len());
        let mut type_reps: Vec<usize> = Vec::new();
        let mut set_ok = true;
        for i in 0..reps.len() {
            let hit = type_reps.iter().copied().find_map(|j| {
                if induced[j].edge_count() != induced[i].edge_count() {
                    return None;
                }
                hypergraph_isomorphism(&induced[j], &induced[i]).map(|_| j)
            });
            match hit {
                Some(j) => {
                    set_ok = false;
                    if certificate.is_none() {
                        certificate = Some(Certificate::NotSetHomogeneous { u: reps[j].clone(), v: reps[i].clone() });
                    }
                    type_of.push(type_of[j]);
                }
                None => {
                    type_of.push(type_reps.len());
                    type_reps.push(i);
                }
            }
        }
        let mut hom_ok = set_ok;
        if set_ok {
            for (rep, sub) in reps.iter().zip(&induced) {
                let mask = mask_of(rep);
                let position = |x: usize| rep.iter().position(|&y| y == x).expect("stabilizer keeps the set");
                let restrictions: HashSet<Vec<usize>> = g
                    .setwise_stabilizer(mask)
                    .iter()
                    .map(|p| rep.iter().map(|&x| position(p.apply(x))).collect())
                    .collect();
                let s = StructuredSet::new(sub.clone());
                let autos = all_isomorphisms(&s, &s, &[RelKind::Edges], MAX_ORDER)?;
                if autos.len() > restrictions.len() {
                    hom_ok = false;
                    if certificate.is_none() {
                        let missing = autos.iter().find(|a| !restrictions.contains(*a)).expect("strictly more autos");
                        certificate = Some(Certificate::NonExtendingIsomorphism {
                            domain: rep.clone(),
                            image: missing.iter().map(|&i| rep[i]).collect(),
                        });
                    }
                    break;
                }
            }
        }
        levels.push(LevelFlags { t, orbits: reps.len(), types: type_reps.len(), set_homogeneous: set_ok, homogeneous: hom_ok });
    }
    let set_homogeneous = levels.iter().all(|l| l.set_homogeneous);
    let homogeneous = levels.iter().all(|l| l.homogeneous);
    Ok(HomReport {
        n,
        k: h.k(),
        edges: h.edge_count(),
        group_order: g.order(),
        supplied_group: supplied,
        set_homogeneous,
        homogeneous,
        levels,
        certificate,
    })
}

/// Independent set-homogeneity check: for every pair of equal-size subsets
/// carrying isomorphic substructures, scan all `n!` permutations for an
/// automorphism mapping one onto the other. Only for small `n`.
pub fn brute_force_set_homogeneous(h: &KHypergraph) -> bool {
    let n = h.n();
    let autos: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .filter(|p| h.edge_masks().all(|m| h.contains_mask(map_mask(m, p))))
        .collect();
    for t in 1..=n {
        let subsets: Vec<u64> = crate::subset::k_subsets(n, t).collect();
        for (i, &a) in subsets.iter().enumerate() {
            for &b in &subsets[i + 1..] {
                let (ha, hb) = (h.induced(&vertices_of(a)), h.induced(&vertices_of(b)));
                if hypergraph_isomorphism(&ha, &hb).is_some() && !autos.iter().any(|p| map_mask(a, p) == b) {
                    return false;
                }
            }
        }
    }
    true
}
