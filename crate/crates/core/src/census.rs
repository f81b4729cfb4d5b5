//! Orbit unions of minimal 2-transitive groups on `k`-subsets, deduplicated
//! up to isomorphism and classified by the homogeneity checks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::edges::{HypergraphDoc, KHypergraph};
use crate::error::{Error, Result};
use crate::groups::{minimal_two_transitive, named_group, orbits_on_subsets, PermGroup, Permutation};
use crate::homtest::{
    brute_force_set_homogeneous, canonical_form, homogeneity_report, homogeneity_report_for_group, preserves_edges,
    MAX_HOMOGENEITY_VERTICES,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub degree: usize,
    /// Catalog group whose orbits produced the entry first.
    pub group: String,
    /// Bit `i` set when orbit `i` of `group` (orbits sorted by least member) is included.
    pub orbit_mask: u64,
    pub edges: usize,
    /// The hypergraph relabelled to its canonical form.
    pub graph: HypergraphDoc,
    pub set_homogeneous: bool,
    pub homogeneous: bool,
    pub aut_order: usize,
    /// Flags confirmed by the brute-force path.
    pub verified: bool,
}

impl CensusEntry {
    pub fn hypergraph(&self) -> Result<KHypergraph> {
        KHypergraph::from_doc(&self.graph)
    }
}

/// Re-derives the flags of `h` without the backtracking automorphism
/// search: brute-force set-homogeneity, certificate replay, and the group
/// checks against the automorphism group found by scanning all `n!` maps.
pub fn cross_check(h: &KHypergraph, set_homogeneous: bool, homogeneous: bool, aut_order: usize) -> Result<bool> {
    let n = h.n();
    let autos: Vec<Permutation> = (0..n)
        .permutations(n)
        .filter(|p| preserves_edges(h, p))
        .map(Permutation::new)
        .collect::<Result<_>>()?;
    if autos.len() != aut_order {
        return Ok(false);
    }
    let g = PermGroup::from_elements(n, autos)?;
    let r = homogeneity_report_for_group(h, &g)?;
    let cert_ok = r.certificate.as_ref().is_none_or(|c| c.verify(h, None));
    Ok(brute_force_set_homogeneous(h) == set_homogeneous
        && r.set_homogeneous == set_homogeneous
        && r.homogeneous == homogeneous
        && (!homogeneous || set_homogeneous)
        && cert_ok)
}

/// The orbit of `{0,1,3}` under `agl1(7)` on 3-subsets: 14 edges.
pub fn example52() -> Result<KHypergraph> {
    let g = named_group("agl1(7)")?;
    let orbit = orbits_on_subsets(&g, 3)?
        .into_iter()
        .find(|o| o.contains(&0b1011))
        .ok_or_else(|| Error::InvalidInput("orbit of 013 missing".into()))?;
    KHypergraph::from_masks(7, 3, orbit)
}

/// Lines `{i, i+1, i+3}` mod 7.
pub fn fano_plane() -> Result<KHypergraph> {
    let lines: Vec<Vec<usize>> = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    KHypergraph::from_edges(7, 3, &lines)
}

/// Every union of orbits of each catalog group of degree `n` on `k`-subsets,
/// one entry per isomorphism type, sorted by edge count then canonical edges.
pub fn census_orbit_unions(n: usize, k: usize) -> Result<Vec<CensusEntry>> {
    if n > MAX_HOMOGENEITY_VERTICES {
        return Err(Error::SizeCap { what: "census degree", size: n, cap: MAX_HOMOGENEITY_VERTICES });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("edge size {k} on {n} vertices")));
    }
    let mut found: BTreeMap<(usize, Vec<u64>), CensusEntry> = BTreeMap::new();
    for name in minimal_two_transitive(n)? {
        let g = named_group(name)?;
        let orbits = orbits_on_subsets(&g, k)?;
        if orbits.len() > 20 {
            return Err(Error::SizeCap { what: "orbit count", size: orbits.len(), cap: 20 });
        }
        for sel in 0u64..(1 << orbits.len()) {
            let masks = orbits.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).flat_map(|(_, o)| o.iter().copied());
            let h = KHypergraph::from_masks(n, k, masks)?;
            let (canon, _) = canonical_form(&h);
            let key = (canon.len(), canon.clone());
            if found.contains_key(&key) {
                continue;
            }
            let graph = KHypergraph::from_masks(n, k, canon)?;
            let r = homogeneity_report(&graph)?;
            let verified = cross_check(&graph, r.set_homogeneous, r.homogeneous, r.group_order)?;
            found.insert(
                key,
                CensusEntry {
                    degree: n,
                    group: name.to_string(),
                    orbit_mask: sel,
                    edges: graph.edge_count(),
                    graph: graph.to_doc(),
                    set_homogeneous: r.set_homogeneous,
                    homogeneous: r.homogeneous,
                    aut_order: r.group_order,
                    verified,
                },
            );
        }
    }
    Ok(found.into_values().collect())
}

/// Plain-text summary, one row per entry.
pub fn census_table(entries: &[CensusEntry]) -> String {
    let mut out = String::from("degree  edges  |Aut|  set-hom  hom    verified  group\n");
    for e in entries {
        let _ = writeln!(
            out,
            "{:<7} {:<6} {:<6} {:<8} {:<6} {:<9} {}",
            e.degree, e.edges, e.aut_order, e.set_homogeneous, e.homogeneous, e.verified, e.group
        );
    }
    out
}
