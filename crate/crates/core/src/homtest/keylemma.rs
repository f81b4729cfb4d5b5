use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::iso::{find_isomorphism, RelKind, StructuredSet};
use crate::edges::{derive_edges, m3_edges, m4_edges, n4_edges, Carrier, Family};
use crate::error::{Error, Result};
use crate::treelike::{build_circle_config, c_of_leaves, d_of_leaves, random_rooted, random_unrooted};

/// Largest core size accepted by the sampler.
pub const MAX_CORE: usize = 7;

/// The relations that carry the edges of `family`.
pub fn structure_kinds(family: Family) -> &'static [RelKind] {
    match family {
        Family::M3 => &[RelKind::Order, RelKind::C],
        Family::M4 => &[RelKind::C],
        Family::N3 => &[RelKind::R],
        Family::N4 | Family::M6 => &[RelKind::D],
    }
}

/// A random carrier of `family` on `n` points with its hypergraph and
/// carrier relations attached.
pub fn family_structure(family: Family, n: usize, seed: u64) -> Result<StructuredSet> {
    match family {
        Family::M3 | Family::M4 => {
            let t = random_rooted(n, 2, false, seed)?;
            let (c, order) = c_of_leaves(&t);
            if family == Family::M3 {
                StructuredSet::new(m3_edges(&c)).with_order(order)?.with_c(c)
            } else {
                StructuredSet::new(m4_edges(&c)).with_c(c)
            }
        }
        Family::N3 => {
            let z = build_circle_config(n, 8 * n.max(1) as i64, seed)?;
            StructuredSet::new(derive_edges(family, Carrier::Circle(&z))?).with_r(z.r_relation())
        }
        Family::N4 => {
            let t = random_unrooted(n, 4, false, seed)?;
            let d = d_of_leaves(&t);
            StructuredSet::new(n4_edges(&d)).with_d(d)
        }
        Family::M6 => {
            let t = random_unrooted(n, 3, true, seed)?;
            StructuredSet::new(derive_edges(family, Carrier::Unrooted(&t))?).with_d(d_of_leaves(&t))
        }
    }
}

/// One sampled pair of cores.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorePair {
    pub trial: usize,
    pub size: usize,
    /// Seeds and sizes of the two fragments.
    pub fragments: [(u64, usize); 2],
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub hypergraph_isomorphic: bool,
    pub structure_isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyLemmaReport {
    pub family: Family,
    pub seed: u64,
    pub trials: usize,
    pub sizes: Vec<usize>,
    pub hypergraph_isomorphic: usize,
    pub structure_isomorphic: usize,
    /// Pairs where the biconditional is asserted and fails.
    pub violations: Vec<CorePair>,
    /// For `N4` at size 6: hypergraph-isomorphic pairs with non-isomorphic D.
    pub counterexamples: Vec<CorePair>,
}

impl KeyLemmaReport {
    /// No violations, and for `N4` with size 6 sampled, a counterexample.
    pub fn passed(&self) -> bool {
        let wants_counterexample = self.family == Family::N4 && self.sizes.contains(&6);
        self.violations.is_empty() && (!wants_counterexample || !self.counterexamples.is_empty())
    }
}

/// Whether the biconditional is expected at this core size.
fn asserted(family: Family, size: usize) -> bool {
    !(family == Family::N4 && size >= 6)
}

/// Samples `trials` pairs of equal-size cores, each from its own random
/// fragment with a few extra points, and compares hypergraph isomorphism
/// with isomorphism of the carrier relations.
pub fn key_lemma_trial(family: Family, sizes: &[usize], trials: usize, seed: u64) -> Result<KeyLemmaReport> {
    if sizes.is_empty() || sizes.iter().any(|&s| s == 0 || s > MAX_CORE) {
        return Err(Error::InvalidInput(format!("core sizes must lie in 1..={MAX_CORE}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = structure_kinds(family);
    let mut report = KeyLemmaReport {
        family,
        seed,
        trials,
        sizes: sizes.to_vec(),
        hypergraph_isomorphic: 0,
        structure_isomorphic: 0,
        violations: Vec::new(),
        counterexamples: Vec::new(),
    };
    for trial in 0..trials {
        let size = sizes[rng.gen_range(0..sizes.len())];
        let mut picks = Vec::with_capacity(2);
        let mut fragments = [(0u64, 0usize); 2];
        for slot in &mut fragments {
            let n = size + rng.gen_range(0..=3);
            let fseed: u64 = rng.gen();
            let s = family_structure(family, n, fseed)?;
            let mut core = sample(&mut rng, n, size).into_vec();
            core.sort_unstable();
            *slot = (fseed, n);
            picks.push((s.induced(&core), core));
        }
        let (a, u) = &picks[0];
        let (b, v) = &picks[1];
        let plain = |s: &StructuredSet| StructuredSet::new(s.graph.clone());
        let hyper = find_isomorphism(&plain(a), &plain(b), &[RelKind::Edges])?.is_some();
        let structure = find_isomorphism(a, b, kinds)?.is_some();
        report.hypergraph_isomorphic += hyper as usize;
        report.structure_isomorphic += structure as usize;
        if hyper != structure {
            let pair = CorePair {
                trial,
                size,
                fragments,
                u: u.clone(),
                v: v.clone(),
                hypergraph_isomorphic: hyper,
                structure_isomorphic: structure,
            };
            if asserted(family, size) {
                report.violations.push(pair);
            } else if hyper {
                report.counterexamples.push(pair);
            } else {
                report.violations.push(pair);
            }
        }
    }
    Ok(report)
}
