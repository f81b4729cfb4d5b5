//! Recovery of carrier relations from hypergraph edges alone. Witnesses
//! are sought anywhere in an ambient fragment; values are produced for
//! tuples over a core. Each value is true, false or unknown (no witness
//! pattern found); ground truth is consulted only by [`validate`].

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::edges::{Family, KHypergraph};
use crate::error::{Error, Result};
use crate::homtest::{family_structure, StructuredSet};
use crate::relstruct::degenerate_d;
use crate::subset::mask_of;
use crate::treelike::{c_of_leaves, random_rooted, witness_closure};

/// An ambient fragment with carrier relations, and the core on which
/// relations are recovered.
#[derive(Clone, Debug)]
pub struct AmbientCore {
    pub family: Family,
    pub ambient: StructuredSet,
    pub core: Vec<usize>,
}

impl AmbientCore {
    pub fn new(family: Family, ambient: StructuredSet, core: Vec<usize>) -> Result<Self> {
        if ambient.graph.k() != family.arity() {
            return Err(Error::CarrierMismatch {
                family: family.to_string(),
                reason: format!("hypergraph has edge size {}", ambient.graph.k()),
            });
        }
        if let Some(&v) = core.iter().find(|&&v| v >= ambient.n()) {
            return Err(Error::OutOfRange { vertex: v, n: ambient.n() });
        }
        if mask_of(&core).count_ones() as usize != core.len() {
            return Err(Error::InvalidInput("core repeats a vertex".into()));
        }
        Ok(AmbientCore { family, ambient, core })
    }

    fn graph(&self) -> &KHypergraph {
        &self.ambient.graph
    }

    /// The same core inside the sub-fragment on `keep`, which must contain it.
    pub fn restricted(&self, keep: &[usize]) -> Result<AmbientCore> {
        let core = self
            .core
            .iter()
            .map(|v| keep.iter().position(|k| k == v).ok_or(Error::InvalidInput(format!("core vertex {v} dropped"))))
            .collect::<Result<Vec<_>>>()?;
        AmbientCore::new(self.family, self.ambient.induced(keep), core)
    }
}

/// A random ambient fragment of `family` on `ambient_size` points with a
/// random core of `core_size` points.
pub fn sample_ambient_core(family: Family, ambient_size: usize, core_size: usize, seed: u64) -> Result<AmbientCore> {
    if core_size > ambient_size {
        return Err(Error::InvalidInput(format!("core of {core_size} exceeds ambient of {ambient_size}")));
    }
    let ambient = family_structure(family, ambient_size, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut core = sample(&mut rng, ambient_size, core_size).into_vec();
    core.sort_unstable();
    AmbientCore::new(family, ambient, core)
}

/// `M3` ambient built by witness closure of a random binary tree on
/// `core_size` leaves, capped at `max_leaves`; the original leaves form the core.
pub fn closed_m3_ambient(core_size: usize, max_leaves: usize, seed: u64) -> Result<AmbientCore> {
    let base = random_rooted(core_size, 2, false, seed)?;
    let closed = witness_closure(&base, max_leaves)?;
    let (c, order) = c_of_leaves(&closed.tree);
    let graph = crate::edges::m3_edges(&c);
    let ambient = StructuredSet::new(graph).with_order(order)?.with_c(c)?;
    AmbientCore::new(Family::M3, ambient, closed.core)
}

/// Values on all `arity`-tuples of core positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRelation {
    arity: usize,
    core: Vec<usize>,
    values: Vec<Option<bool>>,
}

/// JSON form; tuples use ambient labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialRelationDoc {
    pub arity: usize,
    pub core: Vec<usize>,
    #[serde(rename = "true")]
    pub holds: Vec<Vec<usize>>,
    #[serde(rename = "false")]
    pub fails: Vec<Vec<usize>>,
    pub unknown: Vec<Vec<usize>>,
}

impl PartialRelation {
    fn new(arity: usize, core: &[usize]) -> Self {
        PartialRelation { arity, core: core.to_vec(), values: vec![None; core.len().pow(arity as u32)] }
    }

    fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.core.len() + x)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn core(&self) -> &[usize] {
        &self.core
    }

    /// Value at a tuple of core positions.
    pub fn get(&self, t: &[usize]) -> Option<bool> {
        self.values[self.index(t)]
    }

    fn set(&mut self, t: &[usize], v: Option<bool>) {
        let i = self.index(t);
        self.values[i] = v;
    }

    /// All tuples of core positions in lexicographic order.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        let m = self.core.len();
        (0..self.values.len())
            .map(|mut i| {
                let mut t = vec![0; self.arity];
                for slot in t.iter_mut().rev() {
                    *slot = i % m;
                    i /= m;
                }
                t
            })
            .collect()
    }

    pub fn decided(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_doc(&self) -> PartialRelationDoc {
        let mut doc = PartialRelationDoc {
            arity: self.arity,
            core: self.core.clone(),
            holds: Vec::new(),
            fails: Vec::new(),
            unknown: Vec::new(),
        };
        for t in self.tuples() {
            let labels: Vec<usize> = t.iter().map(|&i| self.core[i]).collect();
            match self.get(&t) {
                Some(true) => doc.holds.push(labels),
                Some(false) => doc.fails.push(labels),
                None => doc.unknown.push(labels),
            }
        }
        doc
    }
}

/// Agreement of decided values with ground truth.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub agree: usize,
    pub disagree: usize,
    pub unknown: usize,
}

impl ValidationReport {
    pub fn coverage(&self) -> f64 {
        let total = self.agree + self.disagree + self.unknown;
        if total == 0 {
            1.0
        } else {
            (self.agree + self.disagree) as f64 / total as f64
        }
    }
}

/// Compares `rel` with the carrier relation of the ambient.
pub fn validate(ac: &AmbientCore, rel: &PartialRelation) -> Result<ValidationReport> {
    let amb = &ac.ambient;
    let missing = || Error::InvalidInput("ambient lacks the ground-truth relation".into());
    let truth: Box<dyn Fn(&[usize]) -> bool + '_> = match rel.arity {
        2 => {
            let o = amb.order.as_ref().ok_or_else(missing)?;
            Box::new(move |t: &[usize]| o.less(t[0], t[1]))
        }
        3 => {
            let r = match ac.family {
                Family::N3 => amb.r.as_ref(),
                _ => amb.c.as_ref(),
            }
            .ok_or_else(missing)?;
            Box::new(move |t: &[usize]| r.holds([t[0], t[1], t[2]]))
        }
        4 => {
            let d = amb.d.as_ref().ok_or_else(missing)?;
            Box::new(move |t: &[usize]| d.holds([t[0], t[1], t[2], t[3]]))
        }
        a => return Err(Error::InvalidInput(format!("no ground truth of arity {a}"))),
    };
    let mut report = ValidationReport::default();
    for t in rel.tuples() {
        let labels: Vec<usize> = t.iter().map(|&i| rel.core[i]).collect();
        match rel.get(&t) {
            None => report.unknown += 1,
            Some(v) if v == truth(&labels) => report.agree += 1,
            Some(_) => report.disagree += 1,
        }
    }
    Ok(report)
}

fn require(ac: &AmbientCore, family: Family) -> Result<()> {
    if ac.family != family {
        return Err(Error::CarrierMismatch {
            family: family.to_string(),
            reason: format!("ambient is {}", ac.family),
        });
    }
    Ok(())
}

fn edge(h: &KHypergraph, v: &[usize]) -> bool {
    h.contains_mask(mask_of(v))
}

/// Some distinct `u, v` outside `{y, z}` make the edges of `{u,v,y,z}`
/// exactly `uvz` and `yvz`.
fn order_witness(h: &KHypergraph, y: usize, z: usize) -> bool {
    let n = h.n();
    (0..n).filter(|&u| u != y && u != z).any(|u| {
        (0..n).filter(|&v| v != u && v != y && v != z).any(|v| {
            edge(h, &[u, v, z]) && edge(h, &[y, v, z]) && !edge(h, &[u, v, y]) && !edge(h, &[u, y, z])
        })
    })
}

/// `y < z` on core pairs (binary relation on core positions; the diagonal
/// is decided false).
pub fn recover_order_m3(ac: &AmbientCore) -> Result<PartialRelation> {
    require(ac, Family::M3)?;
    let h = ac.graph();
    let m = ac.core.len();
    let mut rel = PartialRelation::new(2, &ac.core);
    for i in 0..m {
        rel.set(&[i, i], Some(false));
        for j in i + 1..m {
            let (y, z) = (ac.core[i], ac.core[j]);
            let (lt, gt) = (order_witness(h, y, z), order_witness(h, z, y));
            let value = match (lt, gt) {
                (true, false) => Some(true),
                (false, true) => Some(false),
                _ => None,
            };
            rel.set(&[i, j], value);
            rel.set(&[j, i], value.map(|b| !b));
        }
    }
    Ok(rel)
}

/// Among the five 4-subsets of `{x,y,z,u,v}` only `{y,u,v,z}` is an edge.
fn m4_witness(h: &KHypergraph, x: usize, y: usize, z: usize) -> bool {
    let n = h.n();
    let own = [x, y, z];
    (0..n).filter(|u| !own.contains(u)).any(|u| {
        (0..n).filter(|&v| v != u && !own.contains(&v)).any(|v| {
            edge(h, &[y, u, v, z])
                && !edge(h, &[x, y, z, u])
                && !edge(h, &[x, y, z, v])
                && !edge(h, &[x, y, u, v])
                && !edge(h, &[x, z, u, v])
        })
    })
}

/// `C(x;y,z)` on core triples. For `M3` the recovered order is required.
pub fn recover_c(family: Family, ac: &AmbientCore, order: Option<&PartialRelation>) -> Result<PartialRelation> {
    require(ac, family)?;
    let h = ac.graph();
    let mut rel = PartialRelation::new(3, &ac.core);
    match family {
        Family::M3 => {
            let order = order.ok_or_else(|| Error::InvalidInput("M3 recovery needs the recovered order".into()))?;
            if order.arity != 2 || order.core != ac.core {
                return Err(Error::InvalidInput("order is not over this core".into()));
            }
            for t in rel.tuples() {
                let [x, y, z] = [t[0], t[1], t[2]];
                let value = if y == z {
                    Some(x != y)
                } else if x == y || x == z {
                    Some(false)
                } else {
                    let (xy, xz) = (order.get(&[x, y]), order.get(&[x, z]));
                    let e = edge(h, &[ac.core[x], ac.core[y], ac.core[z]]);
                    match (xy, xz) {
                        (Some(true), Some(true)) => Some(e),
                        (Some(false), Some(false)) => Some(!e),
                        (Some(a), Some(b)) if a != b => Some(false),
                        _ => None,
                    }
                };
                rel.set(&t, value);
            }
        }
        Family::M4 => {
            let mut positive = vec![false; rel.len()];
            for t in rel.tuples() {
                let [x, y, z] = [t[0], t[1], t[2]];
                if x != y && y != z && x != z {
                    let i = rel.index(&t);
                    positive[i] = m4_witness(h, ac.core[x], ac.core[y], ac.core[z]);
                }
            }
            for t in rel.tuples() {
                let [x, y, z] = [t[0], t[1], t[2]];
                let value = if y == z {
                    Some(x != y)
                } else if x == y || x == z {
                    Some(false)
                } else if positive[rel.index(&t)] || positive[rel.index(&[x, z, y])] {
                    Some(true)
                } else if [[y, x, z], [y, z, x], [z, x, y], [z, y, x]].iter().any(|s| positive[rel.index(s)]) {
                    Some(false)
                } else {
                    None
                };
                rel.set(&t, value);
            }
        }
        f => {
            return Err(Error::CarrierMismatch { family: f.to_string(), reason: "C is recovered for M3 and M4 only".into() })
        }
    }
    Ok(rel)
}

/// Some `u, v` outside `{x,y,z}` (possibly equal) with `uxy`, `vyz` edges
/// and `uxz`, `vxz` non-edges.
fn r_witness(h: &KHypergraph, x: usize, y: usize, z: usize) -> bool {
    let n = h.n();
    let own = [x, y, z];
    let us: Vec<usize> = (0..n).filter(|u| !own.contains(u) && edge(h, &[*u, x, y]) && !edge(h, &[*u, x, z])).collect();
    !us.is_empty() && (0..n).any(|v| !own.contains(&v) && edge(h, &[v, y, z]) && !edge(h, &[v, x, z]))
}

/// `R(y;x,z)` (the middle element first) on core triples.
pub fn recover_r_n3(ac: &AmbientCore) -> Result<PartialRelation> {
    require(ac, Family::N3)?;
    let h = ac.graph();
    let mut rel = PartialRelation::new(3, &ac.core);
    let mut positive = vec![false; rel.len()];
    for t in rel.tuples() {
        let [y, x, z] = [t[0], t[1], t[2]];
        if x != y && y != z && x != z {
            let (cx, cy, cz) = (ac.core[x], ac.core[y], ac.core[z]);
            if edge(h, &[cx, cy, cz]) {
                let i = rel.index(&t);
                positive[i] = r_witness(h, cx, cy, cz) || r_witness(h, cz, cy, cx);
            }
        }
    }
    for t in rel.tuples() {
        let [y, x, z] = [t[0], t[1], t[2]];
        let value = if x == y || y == z || x == z || !edge(h, &[ac.core[x], ac.core[y], ac.core[z]]) {
            Some(false)
        } else if positive[rel.index(&t)] {
            Some(true)
        } else if positive[rel.index(&[x, y, z])] || positive[rel.index(&[z, x, y])] {
            Some(false)
        } else {
            None
        };
        rel.set(&t, value);
    }
    Ok(rel)
}

/// Some `u` makes `{x,y,z,w,u}` carry exactly the non-edges `xyuz`, `xyuw`.
fn d_witness(h: &KHypergraph, x: usize, y: usize, z: usize, w: usize) -> bool {
    let own = [x, y, z, w];
    (0..h.n()).filter(|u| !own.contains(u)).any(|u| {
        edge(h, &[x, y, z, w])
            && !edge(h, &[x, y, u, z])
            && !edge(h, &[x, y, u, w])
            && edge(h, &[x, z, w, u])
            && edge(h, &[y, z, w, u])
    })
}

/// `D(x,y;z,w)` on core quadruples.
pub fn recover_d_n4(ac: &AmbientCore) -> Result<PartialRelation> {
    require(ac, Family::N4)?;
    let h = ac.graph();
    let mut rel = PartialRelation::new(4, &ac.core);
    let mut positive = vec![false; rel.len()];
    for t in rel.tuples() {
        let [x, y, z, w] = [t[0], t[1], t[2], t[3]];
        if mask_of(&[x, y, z, w]).count_ones() == 4 {
            let c = |i: usize| ac.core[i];
            let i = rel.index(&t);
            positive[i] = d_witness(h, c(x), c(y), c(z), c(w)) || d_witness(h, c(z), c(w), c(x), c(y));
        }
    }
    for t in rel.tuples() {
        let [x, y, z, w] = [t[0], t[1], t[2], t[3]];
        let value = if mask_of(&[x, y, z, w]).count_ones() < 4 {
            Some(degenerate_d(x, y, z, w))
        } else if positive[rel.index(&t)] {
            Some(true)
        } else if positive[rel.index(&[x, z, y, w])] || positive[rel.index(&[x, w, y, z])] {
            Some(false)
        } else {
            None
        };
        rel.set(&t, value);
    }
    Ok(rel)
}
