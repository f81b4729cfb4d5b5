//! Finite relational structures: linear orders, fixed-arity relations,
//! tournaments, and the axiom checkers for C- and D-relations.
//!
//! Relations are stored as explicit bit tables over all ordered tuples,
//! including tuples with repeated entries. The degenerate clauses of the
//! axioms (C4, D4) are therefore part of the stored relation, and the
//! checkers evaluate the axioms exactly as written.

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count for which relations are materialized.
pub const MAX_RELATION_VERTICES: usize = 40;

/// A strict total order on `{0..n-1}`, stored as the position of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinOrder {
    rank: Vec<usize>,
    by_rank: Vec<usize>,
}

impl FinOrder {
    /// Builds the order from `rank[v]`, the position of vertex `v`.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let n = rank.len();
        let mut by_rank = vec![usize::MAX; n];
        for (v, &r) in rank.iter().enumerate() {
            if r >= n || by_rank[r] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "rank array is not a bijection on 0..{n}"
                )));
            }
            by_rank[r] = v;
        }
        Ok(FinOrder { rank, by_rank })
    }

    /// Builds the order listing `seq[0] < seq[1] < ...`.
    pub fn from_sequence(seq: &[usize]) -> Result<Self> {
        let n = seq.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in seq.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::InvalidInput(
                    "sequence is not a permutation of the vertices".into(),
                ));
            }
            rank[v] = pos;
        }
        Ok(FinOrder { by_rank: seq.to_vec(), rank })
    }

    /// The natural order `0 < 1 < ... < n-1`.
    pub fn natural(n: usize) -> Self {
        FinOrder {
            rank: (0..n).collect(),
            by_rank: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.rank[x] < self.rank[y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rank[x] <= self.rank[y]
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.by_rank
    }

    /// The order induced on `vertices`, relabelled `0..len` in the given listing.
    pub fn induced(&self, vertices: &[usize]) -> FinOrder {
        let mut idx: Vec<usize> = (0..vertices.len()).collect();
        idx.sort_by_key(|&i| self.rank[vertices[i]]);
        FinOrder::from_sequence(&idx).expect("induced order is a permutation")
    }

    /// The reversed order.
    pub fn reversed(&self) -> FinOrder {
        let seq: Vec<usize> = self.by_rank.iter().rev().copied().collect();
        FinOrder::from_sequence(&seq).expect("reversal is a permutation")
    }
}

/// A relation of fixed arity `A` on `{0..n-1}`, defined on every ordered
/// `A`-tuple (repeats included).
#[derive(Clone, PartialEq, Eq)]
pub struct Relation<const A: usize> {
    n: usize,
    bits: BitVec,
}

/// Ternary relations: C, betweenness B, circular order K, tournament-derived R.
pub type TernaryRel = Relation<3>;
/// Quaternary relations: D and the separation relation S.
pub type QuaternaryRel = Relation<4>;

impl<const A: usize> std::fmt::Debug for Relation<A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Relation")
            .field("arity", &A)
            .field("n", &self.n)
            .field("holding", &self.count())
            .finish()
    }
}

impl<const A: usize> Relation<A> {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_RELATION_VERTICES, "relation on {n} vertices is too large");
        Relation {
            n,
            bits: bitvec![0; n.pow(A as u32)],
        }
    }

    /// Evaluates `f` on every ordered tuple.
    pub fn from_fn(n: usize, mut f: impl FnMut([usize; A]) -> bool) -> Self {
        let mut rel = Self::empty(n);
        for (i, t) in all_tuples::<A>(n).enumerate() {
            if f(t) {
                rel.bits.set(i, true);
            }
        }
        rel
    }

    /// Builds a relation holding exactly on the listed tuples.
    pub fn from_tuples(n: usize, tuples: &[[usize; A]]) -> Result<Self> {
        let mut rel = Self::empty(n);
        for t in tuples {
            for &v in t {
                if v >= n {
                    return Err(Error::OutOfRange { vertex: v, n });
                }
            }
            rel.set(*t, true);
        }
        Ok(rel)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        A
    }

    fn index(&self, t: [usize; A]) -> usize {
        t.iter().fold(0, |acc, &v| {
            debug_assert!(v < self.n);
            acc * self.n + v
        })
    }

    pub fn holds(&self, t: [usize; A]) -> bool {
        self.bits[self.index(t)]
    }

    pub fn set(&mut self, t: [usize; A], value: bool) {
        let i = self.index(t);
        self.bits.set(i, value);
    }

    /// A copy with the value at `t` negated.
    pub fn flipped(&self, t: [usize; A]) -> Self {
        let mut out = self.clone();
        let v = out.holds(t);
        out.set(t, !v);
        out
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    /// Tuples on which the relation holds, in lexicographic order.
    pub fn tuples(&self) -> Vec<[usize; A]> {
        all_tuples::<A>(self.n)
            .enumerate()
            .filter(|(i, _)| self.bits[*i])
            .map(|(_, t)| t)
            .collect()
    }

    /// The relation induced on `vertices`, relabelled `0..len` in listing order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |t| self.holds(t.map(|i| vertices[i])))
    }

    pub fn to_doc(&self) -> RelationDoc {
        RelationDoc {
            n: self.n,
            arity: A,
            tuples: self.tuples().iter().map(|t| t.to_vec()).collect(),
        }
    }

    pub fn from_doc(doc: &RelationDoc) -> Result<Self> {
        if doc.arity != A {
            return Err(Error::InvalidInput(format!(
                "expected arity {A}, document has arity {}",
                doc.arity
            )));
        }
        let mut tuples = Vec::with_capacity(doc.tuples.len());
        for t in &doc.tuples {
            let arr: [usize; A] = t.as_slice().try_into().map_err(|_| {
                Error::InvalidInput(format!("tuple {t:?} does not have arity {A}"))
            })?;
            tuples.push(arr);
        }
        Self::from_tuples(doc.n, &tuples)
    }
}

/// Every ordered `A`-tuple over `{0..n-1}` in lexicographic order.
pub fn all_tuples<const A: usize>(n: usize) -> impl Iterator<Item = [usize; A]> {
    let total = if n == 0 { 0 } else { n.pow(A as u32) };
    (0..total).map(move |mut i| {
        let mut t = [0usize; A];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    })
}

/// JSON form of a relation: the tuples on which it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub n: usize,
    pub arity: usize,
    pub tuples: Vec<Vec<usize>>,
}

/// A tournament: exactly one arc between any two distinct vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    arcs: BitVec,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let arcs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.arc(x, y))
            .collect();
        f.debug_struct("Tournament").field("n", &self.n).field("arcs", &arcs).finish()
    }
}

impl Tournament {
    /// Builds a tournament from a predicate on ordered pairs; the predicate
    /// must orient every pair of distinct vertices exactly once.
    pub fn from_fn(n: usize, mut arc: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut bits = bitvec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y && arc(x, y) {
                    bits.set(x * n + y, true);
                }
            }
        }
        let t = Tournament { n, arcs: bits };
        for x in 0..n {
            for y in x + 1..n {
                if t.arc(x, y) == t.arc(y, x) {
                    return Err(Error::InvalidInput(format!(
                        "pair ({x},{y}) is not oriented exactly once"
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x → y`.
    pub fn arc(&self, x: usize, y: usize) -> bool {
        self.arcs[x * self.n + y]
    }

    /// The out-neighbourhood `x⁺`.
    pub fn out_set(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.arc(x, y)).collect()
    }

    /// The in-neighbourhood `x⁻`.
    pub fn in_set(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.arc(y, x)).collect()
    }

    /// True when the subtournament on `vertices` has no directed 3-cycle.
    pub fn is_transitive_on(&self, vertices: &[usize]) -> bool {
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                for &c in vertices.iter().skip(j + 1) {
                    if self.is_cycle(a, b, c) {
                        return false;
                    }
                }
            }
            let _ = a;
        }
        true
    }

    /// True when `{a,b,c}` is a directed 3-cycle in either direction.
    pub fn is_cycle(&self, a: usize, b: usize, c: usize) -> bool {
        (self.arc(a, b) && self.arc(b, c) && self.arc(c, a))
            || (self.arc(b, a) && self.arc(c, b) && self.arc(a, c))
    }

    /// Every out- and in-neighbourhood is transitive.
    pub fn is_local_order(&self) -> bool {
        (0..self.n).all(|x| self.is_transitive_on(&self.out_set(x)) && self.is_transitive_on(&self.in_set(x)))
    }

    /// The relation `R(x;y,z)`: `x` is the middle of a transitive triple.
    pub fn middle_relation(&self) -> TernaryRel {
        TernaryRel::from_fn(self.n, |[x, y, z]| {
            if x == y || y == z || x == z {
                return false;
            }
            (self.arc(y, x) && self.arc(y, z) && self.arc(x, z))
                || (self.arc(z, x) && self.arc(z, y) && self.arc(x, y))
        })
    }

    /// The subtournament on `vertices`, relabelled in listing order.
    pub fn induced(&self, vertices: &[usize]) -> Tournament {
        Tournament::from_fn(vertices.len(), |a, b| self.arc(vertices[a], vertices[b]))
            .expect("subtournament of a tournament")
    }
}

/// Relations derivable from a linear order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderRelationKind {
    Betweenness,
    Circular,
    Separation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderRelation {
    Ternary(TernaryRel),
    Quaternary(QuaternaryRel),
}

/// Linear betweenness `B(x;y,z)`: x lies (weakly) between y and z.
pub fn betweenness(ord: &FinOrder) -> TernaryRel {
    TernaryRel::from_fn(ord.n(), |[x, y, z]| {
        (ord.leq(y, x) && ord.leq(x, z)) || (ord.leq(z, x) && ord.leq(x, y))
    })
}

/// Circular order `K(x,y,z)` read off the linear order.
pub fn circular(ord: &FinOrder) -> TernaryRel {
    TernaryRel::from_fn(ord.n(), |[x, y, z]| {
        (ord.leq(x, y) && ord.leq(y, z))
            || (ord.leq(y, z) && ord.leq(z, x))
            || (ord.leq(z, x) && ord.leq(x, y))
    })
}

/// Separation `S(x,y;z,w)` computed from the circular order derived from `ord`.
pub fn separation(ord: &FinOrder) -> QuaternaryRel {
    let k = circular(ord);
    QuaternaryRel::from_fn(ord.n(), |[x, y, z, w]| {
        (k.holds([x, y, z]) && k.holds([x, w, y])) || (k.holds([x, z, y]) && k.holds([x, y, w]))
    })
}

pub fn derive_order_relations(ord: &FinOrder, kind: OrderRelationKind) -> Result<OrderRelation> {
    if ord.n() == 0 {
        return Err(Error::InvalidInput("order must have at least one vertex".into()));
    }
    Ok(match kind {
        OrderRelationKind::Betweenness => OrderRelation::Ternary(betweenness(ord)),
        OrderRelationKind::Circular => OrderRelation::Ternary(circular(ord)),
        OrderRelationKind::Separation => OrderRelation::Quaternary(separation(ord)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CAxiom {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
}

impl CAxiom {
    pub const ALL: [CAxiom; 8] = [
        CAxiom::C1,
        CAxiom::C2,
        CAxiom::C3,
        CAxiom::C4,
        CAxiom::C5,
        CAxiom::C6,
        CAxiom::C7,
        CAxiom::C8,
    ];
    pub const UNIVERSAL: [CAxiom; 4] = [CAxiom::C1, CAxiom::C2, CAxiom::C3, CAxiom::C4];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DAxiom {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
}

impl DAxiom {
    pub const ALL: [DAxiom; 6] = [DAxiom::D1, DAxiom::D2, DAxiom::D3, DAxiom::D4, DAxiom::D5, DAxiom::D6];
    pub const UNIVERSAL: [DAxiom; 4] = [DAxiom::D1, DAxiom::D2, DAxiom::D3, DAxiom::D4];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    /// Existential axiom: reported as the fraction of antecedent instances
    /// that have a witness inside the finite structure.
    #[serde(rename = "witnessed-coverage")]
    Coverage,
}

/// Outcome of checking one axiom on a finite relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub status: AxiomStatus,
    pub coverage: Option<f64>,
    pub witness: Option<Vec<usize>>,
}

impl AxiomReport {
    fn universal(axiom: impl ToString, counterexample: Option<Vec<usize>>) -> Self {
        AxiomReport {
            axiom: axiom.to_string(),
            status: if counterexample.is_some() { AxiomStatus::Fail } else { AxiomStatus::Pass },
            coverage: None,
            witness: counterexample,
        }
    }

    fn coverage(axiom: impl ToString, witnessed: usize, instances: usize) -> Self {
        let ratio = if instances == 0 { 1.0 } else { witnessed as f64 / instances as f64 };
        AxiomReport {
            axiom: axiom.to_string(),
            status: AxiomStatus::Coverage,
            coverage: Some(ratio),
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == AxiomStatus::Pass
    }
}

impl std::fmt::Display for CAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::fmt::Display for DAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

fn first_failure<const A: usize>(n: usize, mut bad: impl FnMut([usize; A]) -> bool) -> Option<Vec<usize>> {
    all_tuples::<A>(n).find(|t| bad(*t)).map(|t| t.to_vec())
}

/// Checks the requested C-axioms. C1–C4 are universal and reported pass/fail
/// with a counterexample; C5–C8 are reported as witnessed coverage. C8 reads
/// `Min`/`Max` from `order`, which is then required.
pub fn check_c_axioms(c: &TernaryRel, which: &[CAxiom], order: Option<&FinOrder>) -> Result<Vec<AxiomReport>> {
    let n = c.n();
    if which.contains(&CAxiom::C8) {
        match order {
            None => return Err(Error::InvalidInput("C8 needs a linear order".into())),
            Some(o) if o.n() != n => {
                return Err(Error::InvalidInput(format!(
                    "order has {} vertices, relation has {n}",
                    o.n()
                )))
            }
            _ => {}
        }
    }
    let holds = |x, y, z| c.holds([x, y, z]);
    let mut out = Vec::with_capacity(which.len());
    for &ax in which {
        let report = match ax {
            CAxiom::C1 => AxiomReport::universal(ax, first_failure(n, |[x, y, z]| holds(x, y, z) && !holds(x, z, y))),
            CAxiom::C2 => AxiomReport::universal(ax, first_failure(n, |[x, y, z]| holds(x, y, z) && holds(y, x, z))),
            CAxiom::C3 => AxiomReport::universal(
                ax,
                first_failure(n, |[x, y, z, w]| holds(x, y, z) && !(holds(x, w, z) || holds(w, y, z))),
            ),
            CAxiom::C4 => AxiomReport::universal(ax, first_failure(n, |[x, y]| x != y && !holds(x, y, y))),
            CAxiom::C5 => {
                let witnessed = all_tuples::<2>(n).filter(|&[y, z]| (0..n).any(|x| holds(x, y, z))).count();
                AxiomReport::coverage(ax, witnessed, n * n)
            }
            CAxiom::C6 => {
                let mut instances = 0;
                let mut witnessed = 0;
                for [x, y] in all_tuples::<2>(n) {
                    if x != y {
                        instances += 1;
                        if (0..n).any(|z| y != z && holds(x, y, z)) {
                            witnessed += 1;
                        }
                    }
                }
                AxiomReport::coverage(ax, witnessed, instances)
            }
            CAxiom::C7 => {
                let mut instances = 0;
                let mut witnessed = 0;
                for [x, y, z] in all_tuples::<3>(n) {
                    if holds(x, y, z) {
                        instances += 1;
                        if (0..n).any(|w| holds(w, y, z) && holds(x, y, w)) {
                            witnessed += 1;
                        }
                    }
                }
                AxiomReport::coverage(ax, witnessed, instances)
            }
            CAxiom::C8 => {
                let ord = order.expect("checked above");
                let mut instances = 0;
                let mut witnessed = 0;
                for [x, y, z] in all_tuples::<3>(n) {
                    if !holds(x, y, z) {
                        continue;
                    }
                    instances += 1;
                    let (lo, hi) = if ord.less(y, z) { (y, z) } else { (z, y) };
                    let low = (0..n).any(|w| holds(w, y, z) && holds(x, y, w) && ord.less(w, lo));
                    let high = (0..n).any(|w| holds(w, y, z) && holds(x, y, w) && ord.less(hi, w));
                    if low && high {
                        witnessed += 1;
                    }
                }
                AxiomReport::coverage(ax, witnessed, instances)
            }
        };
        out.push(report);
    }
    Ok(out)
}

/// Checks the requested D-axioms. D1–D4 pass/fail; D5, D6 witnessed coverage.
pub fn check_d_axioms(d: &QuaternaryRel, which: &[DAxiom]) -> Vec<AxiomReport> {
    let n = d.n();
    let holds = |x, y, z, w| d.holds([x, y, z, w]);
    which
        .iter()
        .map(|&ax| match ax {
            DAxiom::D1 => AxiomReport::universal(
                ax,
                first_failure(n, |[x, y, z, w]| {
                    holds(x, y, z, w) && !(holds(y, x, z, w) && holds(x, y, w, z) && holds(z, w, x, y))
                }),
            ),
            DAxiom::D2 => AxiomReport::universal(
                ax,
                first_failure(n, |[x, y, z, w]| holds(x, y, z, w) && holds(x, z, y, w)),
            ),
            DAxiom::D3 => AxiomReport::universal(
                ax,
                first_failure(n, |[x, y, z, w, u]| {
                    holds(x, y, z, w) && !(holds(u, y, z, w) || holds(x, y, z, u))
                }),
            ),
            DAxiom::D4 => AxiomReport::universal(
                ax,
                first_failure(n, |[x, y, z]| x != z && y != z && !holds(x, y, z, z)),
            ),
            DAxiom::D5 => {
                let mut instances = 0;
                let mut witnessed = 0;
                for [x, y, z] in all_tuples::<3>(n) {
                    if x != y && y != z && x != z {
                        instances += 1;
                        if (0..n).any(|w| w != z && holds(x, y, z, w)) {
                            witnessed += 1;
                        }
                    }
                }
                AxiomReport::coverage(ax, witnessed, instances)
            }
            DAxiom::D6 => {
                let mut instances = 0;
                let mut witnessed = 0;
                for [x, y, z, w] in all_tuples::<4>(n) {
                    if holds(x, y, z, w) {
                        instances += 1;
                        if (0..n).any(|u| {
                            holds(u, y, z, w) && holds(x, u, z, w) && holds(x, y, u, w) && holds(x, y, z, u)
                        }) {
                            witnessed += 1;
                        }
                    }
                }
                AxiomReport::coverage(ax, witnessed, instances)
            }
        })
        .collect()
}

fn require_c_relation(c: &TernaryRel) -> Result<()> {
    let reports = check_c_axioms(c, &CAxiom::UNIVERSAL, None)?;
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Error::NotCRelation(format!("{} fails at {:?}", r.axiom, r.witness))),
        None => Ok(()),
    }
}

fn require_d_relation(d: &QuaternaryRel) -> Result<()> {
    match check_d_axioms(d, &DAxiom::UNIVERSAL).iter().find(|r| !r.passed()) {
        Some(r) => Err(Error::NotDRelation(format!("{} fails at {:?}", r.axiom, r.witness))),
        None => Ok(()),
    }
}

/// The D-relation induced by a C-relation. On distinct quadruples
/// `D(x,y;z,w) ⇔ (C(x;z,w) ∧ C(y;z,w)) ∨ (C(z;x,y) ∧ C(w;x,y))`; on
/// quadruples with repeats, D holds exactly when `{x,y}` and `{z,w}` are
/// disjoint and one of the pairs is a repeated point (the D4 clause closed
/// under D1).
pub fn d_from_c(c: &TernaryRel) -> Result<QuaternaryRel> {
    require_c_relation(c)?;
    Ok(QuaternaryRel::from_fn(c.n(), |[x, y, z, w]| {
        let distinct = x != y && x != z && x != w && y != z && y != w && z != w;
        if distinct {
            (c.holds([x, z, w]) && c.holds([y, z, w])) || (c.holds([z, x, y]) && c.holds([w, x, y]))
        } else {
            degenerate_d(x, y, z, w)
        }
    }))
}

/// Value of D on a quadruple with a repeated entry.
pub fn degenerate_d(x: usize, y: usize, z: usize, w: usize) -> bool {
    let disjoint = x != z && x != w && y != z && y != w;
    disjoint && (x == y || z == w)
}

/// The C-relation `C_a(x;y,z) ⇔ D(a,x;y,z)` on the vertices other than `a`.
/// Returns the relation on `0..n-1` together with the original vertex of
/// each new label.
pub fn c_from_d(d: &QuaternaryRel, a: usize) -> Result<(TernaryRel, Vec<usize>)> {
    let n = d.n();
    if a >= n {
        return Err(Error::OutOfRange { vertex: a, n });
    }
    require_d_relation(d)?;
    let rest: Vec<usize> = (0..n).filter(|&v| v != a).collect();
    let c = TernaryRel::from_fn(rest.len(), |[x, y, z]| d.holds([a, rest[x], rest[y], rest[z]]));
    Ok((c, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betweenness_and_circular_examples() {
        // vertices 0,1,2 stand for 1<2<3
        let ord = FinOrder::natural(3);
        let b = betweenness(&ord);
        assert!(b.holds([1, 0, 2]));
        assert!(!b.holds([0, 1, 2]));
        let k = circular(&ord);
        assert!(k.holds([1, 2, 0]));
        assert!(!k.holds([0, 2, 1]));
    }

    #[test]
    fn order_from_ranks_rejects_non_bijection() {
        assert!(FinOrder::from_ranks(vec![0, 0, 1]).is_err());
        assert!(FinOrder::from_sequence(&[2, 0, 3]).is_err());
    }

    #[test]
    fn order_induced_and_reversed() {
        let ord = FinOrder::from_sequence(&[3, 1, 0, 2]).unwrap();
        assert!(ord.less(3, 0));
        let sub = ord.induced(&[0, 3]);
        assert!(sub.less(1, 0));
        assert!(ord.reversed().less(0, 3));
    }

    #[test]
    fn c8_requires_order() {
        let c = TernaryRel::empty(3);
        assert!(check_c_axioms(&c, &[CAxiom::C8], None).is_err());
        assert!(check_c_axioms(&c, &[CAxiom::C8], Some(&FinOrder::natural(3))).is_ok());
    }

    #[test]
    fn two_point_c4_clause() {
        let c = TernaryRel::from_tuples(2, &[[0, 1, 1], [1, 0, 0]]).unwrap();
        let r = check_c_axioms(&c, &CAxiom::UNIVERSAL, None).unwrap();
        assert!(r.iter().all(|r| r.passed()), "{r:?}");
    }

    #[test]
    fn missing_c4_clause_is_reported() {
        let c = TernaryRel::from_tuples(2, &[[0, 1, 1]]).unwrap();
        let r = check_c_axioms(&c, &[CAxiom::C4], None).unwrap();
        assert_eq!(r[0].status, AxiomStatus::Fail);
        assert_eq!(r[0].witness, Some(vec![1, 0]));
    }

    #[test]
    fn degenerate_only_d_passes_universal_axioms() {
        let d = QuaternaryRel::from_fn(5, |[x, y, z, w]| {
            let distinct = x != y && x != z && x != w && y != z && y != w && z != w;
            !distinct && degenerate_d(x, y, z, w)
        });
        let r = check_d_axioms(&d, &DAxiom::UNIVERSAL);
        assert!(r.iter().all(|r| r.passed()), "{r:?}");
    }

    #[test]
    fn d_from_c_rejects_non_c_relation() {
        let c = TernaryRel::from_tuples(3, &[[0, 1, 2], [1, 0, 2]]).unwrap();
        assert!(matches!(d_from_c(&c), Err(Error::NotCRelation(_))));
    }

    #[test]
    fn c_from_d_rejects_out_of_range() {
        let d = QuaternaryRel::empty(4);
        assert!(matches!(c_from_d(&d, 4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn tournament_validation() {
        assert!(Tournament::from_fn(3, |x, y| x < y).is_ok());
        assert!(Tournament::from_fn(3, |_, _| true).is_err());
        let c3 = Tournament::from_fn(3, |x, y| (y + 3 - x) % 3 == 1).unwrap();
        assert!(c3.is_cycle(0, 1, 2));
        assert!(!c3.is_transitive_on(&[0, 1, 2]));
        assert!(c3.is_local_order());
    }

    #[test]
    fn relation_doc_round_trip() {
        let c = TernaryRel::from_tuples(3, &[[0, 1, 1], [2, 0, 1]]).unwrap();
        let doc = c.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(json, r#"{"n":3,"arity":3,"tuples":[[0,1,1],[2,0,1]]}"#);
        assert_eq!(TernaryRel::from_doc(&doc).unwrap(), c);
        assert!(QuaternaryRel::from_doc(&doc).is_err());
    }

    #[test]
    fn axiom_report_json_shape() {
        let r = AxiomReport::universal(CAxiom::C2, Some(vec![0, 1, 2]));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["axiom"], "C2");
        assert_eq!(v["status"], "fail");
        assert!(v["coverage"].is_null());
        assert_eq!(v["witness"], serde_json::json!([0, 1, 2]));
        let c = AxiomReport::coverage(CAxiom::C5, 1, 4);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["status"], "witnessed-coverage");
        assert_eq!(v["coverage"], 0.25);
    }
}
