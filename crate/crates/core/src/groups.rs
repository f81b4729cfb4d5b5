//! Permutation groups of small degree, materialized element by element.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{k_subsets, map_mask, vertices_of};

/// Largest group order materialized.
pub const MAX_ORDER: usize = 1_000_000;
/// Largest degree accepted by [`classify_action`].
pub const MAX_CLASSIFY_DEGREE: usize = 12;

/// A permutation of `{0..n-1}` given by its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!("{image:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= n {
                    return Err(Error::OutOfRange { vertex: x, n });
                }
                image[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Permutation::new(image)
    }

    /// Permutation given by `f` on `0..n`.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Permutation::new((0..n).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Image of a vertex set given as a bitmask.
    pub fn apply_mask(&self, mask: u64) -> u64 {
        map_mask(mask, &self.0)
    }

    /// Sign: true for even permutations.
    pub fn is_even(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }
}

/// A permutation group with all of its elements listed.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    lookup: HashSet<Permutation>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in increasing image-array order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.lookup.contains(p)
    }

    /// Builds the group from a complete, closed element list and picks a
    /// small generating set greedily.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        let lookup: HashSet<Permutation> = elements.iter().cloned().collect();
        if !lookup.contains(&Permutation::identity(degree)) {
            return Err(Error::InvalidInput("element list lacks the identity".into()));
        }
        for a in &elements {
            if a.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: a.degree() });
            }
        }
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        let mut sorted = elements.clone();
        sorted.sort();
        for e in &sorted {
            if span.len() == lookup.len() {
                break;
            }
            if !span.contains(e) {
                generators.push(e.clone());
                span = close_set(degree, &generators, MAX_ORDER)?;
            }
        }
        if span.len() != lookup.len() || !span.iter().all(|p| lookup.contains(p)) {
            return Err(Error::InvalidInput("element list is not a group".into()));
        }
        Ok(PermGroup { degree, generators, elements: sorted, lookup })
    }

    /// Elements fixing every point in `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Vec<Permutation> {
        self.elements.iter().filter(|g| points.iter().all(|&p| g.apply(p) == p)).cloned().collect()
    }

    /// Elements mapping the vertex set `mask` onto itself.
    pub fn setwise_stabilizer(&self, mask: u64) -> Vec<Permutation> {
        self.elements.iter().filter(|g| g.apply_mask(mask) == mask).cloned().collect()
    }
}

fn close_set(degree: usize, generators: &[Permutation], bound: usize) -> Result<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let next = e.then(g);
            if !seen.contains(&next) {
                if seen.len() >= bound {
                    return Err(Error::BudgetExceeded(bound));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Breadth-first closure of `generators`; fails once more than `bound`
/// elements appear.
pub fn close_group(degree: usize, generators: &[Permutation], bound: usize) -> Result<PermGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let bound = bound.min(MAX_ORDER);
    let lookup = close_set(degree, generators, bound)?;
    let mut elements: Vec<Permutation> = lookup.iter().cloned().collect();
    elements.sort();
    Ok(PermGroup { degree, generators: generators.to_vec(), elements, lookup })
}

/// Lexicographic key of a vertex mask (the sorted vertex list).
pub fn lex_key(mask: u64) -> Vec<usize> {
    vertices_of(mask)
}

/// Orbits of the group on `k`-subsets. Each orbit is sorted
/// lexicographically; orbits are ordered by their first member.
pub fn orbits_on_subsets(g: &PermGroup, k: usize) -> Result<Vec<Vec<u64>>> {
    if k > g.degree() {
        return Err(Error::InvalidInput(format!("subset size {k} exceeds degree {}", g.degree())));
    }
    let mut all: Vec<u64> = k_subsets(g.degree(), k).collect();
    all.sort_by_key(|&m| lex_key(m));
    let mut assigned: HashSet<u64> = HashSet::new();
    let mut orbits = Vec::new();
    for &s in &all {
        if assigned.contains(&s) {
            continue;
        }
        let mut orbit = vec![s];
        assigned.insert(s);
        let mut i = 0;
        while i < orbit.len() {
            let cur = orbit[i];
            for gen in g.generators() {
                let img = gen.apply_mask(cur);
                if assigned.insert(img) {
                    orbit.push(img);
                }
            }
            i += 1;
        }
        orbit.sort_by_key(|&m| lex_key(m));
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Number of orbits on ordered `k`-tuples of distinct points.
pub fn orbit_count_on_tuples(g: &PermGroup, k: usize) -> usize {
    let n = g.degree();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &tuples {
            for x in 0..n {
                if !t.contains(&x) {
                    let mut u = t.clone();
                    u.push(x);
                    next.push(u);
                }
            }
        }
        tuples = next;
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut count = 0;
    for t in tuples {
        if seen.contains(&t) {
            continue;
        }
        count += 1;
        let mut queue = vec![t.clone()];
        seen.insert(t);
        while let Some(cur) = queue.pop() {
            for gen in g.generators() {
                let img: Vec<usize> = cur.iter().map(|&x| gen.apply(x)).collect();
                if seen.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
    }
    count
}

/// Summary of how a group acts on its points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionProfile {
    pub degree: usize,
    pub order: usize,
    /// Largest `t` with the group `t`-transitive (0 if intransitive).
    pub transitivity_degree: usize,
    /// The `k ≤ 5` for which the group is transitive on `k`-subsets.
    pub homogeneous_degrees: Vec<usize>,
    pub primitive: bool,
    pub two_primitive: bool,
    pub three_primitive: bool,
    /// Number of orbits on `k`-subsets, `k ≤ 6`.
    pub subset_orbit_counts: BTreeMap<usize, usize>,
}

impl ActionProfile {
    pub fn is_k_transitive(&self, k: usize) -> bool {
        self.transitivity_degree >= k
    }

    pub fn is_k_homogeneous(&self, k: usize) -> bool {
        self.homogeneous_degrees.contains(&k)
    }
}

/// Whether the permutations act transitively on `points`.
fn transitive_on(elements: &[Permutation], points: &[usize]) -> bool {
    let Some(&start) = points.first() else { return true };
    let reached: HashSet<usize> = elements.iter().map(|g| g.apply(start)).collect();
    points.iter().all(|p| reached.contains(p))
}

/// Whether the permutations (which must preserve `points`) act primitively:
/// transitive with no block system other than the trivial ones.
pub fn primitive_on(elements: &[Permutation], points: &[usize]) -> bool {
    if !transitive_on(elements, points) {
        return false;
    }
    if points.len() <= 2 {
        return true;
    }
    let start = points[0];
    for &y in &points[1..] {
        if minimal_block(elements, points, start, y).len() < points.len() {
            return false;
        }
    }
    true
}

/// Smallest block containing `a` and `b`.
fn minimal_block(elements: &[Permutation], points: &[usize], a: usize, b: usize) -> Vec<usize> {
    let n = elements.first().map(|g| g.degree()).unwrap_or(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    let mut queue = VecDeque::from([(a, b)]);
    let ra = find(&mut parent, a);
    let rb = find(&mut parent, b);
    parent[rb] = ra;
    while let Some((x, y)) = queue.pop_front() {
        for g in elements {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[ry] = rx;
                queue.push_back((gx, gy));
            }
        }
    }
    let root = find(&mut parent, a);
    points.iter().copied().filter(|&p| find(&mut parent, p) == root).collect()
}

/// Transitivity, homogeneity, primitivity and subset-orbit data.
pub fn classify_action(g: &PermGroup) -> Result<ActionProfile> {
    let n = g.degree();
    if n > MAX_CLASSIFY_DEGREE {
        return Err(Error::SizeCap { what: "group degree", size: n, cap: MAX_CLASSIFY_DEGREE });
    }
    // t-transitivity through the chain of point stabilizers of 0,1,2,...
    let mut stabilizers: Vec<Vec<Permutation>> = vec![g.elements().to_vec()];
    let mut transitivity_degree = 0;
    for i in 0..n {
        let h = stabilizers.last().unwrap();
        let rest: Vec<usize> = (i..n).collect();
        if !transitive_on(h, &rest) {
            break;
        }
        transitivity_degree = i + 1;
        let next: Vec<Permutation> = h.iter().filter(|p| p.apply(i) == i).cloned().collect();
        stabilizers.push(next);
    }
    let mut homogeneous_degrees = Vec::new();
    let mut subset_orbit_counts = BTreeMap::new();
    for k in 1..=n.min(6) {
        let c = orbits_on_subsets(g, k)?.len();
        subset_orbit_counts.insert(k, c);
        if k <= 5 && c == 1 {
            homogeneous_degrees.push(k);
        }
    }
    let t_primitive = |t: usize| -> bool {
        if transitivity_degree < t || t == 0 {
            return false;
        }
        let rest: Vec<usize> = (t - 1..n).collect();
        primitive_on(&stabilizers[t - 1], &rest)
    };
    Ok(ActionProfile {
        degree: n,
        order: g.order(),
        transitivity_degree,
        homogeneous_degrees,
        primitive: t_primitive(1),
        two_primitive: t_primitive(2),
        three_primitive: t_primitive(3),
        subset_orbit_counts,
    })
}

fn affine_prime(p: usize, root: usize) -> Result<Vec<Permutation>> {
    Ok(vec![
        Permutation::from_fn(p, |x| (x + 1) % p)?,
        Permutation::from_fn(p, |x| (x * root) % p)?,
    ])
}

/// Multiplication in GF(8) with `α³ = α + 1`, elements as 3-bit vectors.
fn gf8_mul(a: usize, b: usize) -> usize {
    let mut r = 0usize;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for bit in (3..5).rev() {
        if r >> bit & 1 == 1 {
            r ^= 0b1011 << (bit - 3);
        }
    }
    r
}

/// PSL₂(q) on the projective line `{0..q-1, ∞=q}` for prime `q`:
/// generated by `x+1`, multiplication by a nonzero square, and `-1/x`.
fn psl2_prime(q: usize, square: usize) -> Result<Vec<Permutation>> {
    let inf = q;
    let inv = |x: usize| (1..q).find(|&y| x * y % q == 1).unwrap();
    Ok(vec![
        Permutation::from_fn(q + 1, |x| if x == inf { inf } else { (x + 1) % q })?,
        Permutation::from_fn(q + 1, |x| if x == inf { inf } else { x * square % q })?,
        Permutation::from_fn(q + 1, |x| {
            if x == inf {
                0
            } else if x == 0 {
                inf
            } else {
                (q - inv(x)) % q
            }
        })?,
    ])
}

/// Generators of a catalog group, with its degree.
pub fn named_generators(name: &str) -> Result<(usize, Vec<Permutation>)> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    let (head, arg) = match compact.split_once('(') {
        Some((h, rest)) => {
            let arg = rest.strip_suffix(')').ok_or_else(unknown)?;
            (h.to_string(), arg.parse::<usize>().map_err(|_| unknown())?)
        }
        None => return Err(unknown()),
    };
    let gens = match (head.as_str(), arg) {
        ("sym", n) if n >= 1 => {
            let mut g = Vec::new();
            if n >= 2 {
                g.push(Permutation::from_cycles(n, &[&[0, 1]])?);
                let cycle: Vec<usize> = (0..n).collect();
                g.push(Permutation::from_cycles(n, &[&cycle])?);
            }
            (n, g)
        }
        ("alt", n) if n >= 1 => {
            let g = (2..n).map(|i| Permutation::from_cycles(n, &[&[0, 1, i]])).collect::<Result<_>>()?;
            (n, g)
        }
        ("cyclic", m) if m >= 1 => (m, vec![Permutation::from_fn(m, |x| (x + 1) % m)?]),
        ("dihedral", m) if m >= 3 => (
            m,
            vec![Permutation::from_fn(m, |x| (x + 1) % m)?, Permutation::from_fn(m, |x| (m - x) % m)?],
        ),
        ("agl1", 5) => (5, affine_prime(5, 2)?),
        ("agl1", 7) => (7, affine_prime(7, 3)?),
        ("agl1", 8) => {
            let mut g: Vec<Permutation> =
                [1, 2, 4].iter().map(|&t| Permutation::from_fn(8, |x| x ^ t)).collect::<Result<_>>()?;
            g.push(Permutation::from_fn(8, |x| gf8_mul(x, 2))?);
            (8, g)
        }
        ("psl3", 2) => (
            7,
            vec![
                Permutation::from_fn(7, |x| (x + 1) % 7)?,
                Permutation::from_fn(7, |x| (2 * x) % 7)?,
                Permutation::new(vec![0, 1, 4, 3, 2, 6, 5])?,
            ],
        ),
        ("psl2", 5) => (6, psl2_prime(5, 4)?),
        ("psl2", 7) => (8, psl2_prime(7, 2)?),
        _ => return Err(unknown()),
    };
    Ok(gens)
}

/// A catalog group: `sym(n)`, `alt(n)`, `cyclic(m)`, `dihedral(m)`,
/// `agl1(5)`, `agl1(7)`, `agl1(8)`, `psl3(2)`, `psl2(5)`, `psl2(7)`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    let (degree, gens) = named_generators(name)?;
    close_group(degree, &gens, MAX_ORDER)
}

/// Minimal 2-transitive groups of each small degree, by catalog name.
pub fn minimal_two_transitive(n: usize) -> Result<Vec<&'static str>> {
    Ok(match n {
        3 => vec!["sym(3)"],
        4 => vec!["alt(4)"],
        5 => vec!["agl1(5)", "alt(5)"],
        6 => vec!["psl2(5)"],
        7 => vec!["agl1(7)", "psl3(2)"],
        8 => vec!["agl1(8)", "psl2(7)"],
        _ => return Err(Error::InvalidInput(format!("no 2-transitive catalog for degree {n}"))),
    })
}
