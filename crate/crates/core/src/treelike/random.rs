use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rooted::{LeafTree, Shape};
use super::unrooted::UnrootedLeafTree;
use crate::error::{Error, Result};

/// A randomly generated carrier tree.
#[derive(Clone, Debug)]
pub enum Fragment {
    Rooted(LeafTree),
    Unrooted(UnrootedLeafTree),
}

/// Random tree via recursive splitting. `branching` bounds the number of
/// children (rooted) or the internal degree (unrooted); with `strict`, every
/// split uses the largest arity the leaf count allows.
pub fn random_fragment(n: usize, branching: usize, rooted: bool, strict: bool, seed: u64) -> Result<Fragment> {
    if rooted {
        random_rooted(n, branching, strict, seed).map(Fragment::Rooted)
    } else {
        random_unrooted(n, branching, strict, seed).map(Fragment::Unrooted)
    }
}

pub fn random_rooted(n: usize, branching: usize, strict: bool, seed: u64) -> Result<LeafTree> {
    if n == 0 || branching < 2 {
        return Err(Error::InvalidInput(format!(
            "rooted fragment needs n >= 1 and branching >= 2 (got n={n}, t={branching})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = 0;
    let shape = split(n, branching, strict, &mut rng, &mut next);
    LeafTree::from_shape(&shape)
}

fn split(m: usize, t: usize, strict: bool, rng: &mut ChaCha8Rng, next: &mut usize) -> Shape {
    if m == 1 {
        *next += 1;
        return Shape::Leaf((*next - 1).to_string());
    }
    let top = t.min(m);
    let k = if strict { top } else { rng.gen_range(2..=top) };
    let mut cuts: Vec<usize> = sample(rng, m - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(m);
    let mut prev = 0;
    let mut children = Vec::with_capacity(k);
    for c in cuts {
        children.push(split(c - prev, t, strict, rng, next));
        prev = c;
    }
    Shape::Node(children)
}

pub fn random_unrooted(n: usize, max_degree: usize, strict: bool, seed: u64) -> Result<UnrootedLeafTree> {
    if n == 0 || max_degree < 3 {
        return Err(Error::InvalidInput(format!(
            "unrooted fragment needs n >= 1 and degree bound >= 3 (got n={n}, t={max_degree})"
        )));
    }
    match n {
        1 => UnrootedLeafTree::from_edges(1, 1, &[]),
        2 => UnrootedLeafTree::from_edges(2, 2, &[[0, 1]]),
        _ => {
            let base = random_rooted(n - 1, max_degree - 1, strict, seed)?;
            UnrootedLeafTree::from_rooted(&base, true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_is_deterministic() {
        let a = random_rooted(8, 2, false, 7).unwrap();
        let b = random_rooted(8, 2, false, 7).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.internal_count(), 7);
    }

    #[test]
    fn unrooted_strict_degree_three() {
        let t = random_unrooted(12, 3, true, 3).unwrap();
        assert_eq!(t.n_leaves(), 12);
        assert!(t.internal_degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn bounds_are_checked() {
        assert!(random_rooted(0, 2, false, 0).is_err());
        assert!(random_rooted(4, 1, false, 0).is_err());
        assert!(random_unrooted(4, 2, false, 0).is_err());
    }

    #[test]
    fn branching_respected() {
        for seed in 0..20 {
            let t = random_rooted(15, 4, false, seed).unwrap();
            assert!(t.max_branching() <= 4);
            let u = random_unrooted(15, 4, false, seed).unwrap();
            assert!(u.max_internal_degree() <= 4);
        }
    }
}
