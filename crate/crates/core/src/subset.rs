//! Vertex subsets as `u64` bitmasks.
//!
//! Every structure in the crate has at most 64 vertices, so a subset fits in
//! one word. Iteration over k-subsets follows increasing mask value, which is
//! colexicographic order on the sorted vertex lists.

/// Largest vertex count representable by a mask.
pub const MAX_VERTICES: usize = 64;

pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

pub fn vertices_of(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        out.push(v);
        mask &= mask - 1;
    }
    out
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All k-subsets of `{0..n-1}` in increasing mask order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    assert!(n <= MAX_VERTICES);
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full_mask(k))
    };
    KSubsets { n, next }
}

pub struct KSubsets {
    n: usize,
    next: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                if self.n < 64 && nxt >> self.n != 0 {
                    None
                } else {
                    Some(nxt)
                }
            }
        };
        Some(cur)
    }
}

/// All k-subsets of the vertices in `mask`, as masks.
pub fn k_subsets_of(mask: u64, k: usize) -> impl Iterator<Item = u64> {
    let verts = vertices_of(mask);
    k_subsets(verts.len(), k).map(move |local| {
        let mut m = 0u64;
        let mut bits = local;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            m |= 1u64 << verts[i];
            bits &= bits - 1;
        }
        m
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Image of a mask under a vertex map.
pub fn map_mask(mask: u64, image: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        out |= 1u64 << image[v];
        bits &= bits - 1;
    }
    out
}
