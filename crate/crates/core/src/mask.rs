//! Upper-triangle bitmask encoding for graphs on at most 11 vertices.
//!
//! Edge `(i, j)`, `i < j`, occupies bit `rank(i, j)` where pairs are ranked
//! lexicographically: `(0,1), (0,2), ..., (0,n-1), (1,2), ...`. Comparing
//! masks as integers therefore compares the edge sets from the pair
//! `(n-2, n-1)` downwards.

use crate::graph::Graph;

/// Largest `n` whose `n(n-1)/2` pairs fit in a `u64`.
pub const MAX_MASK_VERTICES: usize = 11;

#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
pub fn edge_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Pairs indexed by rank.
pub fn pairs_by_rank(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn mask_of(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_MASK_VERTICES, "mask encoding needs n <= {MAX_MASK_VERTICES}");
    g.edges().fold(0u64, |acc, (i, j)| acc | 1 << edge_rank(g.n(), i, j))
}

pub fn rows_from_mask(n: usize, mask: u64) -> Vec<u64> {
    let mut rows = vec![0u64; n];
    let mut rest = mask;
    let pairs = pairs_by_rank(n);
    while rest != 0 {
        let r = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (i, j) = pairs[r];
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
    }
    rows
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    assert!((1..=MAX_MASK_VERTICES).contains(&n));
    assert!(pair_count(n) == 64 || mask >> pair_count(n) == 0, "mask has bits beyond n = {n}");
    Graph::from_bit_rows_unchecked(rows_from_mask(n, mask))
}
