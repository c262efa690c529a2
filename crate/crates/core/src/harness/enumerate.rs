//! Exhaustive enumeration of labeled graphs on at most nine vertices.
//!
//! Graphs are produced in increasing mask order (see [`crate::mask`]). The
//! search decides pairs from the highest rank down, absent before present,
//! and prunes on degree caps, reachable minimum degree and edge budget. The
//! decision tree is split at a fixed depth into contiguous mask ranges for
//! parallel work; results are merged in range order, so output does not
//! depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::canonical_mask;
use crate::mask::{pair_count, pairs_by_rank};

/// Largest vertex count the enumerator accepts.
pub const MAX_ENUM_VERTICES: usize = 9;

/// What to enumerate. Degree constraints are on all `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumSpec {
    pub n: usize,
    pub require_connected: bool,
    /// Exact minimum degree.
    pub min_degree: Option<usize>,
    /// Exact maximum degree.
    pub max_degree: Option<usize>,
    /// Every degree at least this.
    pub degree_floor: Option<usize>,
    /// Every degree at most this.
    pub degree_cap: Option<usize>,
    pub max_edges: Option<usize>,
    /// Emit one representative (the minimum mask) per isomorphism class.
    pub dedup_isomorphic: bool,
}

impl EnumSpec {
    /// Connected graphs on `n` vertices, all labelings.
    pub fn connected(n: usize) -> EnumSpec {
        EnumSpec {
            n,
            require_connected: true,
            min_degree: None,
            max_degree: None,
            degree_floor: None,
            degree_cap: None,
            max_edges: None,
            dedup_isomorphic: false,
        }
    }

    pub fn all(n: usize) -> EnumSpec {
        EnumSpec { require_connected: false, ..EnumSpec::connected(n) }
    }

    pub fn with_profile(mut self, delta: usize, max_degree: usize) -> EnumSpec {
        self.min_degree = Some(delta);
        self.max_degree = Some(max_degree);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_ENUM_VERTICES).contains(&self.n) {
            return Err(Error::BadSpec(format!("n must be in 2..={MAX_ENUM_VERTICES}, got {}", self.n)));
        }
        if let (Some(lo), Some(hi)) = (self.min_degree, self.max_degree) {
            if lo > hi {
                return Err(Error::BadSpec(format!("min degree {lo} exceeds max degree {hi}")));
            }
        }
        Ok(())
    }

    fn lower(&self) -> usize {
        let mut lo = self.min_degree.unwrap_or(0).max(self.degree_floor.unwrap_or(0));
        if self.require_connected && self.n >= 2 {
            lo = lo.max(1);
        }
        lo
    }

    fn upper(&self) -> usize {
        let cap = self.max_degree.unwrap_or(usize::MAX).min(self.degree_cap.unwrap_or(usize::MAX));
        cap.min(self.n - 1)
    }

    fn accepts(&self, deg: &[u8], rows: &[u64]) -> bool {
        let (lo, hi) = deg.iter().fold((u8::MAX, 0u8), |(a, b), &d| (a.min(d), b.max(d)));
        if self.min_degree.is_some_and(|d| d != lo as usize) || self.max_degree.is_some_and(|d| d != hi as usize) {
            return false;
        }
        if (lo as usize) < self.lower() || hi as usize > self.upper() {
            return false;
        }
        if self.require_connected && !rows_connected(rows) {
            return false;
        }
        true
    }
}

fn rows_connected(rows: &[u64]) -> bool {
    let n = rows.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = rows[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == all
}

/// Depth-first walk over one contiguous block of the decision tree.
struct Walk {
    /// decision index -> pair; decision `d` is the pair of rank `e - 1 - d`
    pairs: Vec<(usize, usize)>,
    e: usize,
    base: usize,
    depth: usize,
    /// per depth: 0 untried, 1 absent chosen, 2 present chosen
    state: Vec<u8>,
    applied: Vec<bool>,
    deg: Vec<u8>,
    rem: Vec<u8>,
    rows: Vec<u64>,
    edges: usize,
    mask: u64,
    lo: usize,
    hi: usize,
    budget: usize,
    at_leaf: bool,
    done: bool,
}

impl Walk {
    fn new(spec: &EnumSpec, prefix: u64, prefix_len: usize) -> Walk {
        let n = spec.n;
        let e = pair_count(n);
        let mut pairs = pairs_by_rank(n);
        pairs.reverse();
        let mut w = Walk {
            pairs,
            e,
            base: prefix_len,
            depth: 0,
            state: vec![0; e + 1],
            applied: vec![false; e + 1],
            deg: vec![0; n],
            rem: vec![(n - 1) as u8; n],
            rows: vec![0; n],
            edges: 0,
            mask: 0,
            lo: spec.lower(),
            hi: spec.upper(),
            budget: spec.max_edges.unwrap_or(usize::MAX),
            at_leaf: false,
            done: false,
        };
        for d in 0..prefix_len {
            let present = prefix >> (prefix_len - 1 - d) & 1 == 1;
            if !w.apply(d, present) {
                w.done = true;
                break;
            }
        }
        w.depth = prefix_len;
        w
    }

    fn apply(&mut self, d: usize, present: bool) -> bool {
        let (u, v) = self.pairs[d];
        if present {
            if self.deg[u] as usize + 1 > self.hi || self.deg[v] as usize + 1 > self.hi || self.edges + 1 > self.budget {
                return false;
            }
        } else if (self.deg[u] + self.rem[u] - 1) < self.lo as u8 || (self.deg[v] + self.rem[v] - 1) < self.lo as u8 {
            return false;
        }
        self.rem[u] -= 1;
        self.rem[v] -= 1;
        if present {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.rows[u] |= 1 << v;
            self.rows[v] |= 1 << u;
            self.edges += 1;
            self.mask |= 1 << (self.e - 1 - d);
        }
        true
    }

    fn undo(&mut self, d: usize, present: bool) {
        let (u, v) = self.pairs[d];
        self.rem[u] += 1;
        self.rem[v] += 1;
        if present {
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            self.rows[u] &= !(1 << v);
            self.rows[v] &= !(1 << u);
            self.edges -= 1;
            self.mask &= !(1 << (self.e - 1 - d));
        }
    }

    /// Advance to the next leaf; the walk state then describes it.
    fn next_leaf(&mut self) -> bool {
        if self.done {
            return false;
        }
        loop {
            let d = self.depth;
            if d == self.e {
                if !self.at_leaf {
                    self.at_leaf = true;
                    return true;
                }
                self.at_leaf = false;
                if d == self.base {
                    self.done = true;
                    return false;
                }
                self.depth -= 1;
                continue;
            }
            if self.applied[d] {
                self.undo(d, self.state[d] == 2);
                self.applied[d] = false;
            }
            match self.state[d] {
                0 | 1 => {
                    self.state[d] += 1;
                    if self.apply(d, self.state[d] == 2) {
                        self.applied[d] = true;
                        self.depth += 1;
                        self.state[self.depth] = 0;
                    }
                }
                _ => {
                    self.state[d] = 0;
                    if d == self.base {
                        self.done = true;
                        return false;
                    }
                    self.depth -= 1;
                }
            }
        }
    }
}

/// Iterator over the graphs of one block, in increasing mask order.
pub struct GraphIter {
    spec: EnumSpec,
    walk: Walk,
}

impl Iterator for GraphIter {
    type Item = (u64, Graph);

    fn next(&mut self) -> Option<(u64, Graph)> {
        while self.walk.next_leaf() {
            if !self.spec.accepts(&self.walk.deg, &self.walk.rows) {
                continue;
            }
            let g = Graph::from_bit_rows_unchecked(self.walk.rows.clone());
            if self.spec.dedup_isomorphic && canonical_mask(&g) != self.walk.mask {
                continue;
            }
            return Some((self.walk.mask, g));
        }
        None
    }
}

/// All graphs matching `spec` with their masks, in increasing mask order.
pub fn enumerate(spec: &EnumSpec) -> Result<GraphIter> {
    spec.validate()?;
    Ok(GraphIter { spec: spec.clone(), walk: Walk::new(spec, 0, 0) })
}

/// Like [`enumerate`] but yields graphs only.
pub fn enumerate_graphs(spec: &EnumSpec) -> Result<impl Iterator<Item = Graph>> {
    Ok(enumerate(spec)?.map(|(_, g)| g))
}

fn split_depth(e: usize) -> usize {
    e.min(11)
}

/// The contiguous blocks the decision tree is split into, in mask order.
pub fn blocks(spec: &EnumSpec) -> Result<Vec<GraphIter>> {
    spec.validate()?;
    let k = split_depth(pair_count(spec.n));
    Ok((0..1u64 << k).map(|p| GraphIter { spec: spec.clone(), walk: Walk::new(spec, p, k) }).collect())
}

/// Fold every enumerated graph in parallel. Each block is folded from
/// `identity()` and the block results are merged left to right in mask
/// order, so an associative `merge` gives a thread-count independent result.
pub fn par_fold<T, I, F, M>(spec: &EnumSpec, identity: I, fold: F, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(T, u64, Graph) -> T + Sync,
    M: Fn(T, T) -> T,
{
    let parts: Vec<T> = blocks(spec)?
        .into_par_iter()
        .map(|block| block.fold(identity(), |acc, (mask, g)| fold(acc, mask, g)))
        .collect();
    Ok(parts.into_iter().reduce(merge).unwrap_or_else(identity))
}

/// Number of graphs matching `spec`.
pub fn count(spec: &EnumSpec) -> Result<u64> {
    par_fold(spec, || 0u64, |c, _, _| c + 1, |a, b| a + b)
}
