//! Isomorphism testing and minimum-mask canonical forms.

use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::mask::{edge_rank, graph_from_mask, MAX_MASK_VERTICES};

/// Smallest upper-triangle mask over all relabelings of `g`
/// (`g.n() <= 11`).
///
/// Labels are assigned from `n-1` downwards, which fixes the mask from its
/// most significant bit; branches whose prefix already exceeds the best
/// complete mask are cut, and twin vertices (same neighborhood apart from
/// each other) are tried only once per level.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= MAX_MASK_VERTICES, "canonical masks need n <= {MAX_MASK_VERTICES}");
    if n <= 1 {
        return 0;
    }
    let rows: Vec<u64> = g.bit_rows().expect("small graphs use bit rows").to_vec();
    let mut lower_twins = vec![0u64; n];
    for w in 0..n {
        for v in 0..w {
            let others = !(1u64 << v | 1u64 << w);
            if (rows[v] ^ rows[w]) & others == 0 {
                lower_twins[w] |= 1 << v;
            }
        }
    }
    let mut search = Canon { n, rows, lower_twins, label: vec![0; n], best: u64::MAX };
    let all = (1u64 << n) - 1;
    search.assign(n - 1, all, 0);
    search.best
}

struct Canon {
    n: usize,
    rows: Vec<u64>,
    lower_twins: Vec<u64>,
    /// label -> vertex
    label: Vec<usize>,
    best: u64,
}

impl Canon {
    fn assign(&mut self, k: usize, unused: u64, partial: u64) {
        let n = self.n;
        let mut cands = unused;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if self.lower_twins[v] & unused != 0 {
                continue;
            }
            let mut bits = partial;
            for j in k + 1..n {
                if self.rows[v] >> self.label[j] & 1 == 1 {
                    bits |= 1 << edge_rank(n, k, j);
                }
            }
            if k + 1 < n {
                let floor = edge_rank(n, k, k + 1);
                let high = !((1u64 << floor) - 1);
                if bits & high > self.best & high {
                    continue;
                }
            }
            self.label[k] = v;
            if k == 0 {
                self.best = self.best.min(bits);
            } else {
                self.assign(k - 1, unused & !(1 << v), bits);
            }
        }
    }
}

/// The relabeled graph realizing [`canonical_mask`].
pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_mask(g.n(), canonical_mask(g))
}

/// graph6 of the canonical form; graphs too large to canonicalize are
/// written as given.
pub fn canonical_graph6(g: &Graph) -> String {
    if g.n() <= MAX_MASK_VERTICES {
        write_graph6(&canonical_form(g))
    } else {
        write_graph6(g)
    }
}

/// Backtracking isomorphism test with degree filtering. Vertices of `g` are
/// matched in breadth-first order starting from the rarest degree class, so
/// every vertex after the first in a component is constrained by an
/// already-matched neighbor.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let n = g.n();
    let mut dg = g.degrees().to_vec();
    let mut dh = h.degrees().to_vec();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let order = match_order(g);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, h, &order, 0, &mut map, &mut used)
}

fn match_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut freq = std::collections::HashMap::new();
    for &d in g.degrees() {
        *freq.entry(d).or_insert(0usize) += 1;
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (freq[&g.degree(v)], v));
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    order
}

fn extend(g: &Graph, h: &Graph, order: &[usize], idx: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if idx == order.len() {
        return true;
    }
    let x = order[idx];
    // If x has a matched neighbor, candidates are confined to that image's neighborhood.
    let anchor = g.neighbors(x).find(|&a| map[a] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(a) => h.neighbors(map[a]).collect(),
        None => (0..h.n()).collect(),
    };
    for c in candidates {
        if used[c] || h.degree(c) != g.degree(x) {
            continue;
        }
        let consistent = order[..idx].iter().all(|&a| g.has_edge(x, a) == h.has_edge(c, map[a]));
        if !consistent {
            continue;
        }
        map[x] = c;
        used[c] = true;
        if extend(g, h, order, idx + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[c] = false;
    }
    false
}
