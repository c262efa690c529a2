//! Simple undirected graphs on dense vertex sets `0..n`.
//!
//! Up to 64 vertices the adjacency is kept as one `u64` neighbor mask per
//! vertex; larger graphs use sorted neighbor lists. Callers never see the
//! difference.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{bad_params, Error, Result};

/// Largest vertex count stored as bit rows.
pub const MAX_BIT_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Adjacency {
    Bits(Vec<u64>),
    Lists(Vec<Vec<usize>>),
}

/// An immutable simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    degrees: Vec<usize>,
    adj: Adjacency,
}

/// Degree statistics of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Sorted ascending.
    pub degree_multiset: Vec<usize>,
}

impl DegreeSummary {
    pub fn is_regular(&self) -> bool {
        self.min_degree == self.max_degree
    }
}

impl Graph {
    /// Builds a graph from unordered vertex pairs. Loops, out-of-range
    /// endpoints and repeated pairs are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(bad_params("a graph needs at least one vertex"));
        }
        let mut b = Builder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Builds a graph from per-vertex neighbor masks (`n = rows.len() <= 64`).
    pub fn from_bit_rows(rows: Vec<u64>) -> Result<Graph> {
        let n = rows.len();
        if n == 0 || n > MAX_BIT_VERTICES {
            return Err(bad_params(format!("bit rows need 1..=64 vertices, got {n}")));
        }
        let valid = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for (v, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                return Err(Error::BadVertex { vertex: 63 - row.leading_zeros() as usize, n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::LoopEdge(v));
            }
            let mut rest = row;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rows[u] >> v & 1 == 0 {
                    return Err(bad_params(format!("adjacency not symmetric at {v}-{u}")));
                }
            }
        }
        Ok(Graph::from_bit_rows_unchecked(rows))
    }

    /// Rows must be symmetric, loop-free and confined to `0..rows.len()`.
    pub(crate) fn from_bit_rows_unchecked(rows: Vec<u64>) -> Graph {
        let degrees: Vec<usize> = rows.iter().map(|r| r.count_ones() as usize).collect();
        let m = degrees.iter().sum::<usize>() / 2;
        Graph { n: rows.len(), m, degrees, adj: Adjacency::Bits(rows) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Neighbor masks, when the graph is small enough to have them.
    pub fn bit_rows(&self) -> Option<&[u64]> {
        match &self.adj {
            Adjacency::Bits(rows) => Some(rows),
            Adjacency::Lists(_) => None,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        match &self.adj {
            Adjacency::Bits(rows) => rows[u] >> v & 1 == 1,
            Adjacency::Lists(lists) => lists[u].binary_search(&v).is_ok(),
        }
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        match &self.adj {
            Adjacency::Bits(rows) => Neighbors::Bits(rows[v]),
            Adjacency::Lists(lists) => Neighbors::List(lists[v].iter()),
        }
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let mut degree_multiset = self.degrees.clone();
        degree_multiset.sort_unstable();
        DegreeSummary {
            n: self.n,
            m: self.m,
            min_degree: degree_multiset[0],
            max_degree: degree_multiset[self.n - 1],
            degree_multiset,
        }
    }

    pub fn is_connected(&self) -> bool {
        if let Adjacency::Bits(rows) = &self.adj {
            let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
            let mut seen = 1u64;
            let mut frontier = 1u64;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= rows[v];
                }
                frontier = next & !seen;
                seen |= next;
            }
            return seen == all;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == self.n
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn is_complete(&self) -> bool {
        self.degrees.iter().all(|&d| d == self.n - 1)
    }

    /// True iff every vertex has degree `delta` or `max_degree` and every
    /// edge joins a degree-`delta` vertex to a degree-`max_degree` vertex.
    /// Always false unless `delta < max_degree`.
    pub fn is_degree_bipartition(&self, delta: usize, max_degree: usize) -> bool {
        if delta >= max_degree {
            return false;
        }
        if self.degrees.iter().any(|&d| d != delta && d != max_degree) {
            return false;
        }
        self.edges().all(|(u, v)| self.degrees[u] != self.degrees[v])
    }

    /// Parses the edge-list text format: a header line `n <count>`, then one
    /// whitespace-separated `u v` pair per line. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut builder: Option<Builder> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::BadEdgeList { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match &mut builder {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(err(format!("expected header `n <count>`, found `{line}`")));
                    }
                    let n: usize = fields[1].parse().map_err(|_| err(format!("bad vertex count `{}`", fields[1])))?;
                    if n == 0 {
                        return Err(err("vertex count must be positive".into()));
                    }
                    builder = Some(Builder::new(n));
                }
                Some(b) => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected `u v`, found `{line}`")));
                    }
                    let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad vertex `{s}`")));
                    let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                    b.add_edge(u, v).map_err(|e| err(e.to_string()))?;
                }
            }
        }
        builder
            .map(Builder::build)
            .ok_or_else(|| Error::BadEdgeList { line: 0, msg: "missing header `n <count>`".into() })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

pub enum Neighbors<'a> {
    Bits(u64),
    List(std::slice::Iter<'a, usize>),
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Neighbors::Bits(rest) => {
                if *rest == 0 {
                    return None;
                }
                let v = rest.trailing_zeros() as usize;
                *rest &= *rest - 1;
                Some(v)
            }
            Neighbors::List(it) => it.next().copied(),
        }
    }
}

/// Incremental construction with duplicate detection.
pub(crate) struct Builder {
    n: usize,
    adj: Adjacency,
    m: usize,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Builder {
        let adj = if n <= MAX_BIT_VERTICES {
            Adjacency::Bits(vec![0; n])
        } else {
            Adjacency::Lists(vec![Vec::new(); n])
        };
        Builder { n, adj, m: 0 }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::BadVertex { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        match &mut self.adj {
            Adjacency::Bits(rows) => {
                if rows[u] >> v & 1 == 1 {
                    return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
                }
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            Adjacency::Lists(lists) => {
                let pos = match lists[u].binary_search(&v) {
                    Ok(_) => return Err(Error::DuplicateEdge(u.min(v), u.max(v))),
                    Err(p) => p,
                };
                lists[u].insert(pos, v);
                let pos = lists[v].binary_search(&u).unwrap_err();
                lists[v].insert(pos, u);
            }
        }
        self.m += 1;
        Ok(())
    }

    pub(crate) fn build(self) -> Graph {
        let degrees = match &self.adj {
            Adjacency::Bits(rows) => rows.iter().map(|r| r.count_ones() as usize).collect(),
            Adjacency::Lists(lists) => lists.iter().map(Vec::len).collect(),
        };
        Graph { n: self.n, m: self.m, degrees, adj: self.adj }
    }
}

/// Builds a graph from edges the caller knows are valid.
pub(crate) fn graph_from_trusted_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let mut b = Builder::new(n);
    for (u, v) in edges {
        b.add_edge(u, v).expect("constructor produced an invalid edge");
    }
    b.build()
}
