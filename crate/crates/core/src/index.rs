//! The first geometric-arithmetic index and the edge-count bounds it
//! obeys.

use serde::Serialize;

use crate::error::{bad_params, Error, Result};
use crate::graph::Graph;
use crate::report::sig10;

/// Default absolute tolerance for comparing index values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Ratio of geometric to arithmetic mean of two degrees,
/// `2 sqrt(du dv) / (du + dv)`.
pub fn edge_weight(du: usize, dv: usize) -> Result<f64> {
    if du == 0 || dv == 0 {
        return Err(Error::BadDegree(du.min(dv)));
    }
    Ok(weight(du as f64, dv as f64))
}

/// Unchecked real-valued form of [`edge_weight`].
#[inline]
pub fn weight(x: f64, y: f64) -> f64 {
    2.0 * (x * y).sqrt() / (x + y)
}

/// `GA1(G)`: the sum of [`edge_weight`] over all edges. Isolated vertices
/// contribute nothing.
pub fn ga1(g: &Graph) -> Result<f64> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(ga1_unchecked(g))
}

pub(crate) fn ga1_unchecked(g: &Graph) -> f64 {
    let deg = g.degrees();
    g.edges().map(|(u, v)| weight(deg[u] as f64, deg[v] as f64)).sum()
}

/// `f(t) = 2t / (1 + t^2)`; `weight(x, y) = f(sqrt(x / y))`.
pub fn f_lemma(t: f64) -> f64 {
    2.0 * t / (1.0 + t * t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicBounds {
    #[serde(serialize_with = "sig10")]
    pub lower: f64,
    #[serde(serialize_with = "sig10")]
    pub upper: f64,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

/// `2m sqrt(delta Delta) / (delta + Delta) <= GA1 <= m`.
pub fn classic_bounds(m: usize, min_degree: usize, max_degree: usize) -> Result<ClassicBounds> {
    if m == 0 || min_degree == 0 || min_degree > max_degree {
        return Err(bad_params(format!(
            "classic bounds need m >= 1 and 1 <= delta <= Delta (m = {m}, delta = {min_degree}, Delta = {max_degree})"
        )));
    }
    Ok(ClassicBounds {
        lower: m as f64 * weight(min_degree as f64, max_degree as f64),
        upper: m as f64,
        m,
        min_degree,
        max_degree,
    })
}

/// Structural test for equality in the classic lower bound: the graph is
/// regular, or its degree-`delta` and degree-`Delta` vertices form the two
/// sides of a bipartition.
pub fn classic_lower_equality(g: &Graph) -> Result<bool> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (lo, hi) = (g.min_degree(), g.max_degree());
    if lo == 0 {
        return Err(Error::BadDegree(0));
    }
    Ok(lo == hi || g.is_degree_bipartition(lo, hi))
}
