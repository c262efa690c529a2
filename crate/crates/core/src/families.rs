//! Extremal graph families for minimum degree `delta` and maximum degree
//! `Delta`: the edge-minimal family on `Delta + 1` vertices (four cases by
//! parity), complete bipartite graphs, the two-hub graphs, and their
//! closed-form index values.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{bad_params, Result};
use crate::graph::{graph_from_trusted_edges, Graph};
use crate::graph6::write_graph6;
use crate::index::weight;
use crate::iso::are_isomorphic;

/// A named family of graphs, or one specific graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FamilySpec {
    /// `delta = Delta`: the complete graph on `Delta + 1` vertices.
    GddCase1 { delta: usize, max_degree: usize },
    /// `delta < Delta`, `Delta(delta+1)` even: `Delta` vertices of degree `delta`.
    GddCase2 { delta: usize, max_degree: usize },
    /// `delta < Delta - 1`, `Delta(delta+1)` odd: one extra vertex of degree `delta + 1`.
    GddCase3 { delta: usize, max_degree: usize },
    /// `delta = Delta - 1`, `Delta` odd: two vertices of degree `Delta`.
    GddCase4 { delta: usize, max_degree: usize },
    CompleteBipartite { delta: usize, max_degree: usize },
    HDelta { max_degree: usize },
    TwoHub { delta: usize, max_degree: usize },
    Star { max_degree: usize },
    Complete { n: usize },
    ExactGraph { graph6: String },
}

fn check_profile(delta: usize, max_degree: usize) -> Result<()> {
    if delta == 0 || delta > max_degree {
        return Err(bad_params(format!("need 1 <= delta <= Delta, got delta = {delta}, Delta = {max_degree}")));
    }
    Ok(())
}

fn odd_product(delta: usize, max_degree: usize) -> bool {
    max_degree * (delta + 1) % 2 == 1
}

impl FamilySpec {
    /// The case of the edge-minimal family that applies to `(delta, Delta)`.
    pub fn gdd(delta: usize, max_degree: usize) -> Result<FamilySpec> {
        check_profile(delta, max_degree)?;
        Ok(if delta == max_degree {
            FamilySpec::GddCase1 { delta, max_degree }
        } else if !odd_product(delta, max_degree) {
            FamilySpec::GddCase2 { delta, max_degree }
        } else if delta + 1 < max_degree {
            FamilySpec::GddCase3 { delta, max_degree }
        } else {
            FamilySpec::GddCase4 { delta, max_degree }
        })
    }

    pub fn exact(g: &Graph) -> FamilySpec {
        FamilySpec::ExactGraph { graph6: write_graph6(g) }
    }

    /// Whether `g` belongs to the family.
    pub fn contains(&self, g: &Graph) -> bool {
        match *self {
            FamilySpec::GddCase1 { delta, max_degree }
            | FamilySpec::GddCase2 { delta, max_degree }
            | FamilySpec::GddCase4 { delta, max_degree }
            | FamilySpec::GddCase3 { delta, max_degree } => {
                gdd_membership(g, delta, max_degree).as_ref() == Some(self)
            }
            FamilySpec::CompleteBipartite { delta, max_degree } => {
                g.n() == delta + max_degree
                    && g.m() == delta * max_degree
                    && construct_complete_bipartite(delta, max_degree).is_ok_and(|k| are_isomorphic(g, &k))
            }
            FamilySpec::Star { max_degree } => is_star(g) && g.max_degree() == max_degree,
            FamilySpec::Complete { n } => g.n() == n && g.is_complete(),
            FamilySpec::HDelta { max_degree } => {
                construct_h_delta(max_degree).is_ok_and(|h| are_isomorphic(g, &h))
            }
            FamilySpec::TwoHub { delta, max_degree } => {
                construct_two_hub(delta, max_degree).is_ok_and(|h| are_isomorphic(g, &h))
            }
            FamilySpec::ExactGraph { ref graph6 } => crate::graph6::parse_graph6(graph6.as_bytes())
                .is_ok_and(|h| are_isomorphic(g, &h)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::GddCase1 { delta, max_degree } => write!(f, "G({delta},{max_degree}) case 1"),
            FamilySpec::GddCase2 { delta, max_degree } => write!(f, "G({delta},{max_degree}) case 2"),
            FamilySpec::GddCase3 { delta, max_degree } => write!(f, "G({delta},{max_degree}) case 3"),
            FamilySpec::GddCase4 { delta, max_degree } => write!(f, "G({delta},{max_degree}) case 4"),
            FamilySpec::CompleteBipartite { delta, max_degree } => write!(f, "K({delta},{max_degree})"),
            FamilySpec::HDelta { max_degree } => write!(f, "H({max_degree})"),
            FamilySpec::TwoHub { delta, max_degree } => write!(f, "two-hub({delta},{max_degree})"),
            FamilySpec::Star { max_degree } => write!(f, "star K(1,{max_degree})"),
            FamilySpec::Complete { n } => write!(f, "complete K{n}"),
            FamilySpec::ExactGraph { graph6 } => write!(f, "graph {graph6}"),
        }
    }
}

fn is_star(g: &Graph) -> bool {
    g.n() >= 2 && g.m() == g.n() - 1 && g.max_degree() == g.n() - 1
}

/// Which case of the edge-minimal family `g` belongs to, if any.
pub fn gdd_membership(g: &Graph, delta: usize, max_degree: usize) -> Option<FamilySpec> {
    if delta == 0 || delta > max_degree {
        return None;
    }
    if g.n() != max_degree + 1 || g.min_degree() != delta || g.max_degree() != max_degree {
        return None;
    }
    let count = |d: usize| g.degrees().iter().filter(|&&x| x == d).count();
    let spec = FamilySpec::gdd(delta, max_degree).ok()?;
    let member = match spec {
        FamilySpec::GddCase1 { .. } => g.is_complete(),
        FamilySpec::GddCase2 { .. } => count(delta) == max_degree,
        FamilySpec::GddCase3 { .. } => {
            count(delta) == max_degree - 1 && count(delta + 1) == 1 && count(max_degree) == 1
        }
        FamilySpec::GddCase4 { .. } => count(delta) == max_degree - 1 && count(max_degree) == 2,
        _ => unreachable!(),
    };
    member.then_some(spec)
}

/// Lower bound on the edge count of any graph with degree profile
/// `(delta, Delta)`: `ceil(Delta (delta + 1) / 2)`.
pub fn min_edges(delta: usize, max_degree: usize) -> Result<usize> {
    check_profile(delta, max_degree)?;
    Ok((max_degree * (delta + 1)).div_ceil(2))
}

/// One member of the edge-minimal family on vertices `0..=Delta`, with
/// vertex 0 the hub of degree `Delta` and `1..=Delta` arranged on a ring.
pub fn construct_gdd(delta: usize, max_degree: usize) -> Result<Graph> {
    check_profile(delta, max_degree)?;
    let big = max_degree;
    if delta == big {
        return Ok(construct_complete(big + 1));
    }
    let ring_dist = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        d.min(big - d)
    };
    let mut edges: Vec<(usize, usize)> = (1..=big).map(|i| (0, i)).collect();
    let ring_reach = if delta % 2 == 1 { (delta - 1) / 2 } else { (delta - 2) / 2 };
    for i in 1..=big {
        for j in i + 1..=big {
            if ring_dist(i, j) <= ring_reach {
                edges.push((i, j));
            }
        }
    }
    if delta.is_multiple_of(2) {
        if big.is_multiple_of(2) {
            for i in 1..=big / 2 {
                edges.push((i, i + big / 2));
            }
        } else {
            let half = (big - 1) / 2;
            for i in 1..=half {
                edges.push((i, i + half));
            }
            edges.push((delta / 2 + 1, big));
        }
    }
    Ok(graph_from_trusted_edges(big + 1, edges))
}

pub fn construct_complete(n: usize) -> Graph {
    graph_from_trusted_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn construct_star(max_degree: usize) -> Result<Graph> {
    construct_complete_bipartite(1, max_degree)
}

/// `K_{delta, Delta}`: vertices `0..delta` have degree `Delta`, the other
/// `Delta` vertices have degree `delta`.
pub fn construct_complete_bipartite(delta: usize, max_degree: usize) -> Result<Graph> {
    check_profile(delta, max_degree)?;
    let n = delta + max_degree;
    Ok(graph_from_trusted_edges(n, (0..delta).flat_map(|u| (delta..n).map(move |v| (u, v)))))
}

/// `H_Delta`: adjacent hubs 0 and 1, each joined to all of `2..=Delta`.
pub fn construct_h_delta(max_degree: usize) -> Result<Graph> {
    if max_degree < 3 || max_degree.is_multiple_of(2) {
        return Err(bad_params(format!("H_Delta needs odd Delta >= 3, got {max_degree}")));
    }
    Ok(hub_pair_graph(max_degree))
}

/// The `H_Delta` shape without the parity restriction (`Delta >= 3`).
pub(crate) fn hub_pair_graph(max_degree: usize) -> Graph {
    let n = max_degree + 1;
    let edges = std::iter::once((0, 1)).chain((2..n).flat_map(|v| [(0, v), (1, v)]));
    graph_from_trusted_edges(n, edges)
}

/// Two adjacent hubs of degree `Delta` over a ring of `Delta - 1` vertices
/// carrying a `(delta - 2)`-regular circulant.
pub fn construct_two_hub(delta: usize, max_degree: usize) -> Result<Graph> {
    if delta < 3 || max_degree < delta + 2 {
        return Err(bad_params(format!("two-hub needs delta >= 3 and Delta >= delta + 2, got ({delta}, {max_degree})")));
    }
    let ring = max_degree - 1;
    let ring_degree = delta - 2;
    if ring_degree % 2 == 1 && ring % 2 == 1 {
        return Err(bad_params(format!(
            "no {ring_degree}-regular circulant on {ring} vertices (odd degree needs an even ring)"
        )));
    }
    let mut edges = vec![(0, 1)];
    for v in 2..=max_degree {
        edges.push((0, v));
        edges.push((1, v));
    }
    for i in 0..ring {
        for d in 1..=ring_degree / 2 {
            let j = (i + d) % ring;
            edges.push((i + 2, j + 2));
        }
        if ring_degree % 2 == 1 && i < ring / 2 {
            edges.push((i + 2, i + ring / 2 + 2));
        }
    }
    Ok(graph_from_trusted_edges(max_degree + 1, edges))
}

/// The 57-vertex graph with hubs of degree 56 over a 55-cycle.
pub fn construct_counterexample() -> Graph {
    let mut edges = vec![(0, 1)];
    for b in 2..57 {
        edges.push((0, b));
        edges.push((1, b));
        edges.push((b, if b == 56 { 2 } else { b + 1 }));
    }
    graph_from_trusted_edges(57, edges)
}

/// Edge counts keyed by the sorted degree pair of the endpoints.
pub fn edge_type_census(g: &Graph) -> BTreeMap<(usize, usize), usize> {
    let mut census = BTreeMap::new();
    for (u, v) in g.edges() {
        let (a, b) = (g.degree(u), g.degree(v));
        *census.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    census
}

/// Index value of every member of the edge-minimal family.
pub fn ga1_closed_form_gdd(delta: usize, max_degree: usize) -> Result<f64> {
    check_profile(delta, max_degree)?;
    let (d, big) = (delta as f64, max_degree as f64);
    Ok(if odd_product(delta, max_degree) {
        2.0 * (big - 1.0) * (d * big).sqrt() / (d + big)
            + weight(d + 1.0, big)
            + 2.0 * d * (d * (d + 1.0)).sqrt() / (2.0 * d + 1.0)
            + ((big - 2.0) * (d - 1.0) - 1.0) / 2.0
    } else {
        even_profile_value(d, big)
    })
}

/// `2 Delta sqrt(delta Delta) / (delta + Delta) + Delta (delta - 1) / 2`.
pub(crate) fn even_profile_value(d: f64, big: f64) -> f64 {
    big * weight(d, big) + big * (d - 1.0) / 2.0
}

pub fn ga1_closed_form_kdd(delta: usize, max_degree: usize) -> Result<f64> {
    check_profile(delta, max_degree)?;
    let (d, big) = (delta as f64, max_degree as f64);
    Ok(d * big * weight(d, big))
}

pub fn ga1_closed_form_hdelta(max_degree: usize) -> Result<f64> {
    if max_degree < 3 || max_degree.is_multiple_of(2) {
        return Err(bad_params(format!("H_Delta needs odd Delta >= 3, got {max_degree}")));
    }
    let big = max_degree as f64;
    Ok(2.0 * (big - 1.0) * weight(2.0, big) + 1.0)
}

/// Edge and vertex ranges a GA1-minimal graph with profile `(delta, Delta)` must fall in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalRanges {
    pub m_lo: usize,
    pub m_hi: usize,
    pub n_lo: usize,
    pub n_hi: usize,
}

impl MinimalRanges {
    pub fn contains(&self, n: usize, m: usize) -> bool {
        (self.m_lo..=self.m_hi).contains(&m) && (self.n_lo..=self.n_hi).contains(&n)
    }
}

pub fn minimal_graph_ranges(delta: usize, max_degree: usize) -> Result<MinimalRanges> {
    let m_lo = min_edges(delta, max_degree)?;
    Ok(MinimalRanges {
        m_lo,
        m_hi: delta * max_degree,
        n_lo: max_degree + 1,
        n_hi: max_degree * (2 * delta - 1) / delta + 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyComparison {
    GddGreater,
    KGreater,
    Undecided,
}

/// Compares the edge-minimal family with `K_{delta,Delta}` via the ratio
/// threshold `Delta/delta` vs `(2 + sqrt 3)^2 = 7 + 4 sqrt 3`. The threshold
/// test is exact: `Delta - 7 delta > 4 sqrt(3) delta` is decided in integers.
pub fn compare_families(delta: usize, max_degree: usize) -> Result<FamilyComparison> {
    if delta <= 1 || delta > max_degree {
        return Err(bad_params(format!("family comparison needs 1 < delta <= Delta, got ({delta}, {max_degree})")));
    }
    let excess = max_degree as i128 - 7 * delta as i128;
    let above = excess > 0 && excess * excess > 48 * (delta as i128) * (delta as i128);
    Ok(if above {
        FamilyComparison::GddGreater
    } else if !odd_product(delta, max_degree) {
        FamilyComparison::KGreater
    } else {
        FamilyComparison::Undecided
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::ga1;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn diamond() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert_eq!(gdd_membership(&construct_complete(4), 3, 3), Some(FamilySpec::GddCase1 { delta: 3, max_degree: 3 }));
        assert_eq!(gdd_membership(&diamond(), 2, 3), Some(FamilySpec::GddCase4 { delta: 2, max_degree: 3 }));
        let c5 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(gdd_membership(&c5, 2, 2), None);
        assert_eq!(gdd_membership(&diamond(), 0, 3), None);
        let k23 = construct_complete_bipartite(2, 3).unwrap();
        assert_eq!(gdd_membership(&k23, 2, 3), None);
    }

    #[test]
    fn construct_gdd_examples() {
        let star = construct_gdd(1, 5).unwrap();
        assert!(FamilySpec::Star { max_degree: 5 }.contains(&star));
        let d = construct_gdd(2, 3).unwrap();
        assert_eq!(d.degrees(), &[3, 2, 3, 2]);
        assert!(are_isomorphic(&d, &diamond()));
        assert_eq!(gdd_membership(&d, 2, 3), Some(FamilySpec::GddCase4 { delta: 2, max_degree: 3 }));
        assert!(construct_gdd(3, 3).unwrap().is_complete());
        assert!(construct_gdd(0, 3).is_err());
        assert!(construct_gdd(4, 3).is_err());
    }

    #[test]
    fn gdd_connected_and_census() {
        assert!(construct_gdd(2, 5).unwrap().is_connected());
        // case 3: one vertex of degree delta + 1
        let g = construct_gdd(4, 7).unwrap();
        assert_eq!(gdd_membership(&g, 4, 7), Some(FamilySpec::GddCase3 { delta: 4, max_degree: 7 }));
        assert_eq!(g.degree(4 / 2 + 1), 5);
    }

    #[test]
    fn complete_bipartite_examples() {
        let s = construct_complete_bipartite(1, 3).unwrap();
        assert!(FamilySpec::Star { max_degree: 3 }.contains(&s));
        assert_eq!(construct_complete_bipartite(2, 3).unwrap().m(), 6);
        assert_eq!(construct_complete_bipartite(4, 56).unwrap().m(), 224);
        assert!(construct_complete_bipartite(3, 2).is_err());
    }

    #[test]
    fn h_delta_examples() {
        let h3 = construct_h_delta(3).unwrap();
        assert_eq!(h3.m(), 5);
        assert!(are_isomorphic(&h3, &diamond()));
        assert_eq!(construct_h_delta(29).unwrap().m(), 57);
        assert!(construct_h_delta(4).is_err());
        assert!(construct_h_delta(1).is_err());
    }

    #[test]
    fn counterexample_shape() {
        let g = construct_counterexample();
        let s = g.degree_summary();
        assert_eq!((s.n, s.m, s.min_degree, s.max_degree), (57, 166, 4, 56));
        let census = edge_type_census(&g);
        assert_eq!(census[&(56, 56)], 1);
        assert_eq!(census[&(4, 56)], 110);
        assert_eq!(census[&(4, 4)], 55);
        assert!(!g.is_degree_bipartition(4, 56));
    }

    #[test]
    fn two_hub_examples() {
        let t = construct_two_hub(4, 56).unwrap();
        assert_eq!(edge_type_census(&t), edge_type_census(&construct_counterexample()));
        assert!(are_isomorphic(&t, &construct_counterexample()));
        assert!(construct_two_hub(3, 6).is_err());
        let g = construct_two_hub(4, 10).unwrap();
        let mut degs = g.degrees().to_vec();
        degs.sort_unstable();
        assert_eq!(degs, [vec![4; 9], vec![10; 2]].concat());
        // odd ring degree on an even ring uses antipodes
        let g = construct_two_hub(3, 7).unwrap();
        assert!(g.degrees()[2..].iter().all(|&d| d == 3));
        assert!(construct_two_hub(2, 7).is_err());
        assert!(construct_two_hub(5, 6).is_err());
    }

    #[test]
    fn min_edges_examples() {
        assert_eq!(min_edges(4, 56).unwrap(), 140);
        assert_eq!(min_edges(2, 3).unwrap(), 5);
        assert_eq!(min_edges(1, 7).unwrap(), 7);
        assert!(min_edges(3, 1).is_err());
    }

    #[test]
    fn closed_forms() {
        assert!(close(ga1_closed_form_gdd(4, 56).unwrap(), 111.937_708_487_912_1, 1e-9));
        assert!(close(ga1_closed_form_gdd(2, 3).unwrap(), 4.919_183_588_453_085, 1e-12));
        assert!(close(ga1_closed_form_gdd(3, 3).unwrap(), 6.0, 1e-12));
        assert!(close(ga1_closed_form_kdd(4, 56).unwrap(), 111.750_833_951_648_38, 1e-9));
        assert!(close(ga1_closed_form_kdd(2, 3).unwrap(), 5.878_775_382_679_627, 1e-12));
        assert!(close(ga1_closed_form_kdd(1, 1).unwrap(), 1.0, 1e-15));
        assert!(close(ga1_closed_form_hdelta(3).unwrap(), 4.919_183_588_453_085, 1e-12));
        assert!(close(ga1_closed_form_hdelta(29).unwrap(), 28.515_051_221_185_73, 1e-9));
        assert!(close(ga1_closed_form_hdelta(27).unwrap(), 27.353_131_025_805_23, 1e-9));
        assert!(ga1_closed_form_hdelta(28).is_err());
    }

    #[test]
    fn closed_forms_match_constructions() {
        for big in 1..=30 {
            for delta in 1..=big {
                let g = construct_gdd(delta, big).unwrap();
                assert!(close(ga1(&g).unwrap(), ga1_closed_form_gdd(delta, big).unwrap(), 1e-9));
                let k = construct_complete_bipartite(delta, big).unwrap();
                assert!(close(ga1(&k).unwrap(), ga1_closed_form_kdd(delta, big).unwrap(), 1e-9));
                if odd_product(delta, big) {
                    let even = even_profile_value(delta as f64, big as f64);
                    assert!(ga1_closed_form_gdd(delta, big).unwrap() > even, "({delta},{big})");
                }
            }
        }
        for big in (3..=41).step_by(2) {
            let h = construct_h_delta(big).unwrap();
            assert!(close(ga1(&h).unwrap(), ga1_closed_form_hdelta(big).unwrap(), 1e-9));
        }
    }

    #[test]
    fn ranges() {
        let r = minimal_graph_ranges(2, 3).unwrap();
        assert_eq!((r.m_lo, r.m_hi, r.n_lo, r.n_hi), (5, 6, 4, 5));
        for big in 1..20 {
            let r = minimal_graph_ranges(1, big).unwrap();
            assert_eq!((r.m_lo, r.m_hi, r.n_lo, r.n_hi), (big, big, big + 1, big + 1));
        }
        let r = minimal_graph_ranges(4, 56).unwrap();
        assert_eq!((r.m_lo, r.m_hi, r.n_lo, r.n_hi), (140, 224, 57, 99));
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(compare_families(2, 28).unwrap(), FamilyComparison::GddGreater);
        assert_eq!(compare_families(2, 4).unwrap(), FamilyComparison::KGreater);
        assert_eq!(compare_families(2, 3).unwrap(), FamilyComparison::Undecided);
        assert!(ga1_closed_form_gdd(4, 56).unwrap() > ga1_closed_form_kdd(4, 56).unwrap());
        assert_eq!(compare_families(4, 56).unwrap(), FamilyComparison::GddGreater);
        assert!(compare_families(1, 5).is_err());
    }

    #[test]
    fn comparison_agrees_with_closed_forms() {
        for big in 2..=200 {
            for delta in 2..=big {
                let diff = ga1_closed_form_gdd(delta, big).unwrap() - ga1_closed_form_kdd(delta, big).unwrap();
                match compare_families(delta, big).unwrap() {
                    FamilyComparison::GddGreater => assert!(diff > 0.0, "({delta},{big})"),
                    FamilyComparison::KGreater => assert!(diff < 0.0, "({delta},{big})"),
                    FamilyComparison::Undecided => {}
                }
            }
        }
    }

    #[test]
    fn family_spec_dispatch() {
        assert_eq!(FamilySpec::gdd(2, 4).unwrap(), FamilySpec::GddCase2 { delta: 2, max_degree: 4 });
        assert_eq!(FamilySpec::gdd(2, 5).unwrap(), FamilySpec::GddCase3 { delta: 2, max_degree: 5 });
        assert!(FamilySpec::CompleteBipartite { delta: 2, max_degree: 3 }.contains(&construct_complete_bipartite(2, 3).unwrap()));
        assert!(FamilySpec::Complete { n: 4 }.contains(&construct_complete(4)));
        assert!(FamilySpec::HDelta { max_degree: 5 }.contains(&construct_h_delta(5).unwrap()));
        assert!(FamilySpec::exact(&diamond()).contains(&construct_gdd(2, 3).unwrap()));
        assert_eq!(FamilySpec::gdd(2, 3).unwrap().to_string(), "G(2,3) case 4");
    }
}
