//! Searches over constructed families and small graphs: candidates beating
//! both extremal families, GA1-minimal graphs per degree profile, and
//! perturbation checks for minimum degree two.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::bounds::min_degree_two_bound;
use crate::error::{bad_params, Error, Result};
use crate::families::{
    construct_complete_bipartite, construct_gdd, construct_two_hub, ga1_closed_form_gdd, ga1_closed_form_kdd,
    hub_pair_graph, minimal_graph_ranges, MinimalRanges,
};
use crate::graph::{graph_from_trusted_edges, Graph};
use crate::graph6::write_graph6;
use crate::harness::enumerate::{enumerate, par_fold, EnumSpec, MAX_ENUM_VERTICES};
use crate::harness::verify::{Mismatch, VerificationReport, Violation};
use crate::index::{ga1_unchecked, DEFAULT_TOLERANCE};
use crate::iso::canonical_mask;
use crate::mask::graph_from_mask;
use crate::report::sig10;

/// Comparison of a graph with the smaller of the two family values for its
/// degree profile.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub delta: usize,
    pub max_degree: usize,
    #[serde(serialize_with = "sig10")]
    pub lhs: f64,
    #[serde(serialize_with = "sig10")]
    pub rhs: f64,
    #[serde(serialize_with = "sig10")]
    pub gdd_value: f64,
    #[serde(serialize_with = "sig10")]
    pub kdd_value: f64,
    pub violates: bool,
}

/// `lhs = GA1(g)`, `rhs = min(gdd, kdd)` for the profile of `g`; the graph
/// violates when `lhs < rhs - 1e-9`.
pub fn check_candidate(g: &Graph) -> Result<Candidate> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (delta, max_degree) = (g.min_degree(), g.max_degree());
    if delta < 2 {
        return Err(bad_params(format!("candidate check needs minimum degree >= 2, got {delta}")));
    }
    let gdd_value = ga1_closed_form_gdd(delta, max_degree)?;
    let kdd_value = ga1_closed_form_kdd(delta, max_degree)?;
    let lhs = ga1_unchecked(g);
    let rhs = gdd_value.min(kdd_value);
    Ok(Candidate { delta, max_degree, lhs, rhs, gdd_value, kdd_value, violates: lhs < rhs - DEFAULT_TOLERANCE })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub graph6: String,
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub max_degree: usize,
    #[serde(serialize_with = "sig10")]
    pub lhs: f64,
    #[serde(serialize_with = "sig10")]
    pub rhs: f64,
    /// `rhs - lhs`.
    #[serde(serialize_with = "sig10")]
    pub margin: f64,
}

fn witness(g: &Graph, c: &Candidate, source: &str) -> Witness {
    Witness {
        graph6: write_graph6(g),
        source: source.to_string(),
        n: g.n(),
        m: g.m(),
        delta: c.delta,
        max_degree: c.max_degree,
        lhs: c.lhs,
        rhs: c.rhs,
        margin: c.rhs - c.lhs,
    }
}

/// Graphs below both family values. Two-hub graphs are tried for every
/// feasible profile in the ranges; connected graphs on `2..=n_exhaustive`
/// vertices with a profile in the ranges are searched exhaustively (one
/// witness per isomorphism class). Sorted by margin, largest first.
pub fn search_counterexamples(
    deltas: RangeInclusive<usize>,
    max_degrees: RangeInclusive<usize>,
    n_exhaustive: usize,
) -> Result<Vec<Witness>> {
    if n_exhaustive > MAX_ENUM_VERTICES {
        return Err(Error::BadSpec(format!("exhaustive search needs n <= {MAX_ENUM_VERTICES}, got {n_exhaustive}")));
    }
    let mut out = Vec::new();
    for delta in deltas.clone() {
        for big in max_degrees.clone() {
            if let Ok(g) = construct_two_hub(delta, big) {
                let c = check_candidate(&g)?;
                if c.violates {
                    out.push(witness(&g, &c, "two-hub"));
                }
            }
        }
    }
    let lo = (*deltas.start()).max(2);
    let hi = *max_degrees.end();
    if !deltas.is_empty() && !max_degrees.is_empty() && lo <= hi {
        // the closed forms per profile, computed once
        let mut table = BTreeMap::new();
        for delta in deltas.clone() {
            for big in max_degrees.clone() {
                if delta >= 2 && delta <= big {
                    let rhs = ga1_closed_form_gdd(delta, big)?.min(ga1_closed_form_kdd(delta, big)?);
                    table.insert((delta, big), rhs);
                }
            }
        }
        for n in 3..=n_exhaustive {
            let spec = EnumSpec { degree_floor: Some(lo), degree_cap: Some(hi), ..EnumSpec::connected(n) };
            let found = par_fold(
                &spec,
                BTreeSet::new,
                |mut acc: BTreeSet<u64>, _, g| {
                    let key = (g.min_degree(), g.max_degree());
                    if let Some(&rhs) = table.get(&key) {
                        if ga1_unchecked(&g) < rhs - DEFAULT_TOLERANCE {
                            acc.insert(canonical_mask(&g));
                        }
                    }
                    acc
                },
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )?;
            for mask in found {
                let g = graph_from_mask(n, mask);
                let c = check_candidate(&g)?;
                out.push(witness(&g, &c, "exhaustive"));
            }
        }
    }
    out.sort_by(|a, b| b.margin.total_cmp(&a.margin).then_with(|| a.graph6.cmp(&b.graph6)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalSearch {
    pub delta: usize,
    pub max_degree: usize,
    pub n_max: usize,
    #[serde(serialize_with = "sig10")]
    pub min_value: f64,
    /// Canonical graph6 of every minimizer class, sorted.
    pub witnesses: Vec<String>,
    pub ranges: MinimalRanges,
    /// Every witness lies in the edge and vertex ranges.
    pub within_ranges: bool,
    /// `n_max` reaches the top of the vertex range, so the search is complete.
    pub complete: bool,
}

/// Minimize GA1 over connected graphs with profile `(delta, Delta)` on at
/// most `n_max` vertices.
pub fn search_minimal(delta: usize, max_degree: usize, n_max: usize) -> Result<MinimalSearch> {
    let ranges = minimal_graph_ranges(delta, max_degree)?;
    if n_max > MAX_ENUM_VERTICES || max_degree + 1 > n_max {
        return Err(Error::BadSpec(format!(
            "need Delta + 1 <= n_max <= {MAX_ENUM_VERTICES}, got Delta = {max_degree}, n_max = {n_max}"
        )));
    }
    let tol = DEFAULT_TOLERANCE;
    let mut best = f64::INFINITY;
    let mut minimizers: BTreeSet<(usize, u64)> = BTreeSet::new();
    for n in max_degree + 1..=n_max {
        let spec = EnumSpec::connected(n).with_profile(delta, max_degree);
        for (_, g) in enumerate(&spec)? {
            let v = ga1_unchecked(&g);
            if v < best - tol {
                best = v;
                minimizers.clear();
            }
            if v <= best + tol {
                best = best.min(v);
                minimizers.insert((n, canonical_mask(&g)));
            }
        }
    }
    if minimizers.is_empty() {
        return Err(Error::NoGraphs(format!("no connected graph with profile ({delta}, {max_degree}) on at most {n_max} vertices")));
    }
    let graphs: Vec<Graph> = minimizers.iter().map(|&(n, mask)| graph_from_mask(n, mask)).collect();
    let within_ranges = graphs.iter().all(|g| ranges.contains(g.n(), g.m()));
    let witnesses: BTreeSet<String> = graphs.iter().map(write_graph6).collect();
    Ok(MinimalSearch {
        delta,
        max_degree,
        n_max,
        min_value: best,
        witnesses: witnesses.into_iter().collect(),
        ranges,
        within_ranges,
        complete: n_max >= ranges.n_hi,
    })
}

/// `K_{2,Delta}` with the edge from degree-two vertex `2` to hub `0`
/// replaced by a path through a new vertex.
fn subdivided_k2(max_degree: usize) -> Graph {
    let n = max_degree + 3;
    let new = n - 1;
    let mut edges: Vec<(usize, usize)> = (2..max_degree + 2).flat_map(|v| [(0, v), (1, v)]).filter(|&e| e != (0, 2)).collect();
    edges.extend([(0, new), (new, 2)]);
    graph_from_trusted_edges(n, edges)
}

fn k2_with_chord(max_degree: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (2..max_degree + 2).flat_map(|v| [(0, v), (1, v)]).collect();
    edges.push((2, 3));
    graph_from_trusted_edges(max_degree + 2, edges)
}

/// The perturbation battery for one `Delta`, each graph with minimum
/// degree two and maximum degree `Delta`.
pub fn min_degree_two_battery(max_degree: usize) -> Result<Vec<(String, Graph)>> {
    if max_degree < 4 {
        return Err(bad_params("battery needs Delta >= 4"));
    }
    Ok(vec![
        ("two adjacent hubs".to_string(), hub_pair_graph(max_degree)),
        ("K(2,Delta) plus chord".to_string(), k2_with_chord(max_degree)),
        ("edge-minimal family".to_string(), construct_gdd(2, max_degree)?),
        ("K(2,Delta) subdivided".to_string(), subdivided_k2(max_degree)),
    ])
}

/// Checks for minimum degree two and `28 <= Delta <= 64`: `K_{2,Delta}`
/// meets the bound and every battery graph strictly exceeds it. This is a
/// sample, not a proof over all graphs.
pub fn min_degree_two_spotchecks(max_degrees: RangeInclusive<usize>, tol: f64) -> Result<VerificationReport> {
    if max_degrees.is_empty() || *max_degrees.start() < 28 || *max_degrees.end() > 64 {
        return Err(Error::BadSpec(format!("Delta range must lie within 28..=64, got {max_degrees:?}")));
    }
    let mut report = VerificationReport {
        theorem_id: "T2_20".into(),
        graphs_checked: 0,
        graphs_applicable: 0,
        boundary_skipped: 0,
        equality_count: 0,
        tolerance: tol,
        violations: Vec::new(),
        equality_witnesses: Vec::new(),
        equality_family_mismatches: Vec::new(),
        passed: true,
    };
    for big in max_degrees {
        let bound = min_degree_two_bound(big)?.value.expect("Delta >= 28");
        let k = construct_complete_bipartite(2, big)?;
        let kv = ga1_unchecked(&k);
        report.graphs_checked += 1;
        report.graphs_applicable += 1;
        if (kv - bound).abs() <= tol {
            report.equality_count += 1;
            report.equality_witnesses.push(write_graph6(&k));
        } else {
            report.equality_family_mismatches.push(Mismatch {
                graph6: write_graph6(&k),
                ga1: kv,
                bound,
                numeric_equality: false,
                structural_equality: true,
                detail: format!("K(2,{big}) misses the bound"),
            });
        }
        for (name, g) in min_degree_two_battery(big)? {
            report.graphs_checked += 1;
            if g.min_degree() != 2 || g.max_degree() != big || !g.is_connected() {
                report.violations.push(Violation {
                    graph6: write_graph6(&g),
                    ga1: ga1_unchecked(&g),
                    bound,
                    detail: format!("{name}: profile ({}, {}) is not (2, {big})", g.min_degree(), g.max_degree()),
                });
                continue;
            }
            report.graphs_applicable += 1;
            let v = ga1_unchecked(&g);
            if v <= bound + tol {
                report.violations.push(Violation {
                    graph6: write_graph6(&g),
                    ga1: v,
                    bound,
                    detail: format!("{name} does not exceed the bound (Delta = {big})"),
                });
            }
        }
    }
    report.passed = report.violations.is_empty() && report.equality_family_mismatches.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct_counterexample, construct_star};
    use crate::iso::canonical_graph6;

    #[test]
    fn example_candidate() {
        let c = check_candidate(&construct_counterexample()).unwrap();
        assert!(c.violates);
        assert!((c.lhs - 110.877_641_672_684_47).abs() < 1e-9);
        assert!((c.rhs - 111.750_833_951_648_38).abs() < 1e-9);
        assert!((c.rhs - c.lhs - 0.873_192_278_963_909).abs() < 1e-9);
    }

    #[test]
    fn non_violating_candidates() {
        let c = check_candidate(&construct_gdd(2, 4).unwrap()).unwrap();
        assert!(!c.violates);
        assert!((c.lhs - c.gdd_value).abs() < 1e-12);
        let c = check_candidate(&construct_complete_bipartite(2, 3).unwrap()).unwrap();
        assert!(!c.violates);
        assert!((c.rhs - 4.919_183_588_453_085).abs() < 1e-12);
        assert!(check_candidate(&construct_star(3).unwrap()).is_err());
    }

    #[test]
    fn counterexample_search_finds_the_example() {
        let w = search_counterexamples(4..=4, 56..=56, 0).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].source, "two-hub");
        assert!((w[0].margin - 0.873_192_278_963_909).abs() < 1e-9);
        assert!(search_counterexamples(RangeInclusive::new(3, 2), 5..=6, 5).unwrap().is_empty());
    }

    #[test]
    fn margins_sorted() {
        let w = search_counterexamples(3..=6, 5..=60, 0).unwrap();
        assert!(!w.is_empty());
        assert!(w.windows(2).all(|p| p[0].margin >= p[1].margin));
    }

    #[test]
    fn minimal_examples() {
        let r = search_minimal(3, 3, 5).unwrap();
        assert_eq!(r.witnesses, vec![canonical_graph6(&crate::families::construct_complete(4))]);
        assert!((r.min_value - 6.0).abs() < 1e-12);
        let r = search_minimal(1, 3, 5).unwrap();
        assert_eq!(r.witnesses, vec![canonical_graph6(&construct_star(3).unwrap())]);
        assert!((r.min_value - 1.5 * 3f64.sqrt()).abs() < 1e-12);
        assert!(r.within_ranges);
        let r = search_minimal(2, 3, 5).unwrap();
        assert!((r.min_value - 4.919_183_588_453_085).abs() < 1e-12);
        assert!(search_minimal(2, 5, 5).is_err());
        assert!(search_minimal(2, 3, 10).is_err());
    }

    #[test]
    fn spotchecks() {
        let r = min_degree_two_spotchecks(28..=40, DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.equality_count, 13);
        assert!(min_degree_two_spotchecks(27..=30, DEFAULT_TOLERANCE).is_err());
        assert!(min_degree_two_spotchecks(60..=65, DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn battery_profiles() {
        for big in 28..=64 {
            for (name, g) in min_degree_two_battery(big).unwrap() {
                assert_eq!((g.min_degree(), g.max_degree()), (2, big), "{name}");
                assert!(g.is_connected());
            }
        }
    }
}
