//! Checking the bounds on every enumerated graph.
//!
//! A check compares `GA1` with a bound within an absolute tolerance. Where a
//! bound names its extremal graphs, numeric equality (within tolerance) is
//! compared with the structural predicate; disagreement in either direction
//! is recorded as a mismatch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{edge_minimum_base_value, edge_minimum_bound, family_bound, molecular_bound, small_max_degree_bound};
use crate::error::{Error, Result};
use crate::families::{construct_complete_bipartite, gdd_membership, min_edges, minimal_graph_ranges};
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::harness::enumerate::{blocks, EnumSpec};
use crate::index::{classic_bounds, classic_lower_equality, ga1_unchecked};
use crate::iso::{are_isomorphic, canonical_graph6, canonical_mask};
use crate::mask::{graph_from_mask, MAX_MASK_VERTICES};
use crate::report::sig10;

use rayon::prelude::*;

/// A claim the harness can check exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// `2m sqrt(delta Delta)/(delta+Delta) <= GA1 <= m`.
    Classic,
    /// The edge-count bound and its odd refinement.
    EdgeMinimum,
    /// `m >= ceil(Delta(delta+1)/2)`.
    EdgeCount,
    /// The gated bound attained by the edge-minimal family.
    Family,
    /// Maximum degree at most four.
    Molecular,
    /// `2 <= Delta <= 8`.
    SmallMaxDegree,
    /// Structure of GA1-minimal graphs per degree profile.
    Minimal,
}

impl Target {
    pub const ALL: [Target; 7] = [
        Target::Classic,
        Target::EdgeMinimum,
        Target::EdgeCount,
        Target::Family,
        Target::Molecular,
        Target::SmallMaxDegree,
        Target::Minimal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Classic => "CLASSIC_2_1",
            Target::EdgeMinimum => "T2_7",
            Target::EdgeCount => "P2_5_edges",
            Target::Family => "T2_11",
            Target::Molecular => "C2_13",
            Target::SmallMaxDegree => "C2_17",
            Target::Minimal => "P2_8_minimal",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        if s == "T2_20" {
            return Err(Error::BadSpec(
                "T2_20 concerns graphs with at least 29 vertices and cannot be enumerated; use `spotcheck`".into(),
            ));
        }
        Target::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Target::ALL.iter().map(|t| t.as_str()).collect();
            Error::BadSpec(format!("unknown theorem `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub graph6: String,
    #[serde(serialize_with = "sig10")]
    pub ga1: f64,
    #[serde(serialize_with = "sig10")]
    pub bound: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub graph6: String,
    #[serde(serialize_with = "sig10")]
    pub ga1: f64,
    #[serde(serialize_with = "sig10")]
    pub bound: f64,
    pub numeric_equality: bool,
    pub structural_equality: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub graphs_checked: u64,
    /// Graphs the claim applies to (gates passed, profile in range).
    pub graphs_applicable: u64,
    /// Graphs skipped because a floating-point gate was too close to call.
    pub boundary_skipped: u64,
    /// Applicable graphs meeting the bound within tolerance.
    pub equality_count: u64,
    #[serde(serialize_with = "sig10")]
    pub tolerance: f64,
    pub violations: Vec<Violation>,
    /// Canonical graph6 of the equality graphs, one per isomorphism class, sorted.
    pub equality_witnesses: Vec<String>,
    pub equality_family_mismatches: Vec<Mismatch>,
    pub passed: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem:            {}", self.theorem_id)?;
        writeln!(f, "graphs checked:     {}", self.graphs_checked)?;
        writeln!(f, "applicable:         {}", self.graphs_applicable)?;
        if self.boundary_skipped > 0 {
            writeln!(f, "boundary skipped:   {}", self.boundary_skipped)?;
        }
        writeln!(f, "equality cases:     {} ({} classes)", self.equality_count, self.equality_witnesses.len())?;
        writeln!(f, "violations:         {}", self.violations.len())?;
        writeln!(f, "family mismatches:  {}", self.equality_family_mismatches.len())?;
        for v in self.violations.iter().take(20) {
            writeln!(f, "  violation {} ga1={} bound={} {}", v.graph6, v.ga1, v.bound, v.detail)?;
        }
        for m in self.equality_family_mismatches.iter().take(20) {
            writeln!(
                f,
                "  mismatch {} ga1={} bound={} numeric={} structural={} {}",
                m.graph6, m.ga1, m.bound, m.numeric_equality, m.structural_equality, m.detail
            )?;
        }
        write!(f, "result:             {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Smallest GA1 seen for one degree profile and the graphs within
/// tolerance of it, as `(n, canonical mask)`.
#[derive(Clone, Debug, Default)]
struct ProfileMin {
    value: f64,
    graphs: BTreeSet<(usize, u64)>,
}

/// Mergeable running totals.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    checked: u64,
    applicable: u64,
    boundary: u64,
    equalities: u64,
    violations: Vec<Violation>,
    witnesses: BTreeSet<String>,
    mismatches: Vec<Mismatch>,
    minima: BTreeMap<(usize, usize), ProfileMin>,
    covered: u64,
}

impl Tally {
    pub(crate) fn merge(mut self, other: Tally, tol: f64) -> Tally {
        self.checked += other.checked;
        self.applicable += other.applicable;
        self.boundary += other.boundary;
        self.equalities += other.equalities;
        self.violations.extend(other.violations);
        self.witnesses.extend(other.witnesses);
        self.mismatches.extend(other.mismatches);
        self.covered |= other.covered;
        for (key, theirs) in other.minima {
            match self.minima.get_mut(&key) {
                None => {
                    self.minima.insert(key, theirs);
                }
                Some(ours) => {
                    if theirs.value < ours.value - tol {
                        *ours = theirs;
                    } else if theirs.value <= ours.value + tol {
                        ours.value = ours.value.min(theirs.value);
                        ours.graphs.extend(theirs.graphs);
                    }
                }
            }
        }
        self
    }

    fn violation(&mut self, g: &Graph, ga1: f64, bound: f64, detail: impl Into<String>) {
        self.violations.push(Violation { graph6: write_graph6(g), ga1, bound, detail: detail.into() });
    }

    /// Record the equality comparison for one applicable graph.
    fn equality(&mut self, g: &Graph, ga1: f64, bound: f64, tol: f64, structural: bool, detail: &str) {
        let numeric = (ga1 - bound).abs() <= tol;
        if numeric {
            self.equalities += 1;
            self.witnesses.insert(canonical_graph6(g));
        }
        if numeric != structural {
            self.mismatches.push(Mismatch {
                graph6: write_graph6(g),
                ga1,
                bound,
                numeric_equality: numeric,
                structural_equality: structural,
                detail: detail.to_string(),
            });
        }
    }

    fn at_least(&mut self, g: &Graph, ga1: f64, bound: f64, tol: f64, detail: &str) {
        if ga1 < bound - tol {
            self.violation(g, ga1, bound, detail);
        }
    }

    pub(crate) fn check(&mut self, target: Target, g: &Graph, tol: f64) {
        self.checked += 1;
        let m = g.m();
        let (lo, hi) = (g.min_degree(), g.max_degree());
        if m == 0 || lo == 0 {
            return;
        }
        let value = ga1_unchecked(g);
        match target {
            Target::Classic => {
                self.applicable += 1;
                let b = classic_bounds(m, lo, hi).expect("profile checked above");
                self.at_least(g, value, b.lower, tol, "below lower bound");
                if value > b.upper + tol {
                    self.violation(g, value, b.upper, "above upper bound m");
                }
                if g.is_connected() {
                    let structural = classic_lower_equality(g).expect("profile checked above");
                    self.equality(g, value, b.lower, tol, structural, "lower bound");
                    let balanced = g.edges().all(|(u, v)| g.degree(u) == g.degree(v));
                    if ((value - b.upper).abs() <= tol) != balanced {
                        self.mismatches.push(Mismatch {
                            graph6: write_graph6(g),
                            ga1: value,
                            bound: b.upper,
                            numeric_equality: !balanced,
                            structural_equality: balanced,
                            detail: "upper bound".into(),
                        });
                    }
                }
            }
            Target::EdgeMinimum => {
                self.applicable += 1;
                let base = edge_minimum_base_value(lo, hi).expect("profile checked above");
                self.at_least(g, value, base, tol, "below edge-count bound");
                let structural = g.is_connected() && (g.is_complete() || (lo == 1 && hi == g.n() - 1 && m == g.n() - 1));
                self.equality(g, value, base, tol, structural, "star or complete");
                let refined = edge_minimum_bound(lo, hi).expect("profile checked above");
                if let Some(v) = refined.value {
                    if v != base {
                        self.at_least(g, value, v, tol, "below odd refinement");
                    }
                }
            }
            Target::EdgeCount => {
                self.applicable += 1;
                let need = min_edges(lo, hi).expect("profile checked above");
                if m < need {
                    self.violation(g, m as f64, need as f64, "too few edges");
                }
                let structural = gdd_membership(g, lo, hi).is_some();
                if (m == need) != structural {
                    self.mismatches.push(Mismatch {
                        graph6: write_graph6(g),
                        ga1: m as f64,
                        bound: need as f64,
                        numeric_equality: m == need,
                        structural_equality: structural,
                        detail: "edge count vs family membership".into(),
                    });
                }
                if m == need {
                    self.equalities += 1;
                    self.witnesses.insert(canonical_graph6(g));
                }
            }
            Target::Family => {
                if hi < 2 {
                    return;
                }
                let r = family_bound(lo, hi).expect("profile checked above");
                match (r.value, r.applicability) {
                    (Some(bound), _) => {
                        self.applicable += 1;
                        self.at_least(g, value, bound, tol, r.theorem_id.as_str());
                        let structural = gdd_membership(g, lo, hi).is_some();
                        self.equality(g, value, bound, tol, structural, r.theorem_id.as_str());
                    }
                    (None, crate::bounds::Applicability::Boundary) => self.boundary += 1,
                    (None, _) => {}
                }
            }
            Target::Molecular => {
                if hi > 4 || !g.is_connected() {
                    return;
                }
                let r = molecular_bound(lo, hi).expect("profile checked above");
                let bound = r.value.expect("applies for Delta <= 4");
                self.applicable += 1;
                self.at_least(g, value, bound, tol, "below molecular bound");
                let structural = gdd_membership(g, lo, hi).is_some();
                self.equality(g, value, bound, tol, structural, "edge-minimal family");
            }
            Target::SmallMaxDegree => {
                let r = small_max_degree_bound(lo, hi).expect("profile checked above");
                if let Some(bound) = r.value {
                    self.applicable += 1;
                    self.at_least(g, value, bound, tol, "below small-degree bound");
                    if (value - bound).abs() <= tol {
                        self.equalities += 1;
                        self.witnesses.insert(canonical_graph6(g));
                    }
                }
            }
            Target::Minimal => {
                if !g.is_connected() || g.n() > MAX_MASK_VERTICES {
                    return;
                }
                let entry = self.minima.entry((lo, hi)).or_insert(ProfileMin { value: f64::INFINITY, graphs: BTreeSet::new() });
                if value < entry.value - tol {
                    entry.value = value;
                    entry.graphs.clear();
                }
                if value <= entry.value + tol {
                    entry.value = entry.value.min(value);
                    entry.graphs.insert((g.n(), canonical_mask(g)));
                }
            }
        }
    }

    /// Evaluate per-profile minimal-graph claims for profiles whose whole
    /// vertex range `Delta + 1 ..= n_hi` has been enumerated.
    fn finish_minimal(&mut self) {
        let minima = std::mem::take(&mut self.minima);
        for ((lo, hi), pm) in minima {
            let ranges = minimal_graph_ranges(lo, hi).expect("profile from a graph");
            let covered = (ranges.n_lo..=ranges.n_hi).all(|n| n < 64 && self.covered >> n & 1 == 1);
            if !covered {
                continue;
            }
            let k = construct_complete_bipartite(lo, hi).expect("profile from a graph");
            for &(n, mask) in &pm.graphs {
                self.applicable += 1;
                let g = graph_from_mask(n, mask);
                let value = ga1_unchecked(&g);
                self.equalities += 1;
                self.witnesses.insert(write_graph6(&g));
                if !ranges.contains(g.n(), g.m()) {
                    self.violation(&g, value, pm.value, format!("minimizer outside ranges {ranges:?}"));
                }
                if g.m() == ranges.m_hi && !are_isomorphic(&g, &k) {
                    self.mismatches.push(Mismatch {
                        graph6: write_graph6(&g),
                        ga1: value,
                        bound: pm.value,
                        numeric_equality: true,
                        structural_equality: false,
                        detail: format!("minimizer with delta*Delta edges is not K({lo},{hi})"),
                    });
                }
                if g.m() == ranges.m_lo && gdd_membership(&g, lo, hi).is_none() {
                    self.mismatches.push(Mismatch {
                        graph6: write_graph6(&g),
                        ga1: value,
                        bound: pm.value,
                        numeric_equality: true,
                        structural_equality: false,
                        detail: "minimizer with fewest edges outside the edge-minimal family".into(),
                    });
                }
            }
        }
    }

    pub(crate) fn finish(mut self, target: Target, tol: f64) -> VerificationReport {
        if target == Target::Minimal {
            self.finish_minimal();
        }
        self.violations.sort_by(|a, b| (&a.graph6, &a.detail).cmp(&(&b.graph6, &b.detail)));
        self.mismatches.sort_by(|a, b| (&a.graph6, &a.detail).cmp(&(&b.graph6, &b.detail)));
        let passed = self.violations.is_empty() && self.mismatches.is_empty();
        VerificationReport {
            theorem_id: target.as_str().to_string(),
            graphs_checked: self.checked,
            graphs_applicable: self.applicable,
            boundary_skipped: self.boundary,
            equality_count: self.equalities,
            tolerance: tol,
            violations: self.violations,
            equality_witnesses: self.witnesses.into_iter().collect(),
            equality_family_mismatches: self.mismatches,
            passed,
        }
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::BadSpec(format!("tolerance must be a finite nonnegative number, got {tol}")));
    }
    Ok(())
}

fn tally_spec(target: Target, spec: &EnumSpec, tol: f64) -> Result<Tally> {
    let parts: Vec<Tally> = blocks(spec)?
        .into_par_iter()
        .map(|block| {
            let mut t = Tally::default();
            for (_, g) in block {
                t.check(target, &g, tol);
            }
            t
        })
        .collect();
    let mut total = parts.into_iter().fold(Tally::default(), |a, b| a.merge(b, tol));
    total.covered |= 1 << spec.n;
    Ok(total)
}

/// Check `target` on every graph described by `spec`.
pub fn verify_theorem(target: Target, spec: &EnumSpec, tol: f64) -> Result<VerificationReport> {
    check_tolerance(tol)?;
    Ok(tally_spec(target, spec, tol)?.finish(target, tol))
}

/// Check `target` on graphs with `2 <= n <= n_max`, the other constraints
/// taken from `template`.
pub fn verify_up_to(target: Target, template: &EnumSpec, n_max: usize, tol: f64) -> Result<VerificationReport> {
    check_tolerance(tol)?;
    let mut total = Tally::default();
    for n in 2..=n_max {
        let spec = EnumSpec { n, ..template.clone() };
        total = total.merge(tally_spec(target, &spec, tol)?, tol);
    }
    Ok(total.finish(target, tol))
}

/// Check `target` on an explicit list of graphs. Minimal-graph claims need
/// complete coverage of a vertex range and are never evaluated here.
pub fn verify_graphs(target: Target, graphs: &[Graph], tol: f64) -> Result<VerificationReport> {
    check_tolerance(tol)?;
    let mut t = Tally::default();
    for g in graphs {
        t.check(target, g, tol);
    }
    Ok(t.finish(target, tol))
}
