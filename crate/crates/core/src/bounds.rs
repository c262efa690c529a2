//! Lower bounds on GA1 in terms of the minimum and maximum degree, each
//! with its applicability gate and, where known, the family attaining it.
//!
//! Gates that compare a single square root with a rational quantity are
//! squared and decided in exact integer arithmetic. Gates mixing several
//! square roots are evaluated in floating point; a difference within
//! [`GATE_SLACK`] of zero is reported as [`Gate::Boundary`] instead of being
//! decided.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{bad_params, Error, Result};
use crate::families::{even_profile_value, ga1_closed_form_gdd, ga1_closed_form_kdd, min_edges, FamilySpec};
use crate::graph::Graph;
use crate::index::weight;
use crate::report::{sig10_opt, Sig10};

/// Slack applied to floating-point gate evaluations.
pub const GATE_SLACK: f64 = 1e-12;

/// Identifier of a bound. The string forms are stable and used on the
/// command line and in JSON reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundId {
    EdgeMinimum,
    EdgeMinimumOdd,
    FamilyEven,
    FamilyOdd,
    Molecular,
    GapPolynomial,
    GapTable,
    NearRegular,
    SmallMaxDegree,
    MinDegreeTwo,
    Classic,
}

impl BoundId {
    pub const ALL: [BoundId; 11] = [
        BoundId::EdgeMinimum,
        BoundId::EdgeMinimumOdd,
        BoundId::FamilyEven,
        BoundId::FamilyOdd,
        BoundId::Molecular,
        BoundId::GapPolynomial,
        BoundId::GapTable,
        BoundId::NearRegular,
        BoundId::SmallMaxDegree,
        BoundId::MinDegreeTwo,
        BoundId::Classic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::EdgeMinimum => "T2_7",
            BoundId::EdgeMinimumOdd => "T2_7_odd",
            BoundId::FamilyEven => "T2_11_even",
            BoundId::FamilyOdd => "T2_11_odd",
            BoundId::Molecular => "C2_13",
            BoundId::GapPolynomial => "C2_14",
            BoundId::GapTable => "C2_15",
            BoundId::NearRegular => "C2_16",
            BoundId::SmallMaxDegree => "C2_17",
            BoundId::MinDegreeTwo => "T2_20",
            BoundId::Classic => "CLASSIC_2_1",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<BoundId> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| bad_params(format!("unknown bound id `{s}`")))
    }
}

impl Serialize for BoundId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Outcome of an applicability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Gate {
    Holds,
    Fails,
    /// Too close to call in floating point.
    Boundary,
}

impl Gate {
    pub fn holds(self) -> bool {
        self == Gate::Holds
    }

    fn from_difference(diff: f64) -> Gate {
        if diff > GATE_SLACK {
            Gate::Holds
        } else if diff < -GATE_SLACK {
            Gate::Fails
        } else {
            Gate::Boundary
        }
    }

    fn from_bool(b: bool) -> Gate {
        if b {
            Gate::Holds
        } else {
            Gate::Fails
        }
    }

    fn and(self, other: Gate) -> Gate {
        match (self, other) {
            (Gate::Fails, _) | (_, Gate::Fails) => Gate::Fails,
            (Gate::Boundary, _) | (_, Gate::Boundary) => Gate::Boundary,
            _ => Gate::Holds,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Applicability {
    Applicable,
    NotApplicable,
    Boundary,
}

/// One evaluated bound. `value` is present only when applicable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub theorem_id: BoundId,
    #[serde(serialize_with = "sig10_opt")]
    pub value: Option<f64>,
    pub applicability: Applicability,
    pub equality_family: Option<FamilySpec>,
    pub notes: String,
}

impl BoundResult {
    fn applicable(id: BoundId, value: f64, family: Option<FamilySpec>, notes: impl Into<String>) -> BoundResult {
        BoundResult {
            theorem_id: id,
            value: Some(value),
            applicability: Applicability::Applicable,
            equality_family: family,
            notes: notes.into(),
        }
    }

    fn refused(id: BoundId, gate: Gate, notes: impl Into<String>) -> BoundResult {
        BoundResult {
            theorem_id: id,
            value: None,
            applicability: if gate == Gate::Boundary { Applicability::Boundary } else { Applicability::NotApplicable },
            equality_family: None,
            notes: notes.into(),
        }
    }

    pub fn is_applicable(&self) -> bool {
        self.applicability == Applicability::Applicable
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let state = match self.applicability {
            Applicability::Applicable => "applicable",
            Applicability::NotApplicable => "n/a",
            Applicability::Boundary => "BOUNDARY",
        };
        write!(f, "{:<12} {:<11}", self.theorem_id.as_str(), state)?;
        match self.value {
            Some(v) => write!(f, " {:>16}", Sig10(v).to_string())?,
            None => write!(f, " {:>16}", "-")?,
        }
        match &self.equality_family {
            Some(fam) => write!(f, "  equality: {fam}")?,
            None => write!(f, "  equality: -")?,
        }
        if !self.notes.is_empty() {
            write!(f, "  ({})", self.notes)?;
        }
        Ok(())
    }
}

fn check_profile(delta: usize, max_degree: usize) -> Result<()> {
    if delta == 0 || delta > max_degree {
        return Err(bad_params(format!("need 1 <= delta <= Delta, got delta = {delta}, Delta = {max_degree}")));
    }
    Ok(())
}

fn check_profile_two(delta: usize, max_degree: usize) -> Result<()> {
    check_profile(delta, max_degree)?;
    if max_degree < 2 {
        return Err(bad_params("this bound needs Delta >= 2"));
    }
    Ok(())
}

fn odd_product(delta: usize, max_degree: usize) -> bool {
    max_degree * (delta + 1) % 2 == 1
}

/// `(Delta(delta+1) / 2) * weight(delta, Delta)`: the fewest possible edges,
/// each at the smallest possible weight.
pub fn edge_minimum_base_value(delta: usize, max_degree: usize) -> Result<f64> {
    check_profile(delta, max_degree)?;
    let (d, big) = (delta as f64, max_degree as f64);
    Ok(big * (d + 1.0) * (d * big).sqrt() / (d + big))
}

/// The edge-count bound. For odd `Delta(delta+1)` the refined value
/// `(Delta(delta+1)+1) sqrt(delta Delta)/(delta+Delta)` is returned under
/// [`BoundId::EdgeMinimumOdd`].
pub fn edge_minimum_bound(delta: usize, max_degree: usize) -> Result<BoundResult> {
    let base = edge_minimum_base_value(delta, max_degree)?;
    let (d, big) = (delta as f64, max_degree as f64);
    if odd_product(delta, max_degree) {
        let refined = (big * (d + 1.0) + 1.0) * (d * big).sqrt() / (d + big);
        return Ok(BoundResult::applicable(BoundId::EdgeMinimumOdd, refined, None, "odd edge-count refinement"));
    }
    let family = if delta == 1 {
        Some(FamilySpec::Star { max_degree })
    } else if delta == max_degree {
        Some(FamilySpec::Complete { n: max_degree + 1 })
    } else {
        None
    };
    Ok(BoundResult::applicable(BoundId::EdgeMinimum, base, family, ""))
}

/// `2 sqrt(delta Delta)/(delta+Delta) >= Delta(delta-1)/(Delta(delta-1)+2)`,
/// decided exactly by squaring.
pub fn family_gate(delta: usize, max_degree: usize) -> Result<Gate> {
    check_profile_two(delta, max_degree)?;
    let (d, big) = (delta as i128, max_degree as i128);
    let k = big * (d - 1);
    let lhs = 4 * d * big * (k + 2) * (k + 2);
    let rhs = (k * (d + big)) * (k * (d + big));
    Ok(Gate::from_bool(lhs >= rhs))
}

fn odd_gate_clause(delta: usize, max_degree: usize) -> f64 {
    let (d, big) = (delta as f64, max_degree as f64);
    let lhs = 1.5 * weight(d, big) + d - 0.5;
    let rhs = weight(d + 1.0, big) + 2.0 * d * (d * (d + 1.0)).sqrt() / (2.0 * d + 1.0);
    lhs - rhs
}

/// Gate for the odd-product refinement: [`family_gate`] together with
/// `3 sqrt(delta Delta)/(delta+Delta) + delta - 1/2 >=
/// 2 sqrt((delta+1)Delta)/(delta+1+Delta) + 2 delta sqrt(delta(delta+1))/(2 delta+1)`.
pub fn odd_family_gate(delta: usize, max_degree: usize) -> Result<Gate> {
    check_profile_two(delta, max_degree)?;
    if !odd_product(delta, max_degree) {
        return Err(Error::NotApplicable(format!("Delta(delta+1) = {} is even", max_degree * (delta + 1))));
    }
    Ok(family_gate(delta, max_degree)?.and(odd_gate_second_clause(delta, max_degree)?))
}

/// Only the second (square-root) clause of [`odd_family_gate`].
pub fn odd_gate_second_clause(delta: usize, max_degree: usize) -> Result<Gate> {
    check_profile_two(delta, max_degree)?;
    if !odd_product(delta, max_degree) {
        return Err(Error::NotApplicable(format!("Delta(delta+1) = {} is even", max_degree * (delta + 1))));
    }
    Ok(Gate::from_difference(odd_gate_clause(delta, max_degree)))
}

/// `delta (1 - 2 sqrt(delta(delta+1))/(2 delta+1)) >= 3/2 (1 - 2 sqrt(delta Delta)/(delta+Delta))`;
/// implies the second clause of [`odd_family_gate`].
pub fn odd_gate_sufficient(delta: usize, max_degree: usize) -> Result<Gate> {
    check_profile(delta, max_degree)?;
    if !odd_product(delta, max_degree) {
        return Err(Error::NotApplicable(format!("Delta(delta+1) = {} is even", max_degree * (delta + 1))));
    }
    let (d, big) = (delta as f64, max_degree as f64);
    let lhs = d * (1.0 - weight(d, d + 1.0));
    let rhs = 1.5 * (1.0 - weight(d, big));
    Ok(Gate::from_difference(lhs - rhs))
}

/// The bound attained by the edge-minimal family, when its gate passes.
pub fn family_bound(delta: usize, max_degree: usize) -> Result<BoundResult> {
    check_profile_two(delta, max_degree)?;
    let family = Some(FamilySpec::gdd(delta, max_degree)?);
    if odd_product(delta, max_degree) {
        let gate = odd_family_gate(delta, max_degree)?;
        if gate.holds() {
            let value = ga1_closed_form_gdd(delta, max_degree)?;
            return Ok(BoundResult::applicable(BoundId::FamilyOdd, value, family, ""));
        }
        return Ok(BoundResult::refused(BoundId::FamilyOdd, gate, "odd-product gate fails"));
    }
    let gate = family_gate(delta, max_degree)?;
    if gate.holds() {
        let value = even_profile_value(delta as f64, max_degree as f64);
        return Ok(BoundResult::applicable(BoundId::FamilyEven, value, family, ""));
    }
    Ok(BoundResult::refused(BoundId::FamilyEven, gate, "weight gate fails"))
}

/// `P(h, Delta)`, whose nonnegativity (with `delta = Delta - h`) is
/// equivalent to [`family_gate`].
pub fn gap_polynomial(h: f64, big: f64) -> f64 {
    (16.0 - h * h) * big.powi(3)
        + (2.0 * h.powi(3) + 2.0 * h * h - 32.0 * h - 16.0) * big * big
        + (-h.powi(4) - 2.0 * h.powi(3) + 15.0 * h * h + 16.0 * h + 16.0) * big
        - 16.0 * h
}

/// Exact integer evaluation of [`gap_polynomial`].
pub fn gap_polynomial_exact(h: i128, big: i128) -> i128 {
    (16 - h * h) * big.pow(3) + (2 * h.pow(3) + 2 * h * h - 32 * h - 16) * big * big
        + (-h.pow(4) - 2 * h.pow(3) + 15 * h * h + 16 * h + 16) * big
        - 16 * h
}

/// Coefficients of `P(h, .)` from the cubic term down.
pub fn gap_polynomial_coefficients(h: i128) -> [i128; 4] {
    [16 - h * h, 2 * h.pow(3) + 2 * h * h - 32 * h - 16, -h.pow(4) - 2 * h.pow(3) + 15 * h * h + 16 * h + 16, -16 * h]
}

/// The even-profile value gated on `P(Delta - delta, Delta) >= 0`.
pub fn gap_polynomial_bound(delta: usize, max_degree: usize) -> Result<BoundResult> {
    check_profile_two(delta, max_degree)?;
    let h = (max_degree - delta) as i128;
    let p = gap_polynomial_exact(h, max_degree as i128);
    if p >= 0 {
        let (big, hf) = (max_degree as f64, h as f64);
        let value = 2.0 * big * (big * (big - hf)).sqrt() / (2.0 * big - hf) + big * (big - hf - 1.0) / 2.0;
        Ok(BoundResult::applicable(BoundId::GapPolynomial, value, None, format!("P = {p}")))
    } else {
        Ok(BoundResult::refused(BoundId::GapPolynomial, Gate::Fails, format!("P = {p} < 0")))
    }
}

/// The tabulated `(h, Delta)` pairs for which the even-profile value is a
/// bound, with `h = Delta - delta`.
pub fn gap_table_applies(h: usize, max_degree: usize) -> Result<bool> {
    if max_degree < 2 || h >= max_degree {
        return Err(bad_params(format!("need Delta >= 2 and 0 <= h < Delta, got h = {h}, Delta = {max_degree}")));
    }
    Ok(match h {
        0 | 1 => true,
        2..=4 => max_degree > h,
        5 => (6..=8).contains(&max_degree),
        6 => (7..=8).contains(&max_degree),
        _ => max_degree == h + 1,
    })
}

pub fn gap_table_bound(delta: usize, max_degree: usize) -> Result<BoundResult> {
    check_profile_two(delta, max_degree)?;
    if gap_table_applies(max_degree - delta, max_degree)? {
        let value = even_profile_value(delta as f64, max_degree as f64);
        Ok(BoundResult::applicable(BoundId::GapTable, value, None, ""))
    } else {
        Ok(BoundResult::refused(BoundId::GapTable, Gate::Fails, "(h, Delta) outside the table"))
    }
}

/// The bound for `delta = Delta - 1`, always attained by the edge-minimal family.
pub fn near_regular_bound(max_degree: usize) -> Result<BoundResult> {
    if max_degree < 2 {
        return Err(bad_params("near-regular bound needs Delta >= 2"));
    }
    let big = max_degree as f64;
    let root = (big * (big - 1.0)).sqrt();
    let value = if max_degree.is_multiple_of(2) {
        2.0 * big * root / (2.0 * big - 1.0) + big * (big - 2.0) / 2.0
    } else {
        4.0 * (big - 1.0) * root / (2.0 * big - 1.0) + ((big - 2.0).powi(2) - 1.0) / 2.0 + 1.0
    };
    let family = FamilySpec::gdd(max_degree - 1, max_degree)?;
    Ok(BoundResult::applicable(BoundId::NearRegular, value, Some(family), ""))
}

pub fn small_max_degree_bound(delta: usize, max_degree: usize) -> Result<BoundResult> {
    check_profile(delta, max_degree)?;
    if !(2..=8).contains(&max_degree) {
        return Ok(BoundResult::refused(BoundId::SmallMaxDegree, Gate::Fails, "needs 2 <= Delta <= 8"));
    }
    let value = even_profile_value(delta as f64, max_degree as f64);
    Ok(BoundResult::applicable(BoundId::SmallMaxDegree, value, None, ""))
}

/// Sharp bound for connected graphs with maximum degree at most four.
pub fn molecular_bound(delta: usize, max_degree: usize) -> Result<BoundResult> {
    check_profile(delta, max_degree)?;
    if max_degree > 4 {
        return Ok(BoundResult::refused(BoundId::Molecular, Gate::Fails, "needs Delta <= 4"));
    }
    let family = Some(FamilySpec::gdd(delta, max_degree)?);
    let value = if (delta, max_degree) == (2, 3) {
        ga1_closed_form_gdd(2, 3)?
    } else {
        even_profile_value(delta as f64, max_degree as f64)
    };
    Ok(BoundResult::applicable(BoundId::Molecular, value, family, ""))
}

/// `A(b) = (b - 1) / ((b + 2) sqrt b)`.
pub fn neighbor_ratio(b: f64) -> f64 {
    (b - 1.0) / ((b + 2.0) * b.sqrt())
}

/// `B(Delta) = sqrt(Delta) / (Delta + 2)`.
pub fn hub_ratio(big: f64) -> f64 {
    big.sqrt() / (big + 2.0)
}

/// `2 sqrt(a Delta)/(Delta+a) > 2 * 2 sqrt(2 Delta)/(Delta+2)`, decided
/// exactly as `a (Delta+2)^2 > 8 (Delta+a)^2`.
pub fn hub_neighbor_dominates(a: usize, max_degree: usize) -> bool {
    let (a, big) = (a as i128, max_degree as i128);
    a * (big + 2) * (big + 2) > 8 * (big + a) * (big + a)
}

/// `(b-1) 2 sqrt(2b)/(b+2) > b * 2 sqrt(2 Delta)/(Delta+2)`, decided exactly
/// as `(b-1)^2 (Delta+2)^2 > b Delta (b+2)^2` for `b >= 1`.
pub fn low_degree_neighbor_dominates(b: usize, max_degree: usize) -> bool {
    if b == 0 {
        return false;
    }
    let (b, big) = (b as i128, max_degree as i128);
    (b - 1) * (b - 1) * (big + 2) * (big + 2) > b * big * (b + 2) * (b + 2)
}

/// Sharp bound for minimum degree two and `Delta >= 28`, attained only by `K_{2,Delta}`.
pub fn min_degree_two_bound(max_degree: usize) -> Result<BoundResult> {
    if max_degree < 28 {
        return Ok(BoundResult::refused(BoundId::MinDegreeTwo, Gate::Fails, "needs delta = 2 and Delta >= 28"));
    }
    let big = max_degree as f64;
    let value = 2.0 * big * weight(2.0, big);
    Ok(BoundResult::applicable(
        BoundId::MinDegreeTwo,
        value,
        Some(FamilySpec::CompleteBipartite { delta: 2, max_degree }),
        "",
    ))
}

/// Every degree-profile bound, applicable or not, in identifier order.
pub fn all_bounds(delta: usize, max_degree: usize) -> Result<Vec<BoundResult>> {
    check_profile(delta, max_degree)?;
    let mut out = vec![edge_minimum_bound(delta, max_degree)?];
    if max_degree >= 2 {
        out.push(family_bound(delta, max_degree)?);
    }
    out.push(molecular_bound(delta, max_degree)?);
    if max_degree >= 2 {
        out.push(gap_polynomial_bound(delta, max_degree)?);
        out.push(gap_table_bound(delta, max_degree)?);
    }
    if max_degree >= 2 && delta + 1 == max_degree {
        out.push(near_regular_bound(max_degree)?);
    }
    out.push(small_max_degree_bound(delta, max_degree)?);
    if delta == 2 {
        out.push(min_degree_two_bound(max_degree)?);
    }
    out.sort_by_key(|b| b.theorem_id);
    Ok(out)
}

fn prefer(a: &BoundResult, b: &BoundResult) -> Ordering {
    let (va, vb) = (a.value.unwrap_or(f64::NEG_INFINITY), b.value.unwrap_or(f64::NEG_INFINITY));
    let tie = (va - vb).abs() <= 1e-12 * va.abs().max(1.0);
    if !tie {
        return va.partial_cmp(&vb).unwrap_or(Ordering::Equal);
    }
    let fa = a.equality_family.is_some();
    let fb = b.equality_family.is_some();
    fa.cmp(&fb).then_with(|| b.theorem_id.cmp(&a.theorem_id))
}

/// The largest applicable bound for the profile. Ties prefer a bound with a
/// known equality family, then the earlier identifier.
pub fn best_lower_bound(delta: usize, max_degree: usize) -> Result<BoundResult> {
    let bounds = all_bounds(delta, max_degree)?;
    Ok(bounds
        .into_iter()
        .filter(BoundResult::is_applicable)
        .max_by(prefer)
        .expect("the edge-count bound always applies"))
}

/// [`best_lower_bound`] for the degree profile of `g`.
pub fn best_lower_bound_for(g: &Graph) -> Result<BoundResult> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (lo, hi) = (g.min_degree(), g.max_degree());
    if lo == 0 {
        return Err(bad_params("graph has isolated vertices (delta = 0); degree bounds need delta >= 1"));
    }
    best_lower_bound(lo, hi)
}

/// Closed forms that the bounds are compared against in reports.
pub fn family_values(delta: usize, max_degree: usize) -> Result<(f64, f64, usize)> {
    Ok((ga1_closed_form_gdd(delta, max_degree)?, ga1_closed_form_kdd(delta, max_degree)?, min_edges(delta, max_degree)?))
}
