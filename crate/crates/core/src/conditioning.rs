//! Conditioning a projection DPP on `J ⊂ φ` or `J ⊂ φᶜ`.
//!
//! Both conditional processes are again projection DPPs, read off the CS
//! decomposition of `E` against `R^N_J`:
//!
//! * `(φ | J ⊂ φ) \ J` is `φ(W)`,
//! * `(φ | J ⊂ φᶜ)` is `φ(V ∪ W)`,
//!
//! both living on `{1..N} \ J` (relabeled to `1..N-|J|`).

use serde::{Deserialize, Serialize};

use crate::cs::compute_cs;
use crate::dpp::{OrthonormalFrame, ProjectionDpp};
use crate::error::{Error, Result};
use crate::exterior::wedge_inner;
use crate::pointset::{subsets_of_size, PointSet};
use crate::report::CheckReport;
use crate::POSITIVITY_THRESHOLD;

/// Tolerance for the monotonicity inequalities.
pub const MONOTONICITY_TOLERANCE: f64 = 1e-10;
/// Tolerance for the alternating-sum identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Include(PointSet),
    Exclude(PointSet),
}

impl Condition {
    pub fn points(self) -> PointSet {
        match self {
            Condition::Include(j) | Condition::Exclude(j) => j,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConditionedProcess {
    pub condition: Condition,
    /// Law of the conditioned process on the relabeled ground set.
    pub result: ProjectionDpp,
    /// `index_map[k]` is the original (0-based) label of new label `k`.
    pub index_map: Vec<usize>,
}

impl ConditionedProcess {
    /// Relabels a set of original points (which must avoid `J`).
    pub fn to_conditioned(&self, set: PointSet) -> Result<PointSet> {
        if !set.is_disjoint(self.condition.points()) {
            return Err(Error::OverlappingSets);
        }
        set.iter()
            .map(|i| {
                self.index_map
                    .iter()
                    .position(|&orig| orig == i)
                    .ok_or(Error::PointOutOfRange {
                        point: i + 1,
                        n_points: self.index_map.len() + self.condition.points().len(),
                    })
            })
            .collect::<Result<Vec<_>>>()
            .map(PointSet::from_indices)
    }

    pub fn to_original(&self, set: PointSet) -> PointSet {
        PointSet::from_indices(set.iter().map(|k| self.index_map[k]))
    }
}

fn identity_map(dpp: &ProjectionDpp, condition: Condition) -> ConditionedProcess {
    ConditionedProcess {
        condition,
        result: dpp.clone(),
        index_map: (0..dpp.n_points()).collect(),
    }
}

/// `(φ | J ⊂ φ) \ J = φ(W)`. Requires `|J| < p` and `P(J ⊂ φ) > 1e-12`.
pub fn condition_on_inclusion(dpp: &ProjectionDpp, j: PointSet) -> Result<ConditionedProcess> {
    j.check_within(dpp.n_points())?;
    if j.is_empty() {
        return Ok(identity_map(dpp, Condition::Include(j)));
    }
    if j.len() >= dpp.rank() {
        return Err(Error::TooManyPoints {
            n: j.len(),
            limit: dpp.rank() - 1,
        });
    }
    let pj = dpp.inclusion_probability(j)?;
    if pj <= POSITIVITY_THRESHOLD {
        return Err(Error::ZeroProbabilityCondition(pj));
    }
    let cs = compute_cs(dpp.frame().columns(), j)?;
    Ok(ConditionedProcess {
        condition: Condition::Include(j),
        result: ProjectionDpp::new(OrthonormalFrame::new(cs.w.clone())?),
        index_map: cs.other_indices,
    })
}

/// `(φ | J ⊂ φᶜ) = φ(V ∪ W)`. Requires `|J| ≤ N - p` and `P(J ⊂ φᶜ) > 1e-12`.
pub fn condition_on_exclusion(dpp: &ProjectionDpp, j: PointSet) -> Result<ConditionedProcess> {
    j.check_within(dpp.n_points())?;
    if j.is_empty() {
        return Ok(identity_map(dpp, Condition::Exclude(j)));
    }
    let room = dpp.n_points() - dpp.rank();
    if j.len() > room {
        return Err(Error::TooManyPoints { n: j.len(), limit: room });
    }
    let pj = dpp.exclusion_probability(j)?;
    if pj <= POSITIVITY_THRESHOLD {
        return Err(Error::ZeroProbabilityCondition(pj));
    }
    let cs = compute_cs(dpp.frame().columns(), j)?;
    Ok(ConditionedProcess {
        condition: Condition::Exclude(j),
        result: ProjectionDpp::new(OrthonormalFrame::new(cs.v.concat(&cs.w)?)?),
        index_map: cs.other_indices,
    })
}

/// Checks `P(K ⊂ φ(W)) ≤ P(K ⊂ φ)` and `P(K ⊂ φ) ≤ P(K ⊂ φ(V ∪ W))` for
/// disjoint `J`, `K`. Each inequality is reported only when its conditioning
/// event is admissible; if neither is, the call fails.
pub fn verify_monotonicity(dpp: &ProjectionDpp, j: PointSet, k: PointSet) -> Result<Vec<CheckReport>> {
    if !j.is_disjoint(k) {
        return Err(Error::OverlappingSets);
    }
    k.check_within(dpp.n_points())?;
    let base = dpp.inclusion_probability(k)?;
    let witness = format!("J={j:?} K={k:?}");
    let mut reports = Vec::new();
    let mut last_err = None;
    match condition_on_inclusion(dpp, j) {
        Ok(cond) => {
            let pk = cond.result.inclusion_probability(cond.to_conditioned(k)?)?;
            reports.push(
                CheckReport::inequality("monotonicity.include", pk, base, MONOTONICITY_TOLERANCE)
                    .with_witness(witness.clone()),
            );
        }
        Err(e) => last_err = Some(e),
    }
    match condition_on_exclusion(dpp, j) {
        Ok(cond) => {
            let pk = cond.result.inclusion_probability(cond.to_conditioned(k)?)?;
            reports.push(
                CheckReport::inequality("monotonicity.exclude", base, pk, MONOTONICITY_TOLERANCE)
                    .with_witness(witness),
            );
        }
        Err(e) => last_err = Some(e),
    }
    match (reports.is_empty(), last_err) {
        (true, Some(e)) => Err(e),
        _ => Ok(reports),
    }
}

/// Alternating wedge sum
/// `⟨z_1, z_n⟩ + Σ_k (-1)^k Σ_{T ⊂ middle, |T| = k} ⟨z_1 ∧ z_T, z_n ∧ z_T⟩`
/// over the rows of `frame`, for `points = [x_1, …, x_n]` (0-based).
pub fn alternating_wedge_sum(frame: &OrthonormalFrame, points: &[usize]) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    let (first, last) = (points[0], points[n - 1]);
    let middle = &points[1..n - 1];
    let mut total = 0.0;
    for size in 0..=middle.len() {
        let sign = if size % 2 == 0 { 1.0 } else { -1.0 };
        for pick in subsets_of_size(middle.len(), size) {
            let chosen: Vec<usize> = pick.iter().map(|t| middle[t]).collect();
            let left = frame.rows_of(PointSet::singleton(first)).concat(&frame.rows_of(PointSet::from_indices(chosen.iter().copied())))?;
            let right = frame.rows_of(PointSet::singleton(last)).concat(&frame.rows_of(PointSet::from_indices(chosen.iter().copied())))?;
            total += sign * wedge_inner(&left, &right)?;
        }
    }
    Ok(total)
}

/// Checks the identity
///
/// ```text
/// (alternating wedge sum)² = P(M ∪ {x_n} ⊂ φᶜ) · P(M ⊂ φᶜ)
///                            · (P(x_1 ∈ φ | M ∪ {x_n} ⊂ φᶜ) - P(x_1 ∈ φ | M ⊂ φᶜ))
/// ```
///
/// with `M = {x_2, …, x_{n-1}}`; conditioning on an empty `M` is no
/// conditioning. The right side is computed by enumeration.
pub fn verify_prop2_identity(frame: &OrthonormalFrame, points: &[usize]) -> Result<CheckReport> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    let set = PointSet::from_indices(points.iter().copied());
    if set.len() != n {
        return Err(Error::InvalidArgument("points must be distinct".into()));
    }
    set.check_within(frame.n_points())?;
    let dpp = ProjectionDpp::new(frame.clone());
    let x1 = points[0];
    let middle = PointSet::from_indices(points[1..n - 1].iter().copied());
    let with_last = middle.with(points[n - 1]);

    let p_with_last = dpp.event_probability(|s| s.is_disjoint(with_last))?;
    if p_with_last <= POSITIVITY_THRESHOLD {
        return Err(Error::ZeroProbabilityCondition(p_with_last));
    }
    let p_middle = dpp.event_probability(|s| s.is_disjoint(middle))?;
    let cond_with_last = dpp.conditional_probability(|s| s.contains(x1), |s| s.is_disjoint(with_last))?;
    let cond_middle = dpp.conditional_probability(|s| s.contains(x1), |s| s.is_disjoint(middle))?;
    let rhs = p_with_last * p_middle * (cond_with_last - cond_middle);
    let lhs = alternating_wedge_sum(frame, points)?.powi(2);
    let labels: Vec<usize> = points.iter().map(|x| x + 1).collect();
    Ok(CheckReport::identity("prop2.identity", lhs, rhs, IDENTITY_TOLERANCE).with_witness(format!("points={labels:?}")))
}
