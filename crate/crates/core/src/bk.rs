//! BK inequality checks for projection DPPs.
//!
//! `𝔄 ∘ 𝔅` is the event that `𝔄` and `𝔅` occur on disjoint witnesses; the
//! BK inequality asks `P(φ ∈ 𝔄 ∘ 𝔅) ≤ P(φ ∈ 𝔄) P(φ ∈ 𝔅)`. Every function
//! here evaluates both sides (and the intermediate inequalities used to
//! establish it for single-point generators) by enumerating the exact law.

use crate::conditioning::{condition_on_exclusion, ConditionedProcess};
use crate::cs::compute_cs;
use crate::dpp::{complement_frame, OrthonormalFrame, ProjectionDpp};
use crate::error::{Error, Result};
use crate::events::{disjoint_occurrence_contains, IncreasingEvent};
use crate::exterior::{leave_one_out_wedges, wedge_norm_sq, Vector, VectorFamily};
use crate::pointset::PointSet;
use crate::report::CheckReport;
use crate::POSITIVITY_THRESHOLD;

/// Absolute tolerance for comparisons between probabilities.
pub const PROBABILITY_TOLERANCE: f64 = 1e-10;
/// Tolerance for pure scalar inequalities.
pub const SCALAR_TOLERANCE: f64 = 1e-12;
/// Relative tolerance for the leave-one-out wedge identity.
pub const LEMMA1_RELATIVE_TOLERANCE: f64 = 1e-9;

fn check_ground(dpp: &ProjectionDpp, events: &[&IncreasingEvent]) -> Result<()> {
    for e in events {
        if e.n_points() != dpp.n_points() {
            return Err(Error::GroundSetMismatch(dpp.n_points(), e.n_points()));
        }
    }
    Ok(())
}

fn describe(event: &IncreasingEvent) -> String {
    let gens: Vec<String> = event.generators().iter().map(|g| format!("{g:?}")).collect();
    format!("[{}]", gens.join(""))
}

/// The five probabilities entering the BK inequality and its complemented
/// form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BkProbabilities {
    pub a: f64,
    pub b: f64,
    pub a_and_b: f64,
    pub neither: f64,
    pub disjoint: f64,
}

impl BkProbabilities {
    pub fn compute(dpp: &ProjectionDpp, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<Self> {
        check_ground(dpp, &[a, b])?;
        let mut acc = BkProbabilities {
            a: 0.0,
            b: 0.0,
            a_and_b: 0.0,
            neither: 0.0,
            disjoint: 0.0,
        };
        for &(s, pr) in dpp.law()? {
            let (in_a, in_b) = (a.contains(s), b.contains(s));
            if in_a {
                acc.a += pr;
            }
            if in_b {
                acc.b += pr;
            }
            if in_a && in_b {
                acc.a_and_b += pr;
                if disjoint_occurrence_contains(a, b, s) {
                    acc.disjoint += pr;
                }
            }
            if !in_a && !in_b {
                acc.neither += pr;
            }
        }
        Ok(acc)
    }

    /// `P(𝔄)P(𝔅) - P(𝔄∘𝔅)`.
    pub fn residual_p1(&self) -> f64 {
        self.a * self.b - self.disjoint
    }

    /// `P(∉𝔄)P(∉𝔅) + P(𝔄∩𝔅) - P(𝔄∘𝔅) - P(∉𝔄∪𝔅)`.
    pub fn residual_p2(&self) -> f64 {
        (1.0 - self.a) * (1.0 - self.b) + self.a_and_b - self.disjoint - self.neither
    }
}

/// `P(φ ∈ 𝔄∘𝔅) ≤ P(φ ∈ 𝔄) P(φ ∈ 𝔅)`.
pub fn check_bk(dpp: &ProjectionDpp, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
    let pr = BkProbabilities::compute(dpp, a, b)?;
    let report = CheckReport::inequality("bk", pr.disjoint, pr.a * pr.b, PROBABILITY_TOLERANCE)
        .with_witness(format!("A={} B={}", describe(a), describe(b)));
    Ok(if a.is_simple() && b.is_simple() {
        report
    } else {
        report.with_note("generators beyond single points: outside the proved case")
    })
}

/// Residual of the BK inequality equals the residual of its complemented
/// form.
pub fn check_equivalence_p2(dpp: &ProjectionDpp, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
    let pr = BkProbabilities::compute(dpp, a, b)?;
    Ok(CheckReport::identity("bk.p1_p2_residuals", pr.residual_p1(), pr.residual_p2(), PROBABILITY_TOLERANCE)
        .with_witness(format!("A={} B={}", describe(a), describe(b))))
}

/// For `𝔄` generated by pairwise disjoint sets `A_1..A_n`, the residual of
/// `P(∉𝔄) ≤ P(∉𝔄)² + P(𝔄) - P(𝔄∘𝔄)` equals
/// `P(∉𝔄)² + Σ_i P(A_j ⊄ φ ∀j≠i) - (n+1) P(∉𝔄)`.
pub fn check_disjoint_generator_form(dpp: &ProjectionDpp, a: &IncreasingEvent) -> Result<CheckReport> {
    check_ground(dpp, &[a])?;
    let gens = a.generators();
    for (i, g) in gens.iter().enumerate() {
        if gens[i + 1..].iter().any(|h| !h.is_disjoint(*g)) {
            return Err(Error::InvalidArgument("generators must be pairwise disjoint".into()));
        }
    }
    let pr = BkProbabilities::compute(dpp, a, a)?;
    let not_a = 1.0 - pr.a;
    let p4 = not_a * not_a + pr.a - pr.disjoint - not_a;
    let n = gens.len();
    let mut others_missing = 0.0;
    for i in 0..n {
        others_missing += dpp.event_probability(|s| {
            gens.iter().enumerate().all(|(j, g)| j == i || !g.is_subset(s))
        })?;
    }
    let p6 = not_a * not_a + others_missing - (n as f64 + 1.0) * not_a;
    Ok(CheckReport::identity("bk.p4_p6_residuals", p4, p6, PROBABILITY_TOLERANCE)
        .with_witness(format!("A={}", describe(a))))
}

/// `(n+1) - a - n a^{-1/n} ≤ 0` for `0 < a ≤ 1`.
pub fn check_lemma2(a: f64, n: u32) -> Result<CheckReport> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::DomainError(format!("a must lie in (0, 1], got {a}")));
    }
    if n == 0 {
        return Err(Error::DomainError("n must be positive".into()));
    }
    let nf = f64::from(n);
    let value = (nf + 1.0) - a - nf * a.powf(-1.0 / nf);
    Ok(CheckReport::inequality("lemma2", value, 0.0, SCALAR_TOLERANCE).with_witness(format!("a={a:e} n={n}")))
}

/// `‖⋀ ṽ_i‖ = ‖⋀ v_i‖^{n-1}`, compared in squared form with relative
/// tolerance 1e-9.
pub fn check_lemma1(v: &VectorFamily) -> Result<CheckReport> {
    let n = v.len();
    let tilde = leave_one_out_wedges(v)?;
    let lhs = wedge_norm_sq(&tilde)?;
    let rhs = wedge_norm_sq(v)?.powi(n as i32 - 1);
    let tolerance = (LEMMA1_RELATIVE_TOLERANCE * lhs.abs().max(rhs.abs())).max(1e-15);
    Ok(CheckReport::identity("lemma1.B2", lhs, rhs, tolerance).with_witness(format!("n={n}")))
}

fn points_witness(dpp: &ProjectionDpp, points: PointSet) -> String {
    format!("N={} p={} points={points:?}", dpp.n_points(), dpp.rank())
}

/// `P(φ ∈ 𝔄∘𝔄) ≤ P(φ ∈ 𝔄)²` for `𝔄` generated by the single points of
/// `points`, plus the same inequality rewritten for the complement process.
pub fn check_theorem1(dpp: &ProjectionDpp, points: PointSet) -> Result<Vec<CheckReport>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least two points, got {n}")));
    }
    points.check_within(dpp.n_points())?;
    let witness = points_witness(dpp, points);
    let a = IncreasingEvent::from_points(dpp.n_points(), points)?;
    let pr = BkProbabilities::compute(dpp, &a, &a)?;
    let mut reports = vec![CheckReport::inequality("theorem1.B7", pr.disjoint, pr.a * pr.a, PROBABILITY_TOLERANCE)
        .with_witness(witness.clone())];
    let room = dpp.n_points() - dpp.rank();
    if n > room {
        reports.push(
            CheckReport::identity("theorem1.certain", pr.a, 1.0, PROBABILITY_TOLERANCE)
                .with_witness(witness)
                .with_note("more points than N-p: the event is certain"),
        );
        return Ok(reports);
    }
    let dual = ProjectionDpp::new(complement_frame(dpp.frame())?);
    let all_out = dual.inclusion_probability(points)?;
    let mut sum_others = 0.0;
    for x in points.iter() {
        sum_others += dual.inclusion_probability(points.without(x))?;
    }
    let lhs = (n as f64 + 1.0) * all_out;
    let rhs = all_out * all_out + sum_others;
    reports.push(CheckReport::inequality("theorem1.B9", lhs, rhs, PROBABILITY_TOLERANCE).with_witness(witness.clone()));
    reports.push(
        CheckReport::identity("theorem1.B7_B9_residuals", pr.residual_p1(), rhs - lhs, PROBABILITY_TOLERANCE)
            .with_witness(witness),
    );
    Ok(reports)
}

/// The `v` vectors of the self-disjoint argument: rows of the CS basis of `E^⊥`
/// restricted to `J`, i.e. `v_i = (λ_1 u^1_i, …, λ_n u^n_i)` with
/// `λ_k = cos θ_k`. Also returns the `λ`s.
pub fn complement_v_family(frame: &OrthonormalFrame, points: PointSet) -> Result<(VectorFamily, Vec<f64>)> {
    let n = points.len();
    let room = frame.n_points() - frame.rank();
    if n > room {
        return Err(Error::TooManyPoints { n, limit: room });
    }
    let dual = complement_frame(frame)?;
    let cs = compute_cs(dual.columns(), points)?;
    let lambdas = cs.cosines.clone();
    let rows = (0..n)
        .map(|i| Vector::new((0..n).map(|k| lambdas[k] * cs.u.get(k)[i]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok((VectorFamily::new(rows, n)?, lambdas))
}

/// Every link of the self-disjoint chain for `J = points`, `2 ≤ |J| ≤ N - p`.
pub fn check_chain_b12_to_b15(frame: &OrthonormalFrame, points: PointSet) -> Result<Vec<CheckReport>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least two points, got {n}")));
    }
    let dpp = ProjectionDpp::new(frame.clone());
    let witness = points_witness(&dpp, points);
    let (v, lambdas) = complement_v_family(frame, points)?;
    let tilde = leave_one_out_wedges(&v)?;
    let nf = n as f64;
    let tol = PROBABILITY_TOLERANCE;
    let mut reports = Vec::new();
    let mut push = |r: CheckReport| reports.push(r.with_witness(witness.clone()));

    let a = wedge_norm_sq(&v)?;
    let tilde_sq: Vec<f64> = tilde.members().iter().map(|t| t.dot(t)).collect();
    let sum_tilde: f64 = tilde_sq.iter().sum();

    // the v-vectors carry the complement probabilities
    let p_all = dpp.event_probability(|s| s.is_disjoint(points))?;
    push(CheckReport::identity("chain.B10_probability", p_all, a, tol));
    push(CheckReport::identity("chain.B10_lambdas", a, lambdas.iter().map(|l| l * l).product(), tol));
    let mut p_others = Vec::with_capacity(n);
    for (i, x) in points.iter().enumerate() {
        let rest = points.without(x);
        let pr = dpp.event_probability(|s| s.is_disjoint(rest))?;
        p_others.push(pr);
        push(CheckReport::identity(format!("chain.B11[{}]", x + 1), pr, tilde_sq[i], tol));
    }

    let lemma1 = check_lemma1(&v)?;
    push(lemma1);

    push(CheckReport::inequality("chain.B12", (nf + 1.0) * a, a * a + sum_tilde, tol));

    if a <= f64::MIN_POSITIVE {
        push(
            CheckReport::inequality("chain.B13", 0.0, 0.0, tol)
                .with_note("degenerate: some λ_i = 0, so P(J ⊂ φᶜ) = 0 and the inequality is trivial"),
        );
    } else {
        push(CheckReport::inequality("chain.B13", (nf + 1.0) * a, a * a + nf * a.powf(1.0 - 1.0 / nf), tol));
    }
    let geo: f64 = tilde_sq.iter().map(|t| t.powf(1.0 / nf)).product();
    push(CheckReport::inequality("chain.B14", a.powf((nf - 1.0) / nf), geo, tol));
    push(CheckReport::inequality("chain.B15", nf * geo, sum_tilde, tol));
    push(CheckReport::inequality("chain.B16", p_all.powi(n as i32 - 1), p_others.iter().product(), tol));
    Ok(reports)
}

/// `P(x_1 ∈ φᶜ | x_j ∈ φᶜ, j = 2..n) ≤ P(x_1 ∈ φᶜ | x_j ∈ φᶜ, j ≠ 1, k)`
/// for `points = [x_1, …, x_n]` (0-based labels) and `k` a 1-based position
/// in `2..=n`.
pub fn check_lemma3(dpp: &ProjectionDpp, points: &[usize], k: usize) -> Result<CheckReport> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least three points, got {n}")));
    }
    if !(2..=n).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must lie in 2..={n}, got {k}")));
    }
    let all = PointSet::from_indices(points.iter().copied());
    if all.len() != n {
        return Err(Error::InvalidArgument("points must be distinct".into()));
    }
    all.check_within(dpp.n_points())?;
    let x1 = points[0];
    let rest = all.without(x1);
    let rest_minus_k = rest.without(points[k - 1]);
    let lhs = dpp.conditional_probability(|s| !s.contains(x1), |s| s.is_disjoint(rest))?;
    let rhs = dpp.conditional_probability(|s| !s.contains(x1), |s| s.is_disjoint(rest_minus_k))?;
    let labels: Vec<usize> = points.iter().map(|x| x + 1).collect();
    Ok(CheckReport::inequality("lemma3.B17", lhs, rhs, PROBABILITY_TOLERANCE)
        .with_witness(format!("N={} p={} points={labels:?} k={k}", dpp.n_points(), dpp.rank())))
}

fn require_simple(events: &[&IncreasingEvent]) -> Result<()> {
    if events.iter().all(|e| e.is_simple()) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("events must be generated by single points".into()))
    }
}

/// One induction step for single-point events: from BK for `(𝔄, 𝔅)` on
/// `ψ₀ = (φ | x₀ ∉ φ)` to BK for `(σ{x₀, 𝔄}, 𝔅)` on `φ`.
pub fn check_lemma4_step(
    dpp: &ProjectionDpp,
    a: &IncreasingEvent,
    b: &IncreasingEvent,
    x0: usize,
) -> Result<Vec<CheckReport>> {
    let psi0 = condition_on_exclusion(dpp, PointSet::singleton(x0))?;
    lemma4_step_with(dpp, &psi0, a, b, x0)
}

/// [`check_lemma4_step`] with the conditioned process supplied, for sweeps
/// that reuse it across many event pairs.
pub fn lemma4_step_with(
    dpp: &ProjectionDpp,
    psi0: &ConditionedProcess,
    a: &IncreasingEvent,
    b: &IncreasingEvent,
    x0: usize,
) -> Result<Vec<CheckReport>> {
    check_ground(dpp, &[a, b])?;
    require_simple(&[a, b])?;
    if psi0.condition != crate::conditioning::Condition::Exclude(PointSet::singleton(x0)) {
        return Err(Error::InvalidArgument("conditioned process must exclude x0".into()));
    }
    let (s1, s2) = (a.support(), b.support());
    if s1.union(s2).contains(x0) {
        return Err(Error::PointAlreadyGenerating(x0 + 1));
    }
    let q = dpp.exclusion_probability(PointSet::singleton(x0))?;
    if q <= POSITIVITY_THRESHOLD {
        return Err(Error::ZeroProbabilityCondition(q));
    }
    let witness = format!(
        "N={} p={} A={} B={} x0={}",
        dpp.n_points(),
        dpp.rank(),
        describe(a),
        describe(b),
        x0 + 1
    );
    let tol = PROBABILITY_TOLERANCE;
    let psi = &psi0.result;
    let (c1, c2) = (psi0.to_conditioned(s1)?, psi0.to_conditioned(s2)?);
    let (cs, cu) = (c1.intersection(c2), c1.union(c2));
    let a0 = IncreasingEvent::from_points(psi.n_points(), c1)?;
    let b0 = IncreasingEvent::from_points(psi.n_points(), c2)?;

    let avoid = |d: &ProjectionDpp, set: PointSet| d.event_probability(|s| s.is_disjoint(set));
    let lone_hits: f64 = cs
        .iter()
        .map(|x| psi.event_probability(|s| s.contains(x) && s.is_disjoint(cu.without(x))))
        .sum::<Result<f64>>()?;
    let all_out = avoid(psi, cu)?;
    let s1_out = avoid(psi, c1)?;
    let s2_out_psi0 = avoid(psi, c2)?;
    let s2_out_phi = avoid(dpp, s2)?;

    let mut reports = Vec::new();
    let hypothesis = check_bk(psi, &a0, &b0)?;
    let hypothesis_holds = hypothesis.pass;
    let residual_b25 = s1_out * s2_out_psi0 + lone_hits - all_out;
    reports.push(CheckReport {
        name: "lemma4.hypothesis_bk_psi0".into(),
        ..hypothesis.clone()
    });
    reports.push(CheckReport::identity("lemma4.B22", hypothesis.slack, residual_b25, tol));
    reports.push(CheckReport::inequality("lemma4.B25", all_out, s1_out * s2_out_psi0 + lone_hits, tol));
    reports.push(CheckReport::inequality("lemma4.B26", s2_out_psi0, s2_out_phi, tol));
    let b24_rhs = s1_out * s2_out_phi + lone_hits;
    reports.push(CheckReport::inequality("lemma4.B24", all_out, b24_rhs, tol));

    let extended = a.extend_by_point(x0)?;
    let conclusion = BkProbabilities::compute(dpp, &extended, b)?;
    reports.push(CheckReport::identity(
        "lemma4.B21_B24_scaling",
        conclusion.residual_p1(),
        q * (b24_rhs - all_out),
        tol,
    ));
    let mut concl = CheckReport::inequality("lemma4.conclusion_bk", conclusion.disjoint, conclusion.a * conclusion.b, tol);
    if !hypothesis_holds {
        concl = concl.with_note("hypothesis failed on ψ₀");
    }
    reports.push(concl);
    Ok(reports.into_iter().map(|r| CheckReport { witness: Some(witness.clone()), ..r }).collect())
}

/// BK for the events generated by the single points of `a_points` and
/// `b_points`; when the generators are disjoint, also the negative
/// association form and its agreement with the BK residual.
pub fn check_theorem2(dpp: &ProjectionDpp, a_points: PointSet, b_points: PointSet) -> Result<Vec<CheckReport>> {
    let n = dpp.n_points();
    let a = IncreasingEvent::from_points(n, a_points)?;
    let b = IncreasingEvent::from_points(n, b_points)?;
    let pr = BkProbabilities::compute(dpp, &a, &b)?;
    let witness = format!("N={} p={} A={a_points:?} B={b_points:?}", n, dpp.rank());
    let tol = PROBABILITY_TOLERANCE;
    let mut main = CheckReport::inequality("theorem2.B19", pr.disjoint, pr.a * pr.b, tol).with_witness(witness.clone());
    if a_points == b_points && a_points.len() >= 2 {
        main = main.with_note("identical generators: self-disjoint case");
    }
    let mut reports = vec![main];
    if a_points.is_disjoint(b_points) {
        let lhs = pr.neither;
        let rhs = (1.0 - pr.a) * (1.0 - pr.b);
        reports.push(CheckReport::inequality("theorem2.p3_negative_association", lhs, rhs, tol).with_witness(witness.clone()));
        reports.push(CheckReport::identity("theorem2.p3_p1_residuals", rhs - lhs, pr.residual_p1(), tol).with_witness(witness));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_rank_one(n: usize) -> ProjectionDpp {
        let c = 1.0 / (n as f64).sqrt();
        ProjectionDpp::new(OrthonormalFrame::new(VectorFamily::from_rows(vec![vec![c; n]]).unwrap()).unwrap())
    }

    #[test]
    fn rank_one_cannot_hold_two_points() {
        let dpp = uniform_rank_one(3);
        let a = IncreasingEvent::from_points(3, PointSet::from_indices([0, 1])).unwrap();
        let r = check_bk(&dpp, &a, &a).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!((r.rhs - 4.0 / 9.0).abs() < 1e-14);
        assert!(r.pass && r.note.is_none());
        let t1 = check_theorem1(&dpp, PointSet::from_indices([0, 1])).unwrap();
        assert!(t1.iter().all(|r| r.pass));
        assert_eq!(t1[0].lhs, 0.0);
    }

    #[test]
    fn vacuous_event() {
        let dpp = uniform_rank_one(3);
        let a = IncreasingEvent::from_points(3, PointSet::singleton(0)).unwrap();
        let none = IncreasingEvent::vacuous(3);
        let r = check_bk(&dpp, &a, &none).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.pass);
        assert!(check_equivalence_p2(&dpp, &a, &none).unwrap().pass);
    }

    #[test]
    fn non_simple_events_are_flagged() {
        let dpp = uniform_rank_one(4);
        let a = IncreasingEvent::normalize_generators(4, &[PointSet::from_indices([0, 1])]).unwrap();
        assert!(check_bk(&dpp, &a, &a).unwrap().note.is_some());
        let mismatch = IncreasingEvent::vacuous(5);
        assert!(matches!(check_bk(&dpp, &a, &mismatch), Err(Error::GroundSetMismatch(4, 5))));
    }

    #[test]
    fn scalar_inequality_examples() {
        for n in 1..20 {
            let r = check_lemma2(1.0, n).unwrap();
            assert!(r.lhs.abs() < 1e-13 && r.pass);
        }
        let r = check_lemma2(0.25, 2).unwrap();
        assert!((r.lhs + 1.25).abs() < 1e-15);
        assert!(matches!(check_lemma2(0.0, 2), Err(Error::DomainError(_))));
        assert!(matches!(check_lemma2(1.5, 2), Err(Error::DomainError(_))));
        assert!(check_lemma2(0.5, 0).is_err());
    }

    #[test]
    fn coordinate_points_outside_support() {
        let dpp = ProjectionDpp::new(OrthonormalFrame::coordinate(5, 2).unwrap());
        let reports = check_theorem1(&dpp, PointSet::from_indices([2, 3, 4])).unwrap();
        assert_eq!(reports[0].lhs, 0.0);
        assert_eq!(reports[0].rhs, 0.0);
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn chain_with_unit_lambdas() {
        // E = span(e1, e2), J = {3, 4}: J lies inside E^⊥ so every λ = 1
        let f = OrthonormalFrame::coordinate(5, 2).unwrap();
        let reports = check_chain_b12_to_b15(&f, PointSet::from_indices([2, 3])).unwrap();
        assert!(reports.iter().all(|r| r.pass), "{reports:#?}");
        assert!(reports.iter().all(|r| r.slack.abs() < 1e-12), "{reports:#?}");
    }

    #[test]
    fn chain_degenerate_branch() {
        // J = {1, 3}: point 1 is always in φ, so λ = 0
        let f = OrthonormalFrame::coordinate(5, 2).unwrap();
        let reports = check_chain_b12_to_b15(&f, PointSet::from_indices([0, 2])).unwrap();
        let b13 = reports.iter().find(|r| r.name == "chain.B13").unwrap();
        assert!(b13.note.is_some());
        assert!(reports.iter().all(|r| r.pass), "{reports:#?}");
    }

    #[test]
    fn conditional_exclusion_preconditions() {
        let dpp = uniform_rank_one(4);
        assert!(check_lemma3(&dpp, &[0, 1], 2).is_err());
        assert!(check_lemma3(&dpp, &[0, 1, 2], 1).is_err());
        assert!(check_lemma3(&dpp, &[0, 1, 2], 4).is_err());
        assert!(check_lemma3(&dpp, &[0, 1, 2], 3).unwrap().pass);
    }

    #[test]
    fn induction_step_rejects_generating_x0() {
        let dpp = uniform_rank_one(4);
        let a = IncreasingEvent::from_points(4, PointSet::singleton(0)).unwrap();
        assert_eq!(
            check_lemma4_step(&dpp, &a, &a, 0).err(),
            Some(Error::PointAlreadyGenerating(1))
        );
        let non_simple = IncreasingEvent::normalize_generators(4, &[PointSet::from_indices([0, 1])]).unwrap();
        assert!(matches!(check_lemma4_step(&dpp, &non_simple, &a, 3), Err(Error::InvalidArgument(_))));
    }
}
