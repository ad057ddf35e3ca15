//! Named verification suites, run either exhaustively over a frame or on a
//! randomly drawn instance.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::bk::{
    check_chain_b12_to_b15, check_equivalence_p2, check_lemma1, check_lemma2, check_lemma3, check_lemma4_step,
    check_theorem1, check_theorem2, complement_v_family,
};
use crate::conditioning::{condition_on_exclusion, verify_monotonicity, verify_prop2_identity};
use crate::cs::verify_prop1_probabilities;
use crate::dpp::ProjectionDpp;
use crate::error::{Error, Result};
use crate::events::IncreasingEvent;
use crate::exterior::VectorFamily;
use crate::pointset::{all_subsets, subsets_of_size, PointSet};
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Prop1,
    Prop2,
    Lemma1,
    Lemma2,
    Lemma3,
    Theorem1,
    Theorem2,
    Lemma4,
    Monotonicity,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Prop1,
        Suite::Prop2,
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Lemma3,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Lemma4,
        Suite::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Lemma4 => "lemma4",
            Suite::Monotonicity => "monotonicity",
        }
    }

    /// `all` or a comma-separated list of suite names.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut suites = Vec::new();
        for part in name.split(',').map(str::trim) {
            let suite: Suite = part.parse()?;
            if !suites.contains(&suite) {
                suites.push(suite);
            }
        }
        Ok(suites)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Errors that mean "this instance does not satisfy the check's
/// preconditions" rather than "something is broken".
pub fn is_precondition_failure(err: &Error) -> bool {
    matches!(
        err,
        Error::ZeroProbabilityCondition(_)
            | Error::TooManyPoints { .. }
            | Error::InvalidArgument(_)
            | Error::OverlappingSets
            | Error::PointAlreadyGenerating(_)
            | Error::FullRank
    )
}

/// Reports plus a count of instances skipped for unmet preconditions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteOutput {
    pub reports: Vec<CheckReport>,
    pub skipped: usize,
}

impl SuiteOutput {
    fn absorb(&mut self, result: Result<Vec<CheckReport>>) -> Result<()> {
        match result {
            Ok(mut r) => self.reports.append(&mut r),
            Err(e) if is_precondition_failure(&e) => self.skipped += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

/// Optional restriction of an exhaustive run to user-chosen points
/// (0-based labels, in the given order).
#[derive(Debug, Clone, Default)]
pub struct Selection {
    pub points: Option<Vec<usize>>,
    pub points_b: Option<Vec<usize>>,
    pub x0: Option<usize>,
}

impl Selection {
    fn set_a(&self) -> Option<PointSet> {
        self.points.as_ref().map(|p| PointSet::from_indices(p.iter().copied()))
    }

    fn set_b(&self) -> Option<PointSet> {
        self.points_b.as_ref().map(|p| PointSet::from_indices(p.iter().copied()))
    }
}

/// Grid used by the lemma2 suite: `per_n` values of `a` per `n ∈ 1..=10`,
/// half log-spaced over `[1e-6, 1]` and half evenly spaced over `(0, 1]`.
pub fn lemma2_grid(per_n: usize) -> impl Iterator<Item = (f64, u32)> {
    let half = (per_n / 2).max(1);
    let rest = per_n.saturating_sub(half).max(1);
    (1..=10u32).flat_map(move |n| {
        let log = (0..half).map(move |k| 10f64.powf(-6.0 * (1.0 - k as f64 / (half - 1).max(1) as f64)));
        let lin = (1..=rest).map(move |k| k as f64 / rest as f64);
        log.chain(lin).map(move |a| (a, n))
    })
}

fn ordered_lists(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, len, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, len, &mut cur, &mut out);
    out
}

fn check_within(sel: &Selection, n: usize) -> Result<()> {
    for p in sel.points.iter().chain(sel.points_b.iter()).flatten().chain(sel.x0.iter()) {
        if *p >= n {
            return Err(Error::PointOutOfRange { point: p + 1, n_points: n });
        }
    }
    Ok(())
}

/// Runs `suite` on `dpp` over every admissible instance, or only on the
/// instance described by `sel` where it pins one down.
pub fn run_exhaustive(dpp: &ProjectionDpp, suite: Suite, sel: &Selection) -> Result<SuiteOutput> {
    let n = dpp.n_points();
    let p = dpp.rank();
    check_within(sel, n)?;
    let frame = dpp.frame();
    let mut out = SuiteOutput::default();
    match suite {
        Suite::Prop1 => {
            let sets: Vec<PointSet> = match sel.set_a() {
                Some(j) => vec![j],
                None => (1..=p.min(3)).flat_map(|k| subsets_of_size(n, k)).collect(),
            };
            for j in sets {
                out.absorb(verify_prop1_probabilities(frame, j))?;
            }
        }
        Suite::Prop2 => {
            let lists = match &sel.points {
                Some(pts) => vec![pts.clone()],
                None => (2..=n.min(3)).flat_map(|len| ordered_lists(n, len)).collect(),
            };
            for pts in lists {
                out.absorb(verify_prop2_identity(frame, &pts).map(|r| vec![r]))?;
            }
        }
        Suite::Lemma1 => {
            let sets: Vec<PointSet> = match sel.set_a() {
                Some(j) => vec![j],
                None => (2..=n - p).flat_map(|k| subsets_of_size(n, k)).collect(),
            };
            for j in sets {
                out.absorb(
                    complement_v_family(frame, j)
                        .and_then(|(v, _)| check_lemma1(&v))
                        .map(|r| vec![r.in_context(&format!("J={j:?}"))]),
                )?;
            }
        }
        Suite::Lemma2 => {
            for (a, k) in lemma2_grid(100) {
                out.absorb(check_lemma2(a, k).map(|r| vec![r]))?;
            }
        }
        Suite::Lemma3 => {
            let lists = match &sel.points {
                Some(pts) => vec![pts.clone()],
                None => ordered_lists(n, 3.min(n)),
            };
            for pts in lists {
                for k in 2..=pts.len() {
                    out.absorb(check_lemma3(dpp, &pts, k).map(|r| vec![r]))?;
                }
            }
        }
        Suite::Theorem1 => {
            let sets: Vec<PointSet> = match sel.set_a() {
                Some(j) => vec![j],
                None => (2..=n).flat_map(|k| subsets_of_size(n, k)).collect(),
            };
            for j in sets {
                out.absorb(check_theorem1(dpp, j))?;
                if j.len() <= n - p {
                    out.absorb(check_chain_b12_to_b15(frame, j))?;
                }
            }
        }
        Suite::Theorem2 => {
            let sets_a: Vec<PointSet> = match sel.set_a() {
                Some(a) => vec![a],
                None => all_subsets(n).skip(1).collect(),
            };
            let sets_b: Vec<PointSet> = match sel.set_b() {
                Some(b) => vec![b],
                None => all_subsets(n).skip(1).collect(),
            };
            for &a in &sets_a {
                for &b in &sets_b {
                    out.absorb(theorem2_instance(dpp, a, b))?;
                }
            }
        }
        Suite::Lemma4 => {
            let x0s: Vec<usize> = match sel.x0 {
                Some(x) => vec![x],
                None => (0..n).collect(),
            };
            for x0 in x0s {
                let psi0 = match condition_on_exclusion(dpp, PointSet::singleton(x0)) {
                    Ok(c) => c,
                    Err(e) if is_precondition_failure(&e) => {
                        out.skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let rest = PointSet::singleton(x0).complement(n);
                let pick = |s: Option<PointSet>| -> Vec<PointSet> {
                    match s {
                        Some(s) => vec![s],
                        None => all_subsets(n).filter(|s| s.is_subset(rest)).collect(),
                    }
                };
                for a in pick(sel.set_a()) {
                    for b in pick(sel.set_b()) {
                        out.absorb(lemma4_instance(dpp, &psi0, a, b, x0))?;
                    }
                }
            }
        }
        Suite::Monotonicity => {
            let js: Vec<PointSet> = match sel.set_a() {
                Some(j) => vec![j],
                None => (1..=2.min(n)).flat_map(|k| subsets_of_size(n, k)).collect(),
            };
            for j in js {
                let ks: Vec<PointSet> = match sel.set_b() {
                    Some(k) => vec![k],
                    None => (0..=2)
                        .flat_map(|k| subsets_of_size(n, k))
                        .filter(|k| k.is_disjoint(j))
                        .collect(),
                };
                for k in ks {
                    out.absorb(verify_monotonicity(dpp, j, k))?;
                }
            }
        }
    }
    Ok(out)
}

/// BK for one pair of single-point events plus the residual identity.
pub fn theorem2_instance(dpp: &ProjectionDpp, a: PointSet, b: PointSet) -> Result<Vec<CheckReport>> {
    let mut reports = check_theorem2(dpp, a, b)?;
    let ea = IncreasingEvent::from_points(dpp.n_points(), a)?;
    let eb = IncreasingEvent::from_points(dpp.n_points(), b)?;
    reports.push(check_equivalence_p2(dpp, &ea, &eb)?.in_context(&format!("N={} p={}", dpp.n_points(), dpp.rank())));
    Ok(reports)
}

fn lemma4_instance(
    dpp: &ProjectionDpp,
    psi0: &crate::conditioning::ConditionedProcess,
    a: PointSet,
    b: PointSet,
    x0: usize,
) -> Result<Vec<CheckReport>> {
    let ea = IncreasingEvent::from_points(dpp.n_points(), a)?;
    let eb = IncreasingEvent::from_points(dpp.n_points(), b)?;
    crate::bk::lemma4_step_with(dpp, psi0, &ea, &eb, x0)
}

fn random_subset<R: Rng + ?Sized>(rng: &mut R, within: PointSet) -> PointSet {
    PointSet::from_bits(rng.random::<u64>() & within.bits())
}

fn random_sized_subset<R: Rng + ?Sized>(rng: &mut R, within: PointSet, size: usize) -> PointSet {
    let mut pool: Vec<usize> = within.iter().collect();
    let mut chosen = PointSet::EMPTY;
    for _ in 0..size.min(pool.len()) {
        let idx = rng.random_range(0..pool.len());
        chosen = chosen.with(pool.swap_remove(idx));
    }
    chosen
}

fn random_ordered<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    (0..len.min(n)).map(|_| pool.swap_remove(rng.random_range(0..pool.len()))).collect()
}

/// Draws one random instance of `suite` for `dpp` and checks it.
pub fn run_random_instance<R: Rng + ?Sized>(dpp: &ProjectionDpp, suite: Suite, rng: &mut R) -> Result<Vec<CheckReport>> {
    let n = dpp.n_points();
    let p = dpp.rank();
    let room = n - p;
    let full = PointSet::full(n);
    let frame = dpp.frame();
    match suite {
        Suite::Prop1 => {
            let cap = p.min(room).min(3).max(1);
            let size = rng.random_range(1..=cap);
            verify_prop1_probabilities(frame, random_sized_subset(rng, full, size))
        }
        Suite::Prop2 => {
            let len = rng.random_range(2..=4usize.min(n));
            verify_prop2_identity(frame, &random_ordered(rng, n, len)).map(|r| vec![r])
        }
        Suite::Lemma1 => {
            let k = rng.random_range(2..=6usize);
            let rows = (0..k).map(|_| (0..k).map(|_| rng.sample(StandardNormal)).collect()).collect();
            let mut reports = vec![check_lemma1(&VectorFamily::from_rows(rows)?)?];
            if room >= 2 {
                let size = rng.random_range(2..=room.min(6));
                let j = random_sized_subset(rng, full, size);
                let (v, _) = complement_v_family(frame, j)?;
                reports.push(check_lemma1(&v)?.in_context(&format!("J={j:?}")));
            }
            Ok(reports)
        }
        Suite::Lemma2 => {
            let a = 1.0 - rng.random::<f64>();
            let k = rng.random_range(1..=10u32);
            check_lemma2(a, k).map(|r| vec![r])
        }
        Suite::Lemma3 => {
            if n < 3 {
                return Err(Error::InvalidArgument("lemma3 needs N >= 3".into()));
            }
            let len = rng.random_range(3..=n.min(5));
            let pts = random_ordered(rng, n, len);
            let k = rng.random_range(2..=len);
            check_lemma3(dpp, &pts, k).map(|r| vec![r])
        }
        Suite::Theorem1 => {
            let upper = if room >= 2 { room } else { n };
            let size = rng.random_range(2..=upper);
            let j = random_sized_subset(rng, full, size);
            let mut reports = check_theorem1(dpp, j)?;
            if size <= room {
                reports.extend(check_chain_b12_to_b15(frame, j)?);
            }
            Ok(reports)
        }
        Suite::Theorem2 => {
            let size = rng.random_range(1..=n);
            let a = random_sized_subset(rng, full, size);
            let b = if rng.random_bool(0.5) {
                // overlapping generators
                random_subset(rng, full).union(random_sized_subset(rng, a, 1))
            } else {
                let size = rng.random_range(1..=n);
                random_sized_subset(rng, full, size)
            };
            theorem2_instance(dpp, a, b)
        }
        Suite::Lemma4 => {
            let x0 = rng.random_range(0..n);
            let rest = full.without(x0);
            let a = random_subset(rng, rest);
            let b = random_subset(rng, rest);
            let ea = IncreasingEvent::from_points(n, a)?;
            let eb = IncreasingEvent::from_points(n, b)?;
            check_lemma4_step(dpp, &ea, &eb, x0)
        }
        Suite::Monotonicity => {
            let j_size = rng.random_range(1..=2usize.min(n));
            let j = random_sized_subset(rng, full, j_size);
            let k_size = rng.random_range(0..=2usize);
            let k = random_sized_subset(rng, full.difference(j), k_size);
            verify_monotonicity(dpp, j, k)
        }
    }
}
