//! Seeded random sweeps over frames and events.
//!
//! Trial `t` of a run with seed `s` draws from `ChaCha8Rng::seed_from_u64(s)`
//! on stream `t`, so any single trial can be replayed in isolation and the
//! output does not depend on how trials are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dpp::{OrthonormalFrame, ProjectionDpp};
use crate::error::Error;
use crate::exterior::VectorFamily;
use crate::report::CheckReport;
use crate::suites::{is_precondition_failure, run_random_instance, Suite};

/// Name and version of the generator behind every seeded stream.
pub const RNG_NAME: &str = "chacha8/rand_chacha-0.9";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankPolicy {
    /// `p` uniform in `1..N`.
    Uniform,
    /// Fixed `p`, clamped to `1..N`.
    Fixed(usize),
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub n_points_min: usize,
    pub n_points_max: usize,
    pub rank_policy: RankPolicy,
    pub suites: Vec<Suite>,
    /// Every `k`-th trial feeds a non-orthonormal frame to the constructor,
    /// which must reject it.
    pub corrupt_every: Option<usize>,
}

impl FuzzConfig {
    pub fn new(seed: u64, trials: usize, n_points_max: usize) -> Self {
        FuzzConfig {
            seed,
            trials,
            n_points_min: 3,
            n_points_max,
            rank_policy: RankPolicy::Uniform,
            suites: Suite::ALL.to_vec(),
            corrupt_every: None,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub rng: String,
    pub trials: usize,
    pub checks: usize,
    pub failures: usize,
    pub skipped: usize,
    pub invalid_instances: usize,
    /// Errors other than unmet preconditions, with their trial.
    pub errors: Vec<String>,
    #[serde(skip)]
    pub reports: Vec<CheckReport>,
}

impl FuzzSummary {
    pub fn failed_reports(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.failures == 0 && self.errors.is_empty()
    }
}

#[derive(Debug, Default)]
struct TrialOutcome {
    reports: Vec<CheckReport>,
    skipped: usize,
    invalid: bool,
    errors: Vec<String>,
}

/// Stream for one trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(cfg: &FuzzConfig, trial: usize) -> TrialOutcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let n = rng.random_range(cfg.n_points_min..=cfg.n_points_max);
    let p = match cfg.rank_policy {
        RankPolicy::Uniform => rng.random_range(1..n),
        RankPolicy::Fixed(p) => p.clamp(1, n - 1),
    };
    let context = format!("seed={} trial={trial}", cfg.seed);
    let mut out = TrialOutcome::default();

    if cfg.corrupt_every.is_some_and(|k| k > 0 && trial % k == 0) {
        let rows = (0..p)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let rejected = VectorFamily::from_rows(rows)
            .map(|f| OrthonormalFrame::new(f).is_err())
            .unwrap_or(true);
        out.invalid = true;
        if !rejected {
            out.errors.push(format!("{context}: corrupted frame was accepted"));
        }
        return out;
    }

    let dpp = match OrthonormalFrame::random(&mut rng, n, p) {
        Ok(f) => ProjectionDpp::new(f),
        Err(e) => {
            out.errors.push(format!("{context}: {e}"));
            return out;
        }
    };
    for &suite in &cfg.suites {
        match run_random_instance(&dpp, suite, &mut rng) {
            Ok(reports) => out
                .reports
                .extend(reports.into_iter().map(|r| r.in_context(&context))),
            Err(e) if is_precondition_failure(&e) => out.skipped += 1,
            Err(e) => out.errors.push(format!("{context} suite={suite}: {e}")),
        }
    }
    out
}

/// Runs the configured sweep. Trials may execute concurrently; results are
/// merged in trial order.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, Error> {
    if cfg.n_points_max > 12 || cfg.n_points_min < 3 || cfg.n_points_min > cfg.n_points_max {
        return Err(Error::InvalidArgument(format!(
            "point range {}..={} must lie within 3..=12",
            cfg.n_points_min, cfg.n_points_max
        )));
    }
    let outcomes = run_all(cfg);
    let mut summary = FuzzSummary {
        seed: cfg.seed,
        rng: RNG_NAME.to_string(),
        trials: cfg.trials,
        ..FuzzSummary::default()
    };
    for o in outcomes {
        summary.skipped += o.skipped;
        summary.invalid_instances += usize::from(o.invalid);
        summary.errors.extend(o.errors);
        summary.reports.extend(o.reports);
    }
    summary.checks = summary.reports.len();
    summary.failures = summary.reports.iter().filter(|r| !r.pass).count();
    Ok(summary)
}

#[cfg(feature = "parallel")]
fn run_all(cfg: &FuzzConfig) -> Vec<TrialOutcome> {
    use rayon::prelude::*;
    (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_all(cfg: &FuzzConfig) -> Vec<TrialOutcome> {
    (0..cfg.trials).map(|t| run_trial(cfg, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_summary() {
        let cfg = FuzzConfig::new(11, 20, 6);
        let a = fuzz(&cfg).unwrap();
        let b = fuzz(&cfg).unwrap();
        assert_eq!(a.reports, b.reports);
        assert!(a.checks > 0);
        assert!(a.all_pass(), "{:#?}", a.failed_reports().collect::<Vec<_>>());
    }

    #[test]
    fn corrupted_frames_count_as_invalid() {
        let cfg = FuzzConfig {
            corrupt_every: Some(2),
            ..FuzzConfig::new(5, 10, 5)
        };
        let s = fuzz(&cfg).unwrap();
        assert_eq!(s.invalid_instances, 5);
        assert_eq!(s.failures, 0);
        assert!(s.errors.is_empty());
    }

    #[test]
    fn rejects_large_ground_sets() {
        assert!(fuzz(&FuzzConfig::new(1, 1, 13)).is_err());
    }
}
