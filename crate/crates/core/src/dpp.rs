//! Projection determinantal point processes on `{1..N}`.
//!
//! A frame `Z` (an `N x p` matrix with orthonormal columns) induces the law
//!
//! ```text
//! P(J ⊂ φ) = ‖⋀_{i∈J} z_i‖²        P(φ = S) = det(Z_S)²   (|S| = p)
//! ```
//!
//! where `z_i` is row `i` of `Z`. Realizations always have exactly `p` points.

use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{orthonormality_defect, orthonormalize, wedge_norm_sq, Vector, VectorFamily};
use crate::linalg::{dot, norm, Matrix};
use crate::pointset::{subsets_of_size, PointSet, MAX_POINTS};

/// Orthonormality tolerance for frames built in memory.
pub const FRAME_TOLERANCE: f64 = 1e-10;
/// Orthonormality tolerance for frames read from JSON.
pub const LOAD_TOLERANCE: f64 = 1e-8;
/// Largest ground set for which exact laws are enumerated.
pub const ENUMERATION_CAP: usize = 20;

/// `p` orthonormal columns in `R^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame {
    columns: VectorFamily,
    rows: Vec<Vector>,
}

impl OrthonormalFrame {
    pub fn new(columns: VectorFamily) -> Result<Self> {
        Self::with_tolerance(columns, FRAME_TOLERANCE)
    }

    pub fn with_tolerance(columns: VectorFamily, tolerance: f64) -> Result<Self> {
        let (n, p) = (columns.dim(), columns.len());
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints { n, limit: MAX_POINTS });
        }
        if p == 0 || p > n {
            return Err(Error::InvalidArgument(format!(
                "rank must satisfy 1 <= p <= N, got p={p}, N={n}"
            )));
        }
        let defect = orthonormality_defect(&columns);
        if defect > tolerance {
            return Err(Error::NotOrthonormal(defect));
        }
        let rows = (0..n)
            .map(|i| Vector::new((0..p).map(|k| columns.get(k)[i]).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrthonormalFrame { columns, rows })
    }

    /// Orthonormalizes an arbitrary spanning family first.
    pub fn from_spanning(family: &VectorFamily) -> Result<Self> {
        Self::new(orthonormalize(family)?)
    }

    /// Gaussian random frame (orthonormalized `N x p` standard normal matrix).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n_points: usize, rank: usize) -> Result<Self> {
        loop {
            let cols = (0..rank)
                .map(|_| (0..n_points).map(|_| rng.sample(StandardNormal)).collect())
                .collect();
            match Self::from_spanning(&VectorFamily::from_rows(cols)?) {
                Err(Error::RankDeficient { .. }) => continue,
                other => return other,
            }
        }
    }

    /// The frame whose columns are the first `rank` standard basis vectors.
    pub fn coordinate(n_points: usize, rank: usize) -> Result<Self> {
        let cols = (0..rank)
            .map(|k| (0..n_points).map(|i| if i == k { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(VectorFamily::from_rows(cols)?)
    }

    pub fn n_points(&self) -> usize {
        self.columns.dim()
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &VectorFamily {
        &self.columns
    }

    /// `z_i = (z^1_i, …, z^p_i)`, 0-based `i`.
    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn rows_of(&self, set: PointSet) -> VectorFamily {
        VectorFamily::new(set.iter().map(|i| self.rows[i].clone()).collect(), self.rank())
            .expect("rows share the rank dimension")
    }

    /// Frame with columns `Z R` for a `p x p` orthogonal `R`.
    pub fn rotated(&self, rotation: &Matrix) -> Result<Self> {
        let p = self.rank();
        if rotation.rows() != p || rotation.cols() != p {
            return Err(Error::DimensionMismatch(format!(
                "rotation must be {p}x{p}, got {}x{}",
                rotation.rows(),
                rotation.cols()
            )));
        }
        let defect = rotation.transpose().matmul(rotation).max_abs_diff(&Matrix::identity(p));
        if defect > FRAME_TOLERANCE {
            return Err(Error::NotOrthogonal(defect));
        }
        let z = self.columns.to_column_matrix().matmul(rotation);
        Self::new(VectorFamily::from_rows((0..p).map(|k| z.column(k)).collect())?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FrameDoc {
            n_points: self.n_points(),
            rank: self.rank(),
            columns: self.columns.to_rows(),
        })
        .expect("frame serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FrameDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_frame()
    }
}

/// On-disk frame document: `{"n_points": N, "rank": p, "columns": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub n_points: usize,
    pub rank: usize,
    pub columns: Vec<Vec<f64>>,
}

impl FrameDoc {
    pub fn into_frame(self) -> Result<OrthonormalFrame> {
        if self.columns.len() != self.rank {
            return Err(Error::Parse(format!(
                "rank is {} but {} columns were given",
                self.rank,
                self.columns.len()
            )));
        }
        if let Some(c) = self.columns.iter().find(|c| c.len() != self.n_points) {
            return Err(Error::Parse(format!(
                "column of length {} in a frame with n_points = {}",
                c.len(),
                self.n_points
            )));
        }
        if self.n_points == 0 {
            return Err(Error::Parse("n_points must be positive".into()));
        }
        let members = self.columns.into_iter().map(Vector::new).collect::<Result<Vec<_>>>()?;
        OrthonormalFrame::with_tolerance(VectorFamily::new(members, self.n_points)?, LOAD_TOLERANCE)
    }
}

/// Exact law as `(outcome, probability)` pairs over every `p`-subset, in
/// increasing bitmask order.
pub type Law = [(PointSet, f64)];

/// The projection DPP `φ(Z)`.
#[derive(Debug, Clone)]
pub struct ProjectionDpp {
    frame: OrthonormalFrame,
    law: OnceLock<Arc<Vec<(PointSet, f64)>>>,
}

impl PartialEq for ProjectionDpp {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame
    }
}

impl From<OrthonormalFrame> for ProjectionDpp {
    fn from(frame: OrthonormalFrame) -> Self {
        ProjectionDpp::new(frame)
    }
}

impl ProjectionDpp {
    pub fn new(frame: OrthonormalFrame) -> Self {
        ProjectionDpp {
            frame,
            law: OnceLock::new(),
        }
    }

    pub fn frame(&self) -> &OrthonormalFrame {
        &self.frame
    }

    pub fn n_points(&self) -> usize {
        self.frame.n_points()
    }

    pub fn rank(&self) -> usize {
        self.frame.rank()
    }

    /// `P(J ⊂ φ)`.
    pub fn inclusion_probability(&self, j: PointSet) -> Result<f64> {
        j.check_within(self.n_points())?;
        if j.is_empty() {
            return Ok(1.0);
        }
        if j.len() > self.rank() {
            return Ok(0.0);
        }
        Ok(wedge_norm_sq(&self.frame.rows_of(j))?.min(1.0))
    }

    /// `P(φ = S)` for `|S| = p`.
    pub fn elementary_probability(&self, s: PointSet) -> Result<f64> {
        s.check_within(self.n_points())?;
        if s.len() != self.rank() {
            return Err(Error::WrongCardinality {
                expected: self.rank(),
                actual: s.len(),
            });
        }
        Ok(self.elementary_unchecked(s))
    }

    fn elementary_unchecked(&self, s: PointSet) -> f64 {
        let p = self.rank();
        let idx: Vec<usize> = s.iter().collect();
        let d = Matrix::from_fn(p, p, |r, c| self.frame.row(idx[r])[c]).determinant();
        (d * d).min(1.0)
    }

    /// Exact law, computed once and cached.
    pub fn law(&self) -> Result<&Law> {
        let n = self.n_points();
        if n > ENUMERATION_CAP {
            return Err(Error::EnumerationTooLarge(n));
        }
        Ok(self
            .law
            .get_or_init(|| {
                let outcomes: Vec<PointSet> = subsets_of_size(n, self.rank()).collect();
                Arc::new(self.evaluate_all(outcomes))
            })
            .as_slice())
    }

    #[cfg(feature = "parallel")]
    fn evaluate_all(&self, outcomes: Vec<PointSet>) -> Vec<(PointSet, f64)> {
        use rayon::prelude::*;
        outcomes
            .into_par_iter()
            .map(|s| (s, self.elementary_unchecked(s)))
            .collect()
    }

    #[cfg(not(feature = "parallel"))]
    fn evaluate_all(&self, outcomes: Vec<PointSet>) -> Vec<(PointSet, f64)> {
        outcomes
            .into_iter()
            .map(|s| (s, self.elementary_unchecked(s)))
            .collect()
    }

    /// `P(predicate(φ))` by enumeration; the sum runs in bitmask order.
    pub fn event_probability(&self, predicate: impl Fn(PointSet) -> bool) -> Result<f64> {
        Ok(self
            .law()?
            .iter()
            .filter(|(s, _)| predicate(*s))
            .map(|(_, pr)| pr)
            .sum())
    }

    /// `P(A | B)` by enumeration, refusing conditions below 1e-12.
    pub fn conditional_probability(
        &self,
        event: impl Fn(PointSet) -> bool,
        given: impl Fn(PointSet) -> bool,
    ) -> Result<f64> {
        let pb = self.event_probability(&given)?;
        if pb <= crate::POSITIVITY_THRESHOLD {
            return Err(Error::ZeroProbabilityCondition(pb));
        }
        Ok(self.event_probability(|s| given(s) && event(s))? / pb)
    }

    /// `P(J ⊂ φᶜ) = det(I - K_J)` with `K_J` the Gram matrix of the rows in `J`.
    pub fn exclusion_probability(&self, j: PointSet) -> Result<f64> {
        j.check_within(self.n_points())?;
        if j.is_empty() {
            return Ok(1.0);
        }
        let rows = self.frame.rows_of(j);
        let k = j.len();
        let d = Matrix::from_fn(k, k, |a, b| {
            let delta = if a == b { 1.0 } else { 0.0 };
            delta - rows.get(a).dot(rows.get(b))
        })
        .determinant();
        Ok(if d < 0.0 && d >= -crate::exterior::WEDGE_CLAMP { 0.0 } else { d.min(1.0) })
    }

    /// Exact sample via the sequential projection sampler: pick row `i` with
    /// probability `‖r_i‖² / (p - t)`, then project every row onto the
    /// orthogonal complement of the chosen row.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PointSet {
        let (n, p) = (self.n_points(), self.rank());
        let mut rows: Vec<Vec<f64>> = (0..n).map(|i| self.frame.row(i).as_slice().to_vec()).collect();
        let mut chosen = PointSet::EMPTY;
        for _ in 0..p {
            let weights: Vec<f64> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| if chosen.contains(i) { 0.0 } else { dot(r, r).max(0.0) })
                .collect();
            let total: f64 = weights.iter().sum();
            let mut target = rng.random::<f64>() * total;
            let mut pick = None;
            for (i, w) in weights.iter().enumerate() {
                if *w > 0.0 {
                    pick = Some(i);
                    if target < *w {
                        break;
                    }
                    target -= w;
                }
            }
            let pick = pick.expect("remaining rank is positive");
            chosen = chosen.with(pick);
            let len = norm(&rows[pick]);
            let q: Vec<f64> = rows[pick].iter().map(|x| x / len).collect();
            for r in rows.iter_mut() {
                let c = dot(r, &q);
                r.iter_mut().zip(&q).for_each(|(x, y)| *x -= c * y);
            }
        }
        chosen
    }
}

/// Orthonormal basis of the orthogonal complement of the frame's span,
/// extracted from the columns of `I - Z Zᵗ` by pivoted Gram–Schmidt.
pub fn complement_frame(frame: &OrthonormalFrame) -> Result<OrthonormalFrame> {
    let (n, p) = (frame.n_points(), frame.rank());
    if p == n {
        return Err(Error::FullRank);
    }
    let z: Vec<&[f64]> = frame.columns().members().iter().map(Vector::as_slice).collect();
    let mut candidates: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|r| {
                    let delta = if r == i { 1.0 } else { 0.0 };
                    delta - z.iter().map(|c| c[r] * c[i]).sum::<f64>()
                })
                .collect()
        })
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - p);
    let mut used = vec![false; n];
    for _ in 0..n - p {
        let (best, _) = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, c)| (i, norm(c)))
            .fold((usize::MAX, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        used[best] = true;
        let mut w = candidates[best].clone();
        // one extra pass against Z and the accepted vectors
        for _ in 0..2 {
            for q in z.iter().copied().chain(basis.iter().map(Vec::as_slice)) {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let len = norm(&w);
        if len < 1e-8 {
            return Err(Error::RankDeficient { residual: len, norm: 1.0 });
        }
        w.iter_mut().for_each(|x| *x /= len);
        for c in candidates.iter_mut() {
            let d = dot(c, &w);
            c.iter_mut().zip(&w).for_each(|(x, y)| *x -= d * y);
        }
        basis.push(w);
    }
    OrthonormalFrame::new(VectorFamily::from_rows(basis)?)
}

/// True iff rotating the frame by `rotation` leaves every elementary
/// probability unchanged within 1e-10.
pub fn basis_invariance_check(frame: &OrthonormalFrame, rotation: &Matrix) -> Result<bool> {
    let rotated = ProjectionDpp::new(frame.rotated(rotation)?);
    let original = ProjectionDpp::new(frame.clone());
    Ok(original
        .law()?
        .iter()
        .zip(rotated.law()?)
        .all(|((_, a), (_, b))| (a - b).abs() <= 1e-10))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frame(cols: &[&[f64]]) -> OrthonormalFrame {
        OrthonormalFrame::new(VectorFamily::from_rows(cols.iter().map(|c| c.to_vec()).collect()).unwrap())
            .unwrap()
    }

    #[test]
    fn coordinate_frame_probabilities() {
        let dpp = ProjectionDpp::new(OrthonormalFrame::coordinate(3, 2).unwrap());
        assert_eq!(dpp.inclusion_probability(PointSet::from_indices([0, 1])).unwrap(), 1.0);
        assert_eq!(dpp.inclusion_probability(PointSet::singleton(2)).unwrap(), 0.0);
        assert_eq!(dpp.inclusion_probability(PointSet::EMPTY).unwrap(), 1.0);
        assert_eq!(dpp.inclusion_probability(PointSet::full(3)).unwrap(), 0.0);
        assert_eq!(dpp.elementary_probability(PointSet::from_indices([0, 1])).unwrap(), 1.0);
        assert_eq!(dpp.elementary_probability(PointSet::from_indices([0, 2])).unwrap(), 0.0);
        assert!(matches!(
            dpp.inclusion_probability(PointSet::singleton(3)),
            Err(Error::PointOutOfRange { .. })
        ));
        assert!(matches!(
            dpp.elementary_probability(PointSet::singleton(0)),
            Err(Error::WrongCardinality { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn uniform_rank_one_marginals() {
        let c = 1.0 / 3f64.sqrt();
        let dpp = ProjectionDpp::new(frame(&[&[c, c, c]]));
        for i in 0..3 {
            assert!((dpp.inclusion_probability(PointSet::singleton(i)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn block_frame_elementary_probabilities() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let dpp = ProjectionDpp::new(frame(&[&[s, s, 0.0, 0.0], &[0.0, 0.0, s, s]]));
        for (set, pr) in dpp.law().unwrap() {
            let crosses = set.intersection(PointSet::from_indices([0, 1])).len() == 1;
            let expected = if crosses { 0.25 } else { 0.0 };
            assert!((pr - expected).abs() < 1e-15, "{set:?}");
        }
    }

    #[test]
    fn event_probability_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let dpp = ProjectionDpp::new(OrthonormalFrame::random(&mut rng, 6, 3).unwrap());
        assert!((dpp.event_probability(|_| true).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(dpp.event_probability(|_| false).unwrap(), 0.0);
        let big = ProjectionDpp::new(OrthonormalFrame::coordinate(21, 2).unwrap());
        assert_eq!(big.law().err(), Some(Error::EnumerationTooLarge(21)));
    }

    #[test]
    fn complement_examples() {
        let c = complement_frame(&OrthonormalFrame::coordinate(3, 2).unwrap()).unwrap();
        assert_eq!(c.rank(), 1);
        let dual = ProjectionDpp::new(c);
        assert!((dual.inclusion_probability(PointSet::singleton(2)).unwrap() - 1.0).abs() < 1e-15);

        let a: f64 = 0.6;
        let c = complement_frame(&frame(&[&[a.cos(), a.sin()]])).unwrap();
        let col = c.columns().get(0);
        let sign = col[1].signum() * a.cos().signum();
        assert!((col[0] - sign * -a.sin()).abs() < 1e-15 && (col[1] - sign * a.cos()).abs() < 1e-15);

        assert_eq!(
            complement_frame(&OrthonormalFrame::coordinate(2, 2).unwrap()).err(),
            Some(Error::FullRank)
        );
    }

    #[test]
    fn frame_validation() {
        let bad = VectorFamily::from_rows(vec![vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(OrthonormalFrame::new(bad), Err(Error::NotOrthonormal(_))));
        let json = r#"{"n_points": 3, "rank": 1, "columns": [[1, 0, 0]]}"#;
        assert_eq!(OrthonormalFrame::from_json(json).unwrap().n_points(), 3);
        let wrong_rank = r#"{"n_points": 3, "rank": 2, "columns": [[1, 0, 0]]}"#;
        assert!(matches!(OrthonormalFrame::from_json(wrong_rank), Err(Error::Parse(_))));
        assert!(matches!(OrthonormalFrame::from_json("{"), Err(Error::Parse(_))));
        let f = OrthonormalFrame::coordinate(4, 2).unwrap();
        assert_eq!(OrthonormalFrame::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn rotation_must_be_orthogonal() {
        let f = OrthonormalFrame::coordinate(4, 2).unwrap();
        let skew = Matrix::from_fn(2, 2, |i, j| if i == j { 1.0 } else { 0.1 });
        assert!(matches!(basis_invariance_check(&f, &skew), Err(Error::NotOrthogonal(_))));
        assert!(basis_invariance_check(&f, &Matrix::identity(2)).unwrap());
        let swap = Matrix::from_fn(2, 2, |i, j| if i != j { 1.0 } else { 0.0 });
        assert!(basis_invariance_check(&f, &swap).unwrap());
    }

    #[test]
    fn deterministic_sampler() {
        let dpp = ProjectionDpp::new(OrthonormalFrame::coordinate(3, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert_eq!(dpp.sample(&mut rng), PointSet::from_indices([0, 1]));
        }
    }
}
