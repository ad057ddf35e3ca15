//! Browser bindings: three views over a seeded random frame, each returning
//! a JSON string for the page script to draw.

use dppbk::pointset::PointSet;
use dppbk::{compute_cs, cos_sin_products, Error, OrthonormalFrame, ProjectionDpp, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest ground set the page accepts; keeps enumeration instant.
pub const MAX_DEMO_POINTS: usize = 10;
pub const MAX_DEMO_SAMPLES: usize = 1_000_000;

fn demo_frame(n_points: usize, rank: usize, seed: u64) -> Result<OrthonormalFrame> {
    if !(2..=MAX_DEMO_POINTS).contains(&n_points) {
        return Err(Error::InvalidArgument(format!("N must lie in 2..={MAX_DEMO_POINTS}")));
    }
    if rank == 0 || rank >= n_points {
        return Err(Error::InvalidArgument("rank must satisfy 1 <= p < N".into()));
    }
    OrthonormalFrame::random(&mut ChaCha8Rng::seed_from_u64(seed), n_points, rank)
}

fn kernel(frame: &OrthonormalFrame) -> Vec<Vec<f64>> {
    let n = frame.n_points();
    (0..n)
        .map(|i| (0..n).map(|j| frame.row(i).dot(frame.row(j))).collect())
        .collect()
}

#[derive(Debug, Serialize)]
pub struct MarginalsView {
    pub n_points: usize,
    pub rank: usize,
    pub inclusion: Vec<f64>,
    pub kernel: Vec<Vec<f64>>,
    /// `P(i, j ∈ φ) - P(i ∈ φ) P(j ∈ φ)`, zero on the diagonal.
    pub covariance: Vec<Vec<f64>>,
}

/// Singleton marginals and pairwise covariances of the inclusion indicators.
pub fn marginals(n_points: usize, rank: usize, seed: u64) -> Result<MarginalsView> {
    let frame = demo_frame(n_points, rank, seed)?;
    let dpp = ProjectionDpp::new(frame.clone());
    let inclusion = (0..n_points)
        .map(|i| dpp.inclusion_probability(PointSet::singleton(i)))
        .collect::<Result<Vec<_>>>()?;
    let mut covariance = vec![vec![0.0; n_points]; n_points];
    for i in 0..n_points {
        for j in 0..n_points {
            if i != j {
                let both = dpp.inclusion_probability(PointSet::from_indices([i, j]))?;
                covariance[i][j] = both - inclusion[i] * inclusion[j];
            }
        }
    }
    Ok(MarginalsView {
        n_points,
        rank,
        inclusion,
        kernel: kernel(&frame),
        covariance,
    })
}

#[derive(Debug, Serialize)]
pub struct AnglesView {
    pub case: String,
    pub angles_deg: Vec<f64>,
    pub cos2_product: f64,
    pub sin2_product: f64,
    pub inclusion: f64,
    pub exclusion: f64,
    pub family_sizes: [usize; 4],
}

/// Jordan angles between the frame's span and the coordinate subspace of
/// `points` (comma-separated, 1-based).
pub fn cs_angles(n_points: usize, rank: usize, seed: u64, points: &str) -> Result<AnglesView> {
    let frame = demo_frame(n_points, rank, seed)?;
    let labels = points
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let j = PointSet::from_one_based(&labels, n_points)?;
    let cs = compute_cs(frame.columns(), j)?;
    let (cos2_product, sin2_product) = cos_sin_products(&cs);
    let dpp = ProjectionDpp::new(frame);
    Ok(AnglesView {
        case: cs.case.label().to_string(),
        angles_deg: cs.angles.iter().map(|a| a.to_degrees()).collect(),
        cos2_product,
        sin2_product,
        inclusion: dpp.inclusion_probability(j)?,
        exclusion: dpp.exclusion_probability(j)?,
        family_sizes: [cs.u.len(), cs.v.len(), cs.w.len(), cs.w_tilde.len()],
    })
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub set: Vec<usize>,
    pub exact: f64,
    pub empirical: f64,
}

#[derive(Debug, Serialize)]
pub struct SamplerView {
    pub samples: usize,
    pub outcomes: Vec<Outcome>,
    pub total_variation: f64,
}

/// Empirical frequencies of `samples` exact draws next to the exact law.
pub fn sampler(n_points: usize, rank: usize, seed: u64, samples: usize) -> Result<SamplerView> {
    if samples == 0 || samples > MAX_DEMO_SAMPLES {
        return Err(Error::InvalidArgument(format!("samples must lie in 1..={MAX_DEMO_SAMPLES}")));
    }
    let dpp = ProjectionDpp::new(demo_frame(n_points, rank, seed)?);
    let law = dpp.law()?;
    let mut counts = vec![0usize; law.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..samples {
        let s = dpp.sample(&mut rng);
        if let Ok(k) = law.binary_search_by(|(t, _)| t.cmp(&s)) {
            counts[k] += 1;
        }
    }
    let outcomes: Vec<Outcome> = law
        .iter()
        .zip(&counts)
        .map(|(&(s, p), &c)| Outcome {
            set: s.to_one_based(),
            exact: p,
            empirical: c as f64 / samples as f64,
        })
        .collect();
    let total_variation = 0.5 * outcomes.iter().map(|o| (o.exact - o.empirical).abs()).sum::<f64>();
    Ok(SamplerView {
        samples,
        outcomes,
        total_variation,
    })
}

fn to_js<T: Serialize>(r: Result<T>) -> std::result::Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("view serializes"))
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = marginals)]
pub fn marginals_js(n_points: usize, rank: usize, seed: u64) -> std::result::Result<String, JsError> {
    to_js(marginals(n_points, rank, seed))
}

#[wasm_bindgen(js_name = csAngles)]
pub fn cs_angles_js(n_points: usize, rank: usize, seed: u64, points: &str) -> std::result::Result<String, JsError> {
    to_js(cs_angles(n_points, rank, seed, points))
}

#[wasm_bindgen(js_name = sampler)]
pub fn sampler_js(n_points: usize, rank: usize, seed: u64, samples: usize) -> std::result::Result<String, JsError> {
    to_js(sampler(n_points, rank, seed, samples))
}
