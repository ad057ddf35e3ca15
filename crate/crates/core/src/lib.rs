//! Projection determinantal point processes on a finite ground set, their
//! CS decomposition against coordinate subspaces, conditioning, and an
//! exhaustive verifier for the BK inequality on increasing events generated
//! by single points.
//!
//! Everything is exact up to floating-point roundoff: probabilities come
//! from Gram determinants, and every verifier compares against brute-force
//! enumeration of the law (ground sets of at most 20 points).
//!
//! ```
//! use dppbk::{compute_cs, OrthonormalFrame, PointSet, ProjectionDpp};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let frame = OrthonormalFrame::random(&mut rng, 6, 3)?;
//! let dpp = ProjectionDpp::new(frame.clone());
//! let j = PointSet::from_one_based(&[1, 4], 6)?;
//! let cs = compute_cs(frame.columns(), j)?;
//! let prod_cos2: f64 = cs.cosines.iter().map(|c| c * c).product();
//! assert!((dpp.inclusion_probability(j)? - prod_cos2).abs() < 1e-9);
//! assert_eq!(dpp.sample(&mut rng).len(), 3);
//! # Ok::<(), dppbk::Error>(())
//! ```

pub mod bk;
#[cfg(feature = "cli")]
pub mod cli;
pub mod conditioning;
pub mod cs;
pub mod dpp;
pub mod error;
pub mod events;
pub mod exterior;
pub mod fuzz;
pub mod linalg;
pub mod pointset;
pub mod report;
pub mod suites;

pub use cs::{compute_cs, cos_sin_products, reconstruct_bases, CsCase, CsDecomposition};
pub use dpp::{complement_frame, OrthonormalFrame, ProjectionDpp};
pub use error::{Error, Result};
pub use events::IncreasingEvent;
pub use exterior::{Vector, VectorFamily};
pub use pointset::PointSet;
pub use report::{CheckKind, CheckReport};

/// Conditioning events with probability at or below this are refused.
pub const POSITIVITY_THRESHOLD: f64 = 1e-12;
