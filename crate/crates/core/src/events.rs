//! Increasing events on `{1..N}`, stored by their minimal generators.
//!
//! `K ∈ 𝔄` iff `K` contains some generator. Generators are nonempty, form an
//! antichain, and are kept sorted by bitmask so that equal events compare
//! equal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncreasingEvent {
    n_points: usize,
    generators: Vec<PointSet>,
}

impl IncreasingEvent {
    /// Reduces `raw` to its inclusion-minimal members.
    pub fn normalize_generators(n_points: usize, raw: &[PointSet]) -> Result<Self> {
        for g in raw {
            if g.is_empty() {
                return Err(Error::EmptyGenerator);
            }
            g.check_within(n_points)?;
        }
        let mut sorted = raw.to_vec();
        // subsets have fewer bits, so sort by size first
        sorted.sort_by_key(|g| (g.len(), g.bits()));
        sorted.dedup();
        let mut minimal: Vec<PointSet> = Vec::with_capacity(sorted.len());
        for g in sorted {
            if !minimal.iter().any(|m| m.is_subset(g)) {
                minimal.push(g);
            }
        }
        minimal.sort();
        Ok(IncreasingEvent {
            n_points,
            generators: minimal,
        })
    }

    /// The event generated by the single points of `points`.
    pub fn from_points(n_points: usize, points: PointSet) -> Result<Self> {
        let singletons: Vec<PointSet> = points.iter().map(PointSet::singleton).collect();
        Self::normalize_generators(n_points, &singletons)
    }

    /// The event that never occurs.
    pub fn vacuous(n_points: usize) -> Self {
        IncreasingEvent {
            n_points,
            generators: Vec::new(),
        }
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn generators(&self) -> &[PointSet] {
        &self.generators
    }

    pub fn is_vacuous(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when every generator is a single point.
    pub fn is_simple(&self) -> bool {
        self.generators.iter().all(|g| g.len() == 1)
    }

    /// Union of all generators.
    pub fn support(&self) -> PointSet {
        self.generators.iter().fold(PointSet::EMPTY, |acc, g| acc.union(*g))
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.generators.iter().any(|g| g.is_subset(s))
    }

    fn same_ground(&self, other: &Self) -> Result<()> {
        if self.n_points != other.n_points {
            return Err(Error::GroundSetMismatch(self.n_points, other.n_points));
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let all: Vec<PointSet> = self.generators.iter().chain(&other.generators).copied().collect();
        Self::normalize_generators(self.n_points, &all)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let pairs: Vec<PointSet> = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.union(*b)))
            .collect();
        Self::normalize_generators(self.n_points, &pairs)
    }

    /// `σ{x₀, 𝔄}`: adds the single point `x0` (0-based) as a generator.
    /// `x0` must not appear in any existing generator.
    pub fn extend_by_point(&self, x0: usize) -> Result<Self> {
        if x0 >= self.n_points {
            return Err(Error::PointOutOfRange {
                point: x0 + 1,
                n_points: self.n_points,
            });
        }
        if self.support().contains(x0) {
            return Err(Error::PointAlreadyGenerating(x0 + 1));
        }
        let mut all = self.generators.clone();
        all.push(PointSet::singleton(x0));
        Self::normalize_generators(self.n_points, &all)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&EventDoc {
            n_points: self.n_points,
            generators: self.generators.iter().map(|g| g.to_one_based()).collect(),
        })
        .expect("event serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: EventDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_event()
    }
}

/// `{"n_points": N, "generators": [[1,2],[3]]}` with 1-based labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDoc {
    pub n_points: usize,
    pub generators: Vec<Vec<usize>>,
}

impl EventDoc {
    pub fn into_event(self) -> Result<IncreasingEvent> {
        let raw = self
            .generators
            .iter()
            .map(|g| PointSet::from_one_based(g, self.n_points))
            .collect::<Result<Vec<_>>>()?;
        IncreasingEvent::normalize_generators(self.n_points, &raw)
    }
}

/// `K ∈ 𝔄 ∘ 𝔅`: some generator of `a` and some generator of `b` are
/// disjoint and both lie inside `k`.
pub fn disjoint_occurrence_contains(a: &IncreasingEvent, b: &IncreasingEvent, k: PointSet) -> bool {
    a.generators
        .iter()
        .filter(|g| g.is_subset(k))
        .any(|ga| b.generators.iter().any(|gb| gb.is_subset(k) && ga.is_disjoint(*gb)))
}
