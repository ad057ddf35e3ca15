//! Subsets of the ground set `{1..N}` stored as bitmasks.
//!
//! Indices are 0-based internally; the `from_one_based` / `to_one_based`
//! helpers handle the 1-based labels used in files and on the command line.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set a [`PointSet`] can address.
pub const MAX_POINTS: usize = 64;

/// Serializes as the sorted list of 1-based labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(u64);

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|i| i + 1))
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        PointSet::from_one_based(&labels, MAX_POINTS).map_err(serde::de::Error::custom)
    }
}

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All points `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_POINTS);
        PointSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(PointSet::EMPTY, |acc, i| acc.with(i))
    }

    /// Builds a set from 1-based labels, checking them against `n_points`.
    pub fn from_one_based(labels: &[usize], n_points: usize) -> Result<Self> {
        let mut set = PointSet::EMPTY;
        for &label in labels {
            if label == 0 || label > n_points {
                return Err(Error::PointOutOfRange {
                    point: label,
                    n_points,
                });
            }
            set = set.with(label - 1);
        }
        Ok(set)
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn with(self, i: usize) -> Self {
        assert!(i < MAX_POINTS);
        PointSet(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Self {
        assert!(i < MAX_POINTS);
        PointSet(self.0 & !(1u64 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_POINTS && self.0 & (1u64 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement within `{0..n}`.
    pub fn complement(self, n: usize) -> Self {
        PointSet::full(n).difference(self)
    }

    /// Largest index plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn check_within(self, n_points: usize) -> Result<()> {
        if self.span() > n_points {
            return Err(Error::PointOutOfRange {
                point: self.span(),
                n_points,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Space-separated 1-based labels, e.g. `1 3 4`.
impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

/// Iterates over all `k`-subsets of `{0..n}` in increasing bitmask order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = PointSet> {
    assert!(n < MAX_POINTS);
    let limit = 1u64 << n;
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < limit).then_some(n)
        };
        Some(PointSet(cur))
    })
}

/// Iterates over all `2^n` subsets of `{0..n}` in increasing bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
    assert!(n < MAX_POINTS);
    (0..(1u64 << n)).map(PointSet)
}
