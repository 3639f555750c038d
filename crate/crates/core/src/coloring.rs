//! Color labels and total colorings of Kneser graphs.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::combinatorics::{rank, SubsetRank, VertexSet};
use crate::kneser::KneserParams;

/// A color. The subset-valued variant is what the case constructions hand
/// out (the color *is* an n-subset of `[m]`); synthetic integers are used
/// by fallback and brute-force colorings.
///
/// The derived `Ord` is the canonical label order used for every
/// deterministic tie-break: subsets first (in colex order), then synthetic
/// labels by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColorLabel {
    Subset(VertexSet),
    Synthetic(u64),
}

impl fmt::Display for ColorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorLabel::Subset(s) => write!(f, "{s}"),
            ColorLabel::Synthetic(k) => write!(f, "#{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("assignment has {actual} entries, KG({m},{n}) has {expected} vertices")]
    WrongLength { m: u32, n: u32, expected: u64, actual: u64 },
    #[error("subset label {label} at rank {rank} is not an {n}-subset of [{m}]")]
    BadSubsetLabel { label: VertexSet, rank: u64, m: u32, n: u32 },
}

/// A total coloring: one label per vertex of `KG(m,n)`, stored densely in
/// colex rank order. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    params: KneserParams,
    labels: Vec<ColorLabel>,
}

impl Coloring {
    /// Wraps a dense assignment, checking totality and that every
    /// subset-valued label is an n-subset of `[m]`.
    pub fn from_labels(
        params: KneserParams,
        labels: Vec<ColorLabel>,
    ) -> Result<Self, ColoringError> {
        let expected = params.vertex_count();
        if labels.len() as u64 != expected {
            return Err(ColoringError::WrongLength {
                m: params.m(),
                n: params.n(),
                expected,
                actual: labels.len() as u64,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if let ColorLabel::Subset(s) = label {
                if s.len() != params.n() || !s.fits_ground_set(params.m()) {
                    return Err(ColoringError::BadSubsetLabel {
                        label: *s,
                        rank: i as u64,
                        m: params.m(),
                        n: params.n(),
                    });
                }
            }
        }
        Ok(Coloring { params, labels })
    }

    #[inline]
    pub fn params(&self) -> KneserParams {
        self.params
    }

    #[inline]
    pub fn label_at(&self, r: SubsetRank) -> ColorLabel {
        self.labels[r.0 as usize]
    }

    /// Label of a vertex given as a set; ranks it internally.
    pub fn label_of(&self, v: VertexSet) -> ColorLabel {
        let r = rank(v, self.params.n()).expect("vertex of the right size");
        self.label_at(r)
    }

    #[inline]
    pub fn labels(&self) -> &[ColorLabel] {
        &self.labels
    }

    /// Distinct labels in canonical order.
    pub fn distinct_labels(&self) -> Vec<ColorLabel> {
        let set: BTreeSet<ColorLabel> = self.labels.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn color_count(&self) -> u64 {
        self.distinct_labels().len() as u64
    }
}
