//! Implicit representation of the Kneser graph `KG(m,n)`: the vertices are
//! the n-subsets of `[m]`, and two vertices are adjacent iff they are
//! disjoint. The graph is never materialized; adjacency is a bitwise
//! intersection test and neighborhoods are enumerated on demand.

use thiserror::Error;

use crate::coloring::{ColorLabel, Coloring};
use crate::combinatorics::{binom64, full_mask, iterate_subsets, SubsetIter, VertexSet, MAX_GROUND_SET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KneserError {
    #[error("invalid parameters m={m}, n={n}: need n >= 1, m >= 2n, m <= 64")]
    InvalidParams { m: u32, n: u32 },
}

/// Validated `(m, n)` pair: `n >= 1`, `m >= 2n` (so the graph has edges
/// everywhere), `m <= 64` (one-word vertices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KneserParams {
    m: u32,
    n: u32,
}

impl KneserParams {
    pub fn new(m: u32, n: u32) -> Result<Self, KneserError> {
        if n >= 1 && m >= 2 * n && m <= MAX_GROUND_SET {
            Ok(KneserParams { m, n })
        } else {
            Err(KneserError::InvalidParams { m, n })
        }
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of vertices, `C(m, n)`.
    #[inline]
    pub fn vertex_count(&self) -> u64 {
        binom64(self.m, self.n)
    }

    /// True iff `v` is an n-subset of `[m]`.
    #[inline]
    pub fn is_vertex(&self, v: VertexSet) -> bool {
        v.len() == self.n && v.fits_ground_set(self.m)
    }
}

/// All vertices in colex order.
pub fn vertices(p: KneserParams) -> SubsetIter {
    iterate_subsets(p.m(), p.n())
}

/// Two vertices are adjacent iff disjoint. Symmetric, and irreflexive for
/// nonempty sets.
#[inline]
pub fn adjacent(a: VertexSet, b: VertexSet) -> bool {
    a.is_disjoint(b)
}

/// Neighborhood of `a`: every n-subset of the complement of `a`, in colex
/// order. Exactly `C(m-n, n)` vertices.
pub fn neighbors(a: VertexSet, p: KneserParams) -> NeighborIter {
    debug_assert!(p.is_vertex(a));
    let complement = full_mask(p.m()).difference(a);
    let positions: Vec<u32> = complement.elements();
    NeighborIter {
        inner: iterate_subsets(positions.len() as u32, p.n()),
        positions,
    }
}

pub struct NeighborIter {
    inner: SubsetIter,
    positions: Vec<u32>,
}

impl Iterator for NeighborIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let index_set = self.inner.next()?;
        let mut bits = 0u64;
        for i in index_set.iter() {
            bits |= 1 << self.positions[i as usize];
        }
        Some(VertexSet::from_bits(bits))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for NeighborIter {}

/// Maximum (= common, by vertex-transitivity) degree: `C(m-n, n)`.
#[inline]
pub fn max_degree(p: KneserParams) -> u64 {
    binom64(p.m() - p.n(), p.n())
}

/// Chromatic number `m - 2n + 2`.
#[inline]
pub fn chromatic_number(p: KneserParams) -> u64 {
    (p.m() - 2 * p.n() + 2) as u64
}

/// The textbook proper coloring witnessing the chromatic number: class `i`
/// holds the vertices with minimum element `i` for `i < m-2n+1`, and one
/// final class holds every vertex inside `{m-2n+1, ..., m-1}` (any two
/// n-subsets of those 2n-1 elements intersect). Exactly `m-2n+2` synthetic
/// labels.
pub fn standard_proper_coloring(p: KneserParams) -> Coloring {
    let last_class = (p.m() - 2 * p.n() + 1) as u64;
    let labels = vertices(p)
        .map(|v| {
            let min = v.min_element().expect("vertices are nonempty") as u64;
            ColorLabel::Synthetic(min.min(last_class))
        })
        .collect();
    Coloring::from_labels(p, labels).expect("one label per vertex")
}
