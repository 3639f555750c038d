//! Constructive b-colorings of `KG(m,n)` achieving `2*C(floor(m/2), n)`
//! colors (one more for odd m).
//!
//! For even `m = 2r` the ground set splits into halves `X = {0..r-1}` and
//! `Y = {r..2r-1}` linked by the bijection `f(x) = r + x`. Vertices lying
//! entirely inside one half are self-colored (`h(A) = A`); every other
//! vertex is folded onto the half its majority avoids, by reflecting the
//! majority part through `f` and padding the forced set up to size n. Even
//! n additionally has a balanced case `|A ∩ X| = |A ∩ Y| = n/2`, resolved
//! by the consecutive-fill expansion [`double_subset`] when the two sides
//! mirror each other and by the minimum of their symmetric difference
//! otherwise. Odd `m` embeds the even coloring on `KG(m-1,n)` and gives
//! every vertex containing `m-1` one fresh color.

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{ColorLabel, Coloring};
use crate::combinatorics::{full_mask, VertexSet};
use crate::kneser::{self, KneserParams};
use crate::solver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("n = {0} is unsupported here: the case constructions need n >= 3")]
    UnsupportedSubsetSize(u32),
    #[error("KG({m},{n}) does not fit this builder: {reason}")]
    WrongCase { m: u32, n: u32, reason: &'static str },
    #[error("{0}")]
    InvalidArgument(String),
}

/// The split of `[m]` into halves `{0..r-1}` and `{r..2r-1}` with
/// `r = floor(m/2)`; for odd m the element `m-1` lies in neither half.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfSplit {
    r: u32,
}

impl HalfSplit {
    pub fn new(m: u32) -> Self {
        HalfSplit { r: m / 2 }
    }

    #[inline]
    pub fn half_size(&self) -> u32 {
        self.r
    }

    /// `X = {0, ..., r-1}`.
    #[inline]
    pub fn lower(&self) -> VertexSet {
        full_mask(self.r)
    }

    /// `Y = {r, ..., 2r-1}`.
    #[inline]
    pub fn upper(&self) -> VertexSet {
        VertexSet::from_bits(full_mask(self.r).bits() << self.r)
    }

    /// The bijection `f(x) = r + x` on single elements.
    pub fn to_upper(&self, x: u32) -> Result<u32, ConstructionError> {
        if x < self.r {
            Ok(self.r + x)
        } else {
            Err(ConstructionError::InvalidArgument(format!(
                "{x} is not in the lower half [0, {})",
                self.r
            )))
        }
    }

    /// Inverse bijection `f^{-1}(y) = y - r`.
    pub fn to_lower(&self, y: u32) -> Result<u32, ConstructionError> {
        if y >= self.r && y < 2 * self.r {
            Ok(y - self.r)
        } else {
            Err(ConstructionError::InvalidArgument(format!(
                "{y} is not in the upper half [{}, {})",
                self.r,
                2 * self.r
            )))
        }
    }

    /// `f` applied set-wise; `s` must lie in the lower half.
    #[inline]
    pub fn reflect_up(&self, s: VertexSet) -> VertexSet {
        debug_assert!(s.is_subset_of(self.lower()));
        VertexSet::from_bits(s.bits() << self.r)
    }

    /// `f^{-1}` applied set-wise; `s` must lie in the upper half.
    #[inline]
    pub fn reflect_down(&self, s: VertexSet) -> VertexSet {
        debug_assert!(s.is_subset_of(self.upper()));
        VertexSet::from_bits(s.bits() >> self.r)
    }
}

/// Expands an s-subset `a` of `[r]` to a 2s-subset by walking positions
/// `min(a)+1, min(a)+2, ...` (mod r) and inserting until the set has 2s
/// elements. Requires `r >= 2s+1`.
///
/// The result strictly contains `a`, and disjoint inputs always receive
/// distinct outputs (disjoint sets have distinct minima, and the filled
/// run after the minimum pins the minimum down).
pub fn double_subset(a: VertexSet, r: u32, s: u32) -> Result<VertexSet, ConstructionError> {
    if a.len() != s || s == 0 {
        return Err(ConstructionError::InvalidArgument(format!(
            "expected a nonempty {s}-subset, got {a}"
        )));
    }
    if !a.fits_ground_set(r) {
        return Err(ConstructionError::InvalidArgument(format!(
            "{a} does not fit inside [{r}]"
        )));
    }
    if r < 2 * s + 1 {
        return Err(ConstructionError::InvalidArgument(format!(
            "need r >= 2s+1, got r = {r}, s = {s}"
        )));
    }
    let mut filled = a;
    let mut pos = a.min_element().expect("nonempty");
    while filled.len() < 2 * s {
        pos = (pos + 1) % r;
        filled = filled.insert(pos);
    }
    Ok(filled)
}

/// Deterministic n-superset of `forced` inside `side`: fills with the
/// smallest elements of `side \ forced`.
pub fn pad_to_size(forced: VertexSet, side: VertexSet, n: u32) -> Result<VertexSet, ConstructionError> {
    if !forced.is_subset_of(side) {
        return Err(ConstructionError::InvalidArgument(format!(
            "{forced} is not contained in {side}"
        )));
    }
    if forced.len() > n || side.len() < n {
        return Err(ConstructionError::InvalidArgument(format!(
            "cannot pad {forced} to {n} elements inside {side}"
        )));
    }
    let mut padded = forced;
    let mut available = side.difference(forced);
    while padded.len() < n {
        let e = available.min_element().expect("side is big enough");
        padded = padded.insert(e);
        available = available.difference(VertexSet::from_elements([e]));
    }
    Ok(padded)
}

/// Which branch [`build`] dispatches to; also the tag recorded in coloring
/// files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    /// m even, n odd
    EvenMOddN,
    /// m and n both even
    EvenMEvenN,
    /// m odd
    OddM,
    /// m in {2n, 2n+1}
    SmallM,
}

impl ConstructionKind {
    pub fn wire_tag(self) -> &'static str {
        match self {
            ConstructionKind::EvenMOddN => "case1",
            ConstructionKind::EvenMEvenN => "case2",
            ConstructionKind::OddM => "case3",
            ConstructionKind::SmallM => "small",
        }
    }
}

/// The branch `build` takes for these parameters.
pub fn kind(p: KneserParams) -> Result<ConstructionKind, ConstructionError> {
    if p.n() < 3 {
        return Err(ConstructionError::UnsupportedSubsetSize(p.n()));
    }
    Ok(if p.m() <= 2 * p.n() + 1 {
        ConstructionKind::SmallM
    } else if p.m() % 2 == 1 {
        ConstructionKind::OddM
    } else if p.n() % 2 == 1 {
        ConstructionKind::EvenMOddN
    } else {
        ConstructionKind::EvenMEvenN
    })
}

/// Label of a vertex for even m, odd n = 2s+1. Exactly one of the three
/// rules must apply; anything else is a construction bug worth a loud stop.
fn label_even_m_odd_n(a: VertexSet, split: &HalfSplit, n: u32) -> VertexSet {
    let s = n / 2;
    let ax = a.intersection(split.lower());
    let ay = a.intersection(split.upper());
    let (kx, ky) = (ax.len(), ay.len());

    let pure = kx == n || ky == n;
    let lower_major = (s + 1..=2 * s).contains(&kx);
    let upper_major = (s + 1..=2 * s).contains(&ky);
    assert_eq!(
        u32::from(pure) + u32::from(lower_major) + u32::from(upper_major),
        1,
        "rule coverage broken at vertex {a}"
    );

    if pure {
        a
    } else if lower_major {
        let forced = split.reflect_up(ax).union(ay);
        pad_to_size(forced, split.upper(), n).expect("upper half has room")
    } else {
        let forced = ax.union(split.reflect_down(ay));
        pad_to_size(forced, split.lower(), n).expect("lower half has room")
    }
}

/// Label of a vertex for even m, even n = 2s. Same one-sided rules as the
/// odd-n case (now with a strict upper boundary), plus the balanced case
/// `kx = ky = s`: mirrored vertices take the consecutive-fill expansion of
/// their lower part, and the rest are folded onto the side opposite the
/// minimum of `(A ∩ X) Δ f^{-1}(A ∩ Y)`.
fn label_even_m_even_n(a: VertexSet, split: &HalfSplit, n: u32) -> VertexSet {
    let s = n / 2;
    let ax = a.intersection(split.lower());
    let ay = a.intersection(split.upper());
    let (kx, ky) = (ax.len(), ay.len());

    let pure = kx == n || ky == n;
    let lower_major = (s + 1..2 * s).contains(&kx);
    let upper_major = (s + 1..2 * s).contains(&ky);
    let balanced = kx == s && ky == s;
    assert_eq!(
        u32::from(pure) + u32::from(lower_major) + u32::from(upper_major) + u32::from(balanced),
        1,
        "rule coverage broken at vertex {a}"
    );

    if pure {
        a
    } else if lower_major {
        let forced = split.reflect_up(ax).union(ay);
        pad_to_size(forced, split.upper(), n).expect("upper half has room")
    } else if upper_major {
        let forced = ax.union(split.reflect_down(ay));
        pad_to_size(forced, split.lower(), n).expect("lower half has room")
    } else {
        let mirror = split.reflect_down(ay);
        if ax == mirror {
            double_subset(ax, split.half_size(), s).expect("r >= 2s+1 when m >= 2n+2")
        } else if ax.contains(ax.symmetric_difference(mirror).min_element().expect("sets differ")) {
            let forced = split.reflect_up(ax).union(ay);
            pad_to_size(forced, split.upper(), n).expect("upper half has room")
        } else {
            let forced = ax.union(split.reflect_down(ay));
            pad_to_size(forced, split.lower(), n).expect("lower half has room")
        }
    }
}

fn even_label(a: VertexSet, split: &HalfSplit, n: u32) -> VertexSet {
    if n % 2 == 1 {
        label_even_m_odd_n(a, split, n)
    } else {
        label_even_m_even_n(a, split, n)
    }
}

fn check_even_params(p: KneserParams, want_odd_n: Option<bool>) -> Result<(), ConstructionError> {
    if !p.m().is_multiple_of(2) {
        return Err(ConstructionError::WrongCase {
            m: p.m(),
            n: p.n(),
            reason: "m must be even",
        });
    }
    if let Some(odd) = want_odd_n {
        if (p.n() % 2 == 1) != odd {
            return Err(ConstructionError::WrongCase {
                m: p.m(),
                n: p.n(),
                reason: if odd { "n must be odd" } else { "n must be even" },
            });
        }
    }
    if p.m() < 2 * p.n() + 2 {
        return Err(ConstructionError::WrongCase {
            m: p.m(),
            n: p.n(),
            reason: "need m >= 2n+2",
        });
    }
    Ok(())
}

fn build_even(p: KneserParams) -> Coloring {
    let split = HalfSplit::new(p.m());
    let n = p.n();
    let verts: Vec<VertexSet> = kneser::vertices(p).collect();
    let labels: Vec<ColorLabel> = verts
        .par_iter()
        .map(|&a| ColorLabel::Subset(even_label(a, &split, n)))
        .collect();
    Coloring::from_labels(p, labels).expect("one label per vertex")
}

/// b-coloring of `KG(m,n)` for even m and odd n with `2*C(m/2, n)` colors.
pub fn build_even_m_odd_n(p: KneserParams) -> Result<Coloring, ConstructionError> {
    check_even_params(p, Some(true))?;
    Ok(build_even(p))
}

/// b-coloring of `KG(m,n)` for even m and even n with `2*C(m/2, n)` colors.
pub fn build_even_m_even_n(p: KneserParams) -> Result<Coloring, ConstructionError> {
    check_even_params(p, Some(false))?;
    Ok(build_even(p))
}

/// b-coloring of `KG(m,n)` for odd m >= 2n+2: the even coloring of
/// `KG(m-1,n)` on the vertices avoiding `m-1`, and one fresh color
/// `{m-n, ..., m-1}` for every vertex containing `m-1`. Total colors
/// `2*C(floor(m/2), n) + 1`.
pub fn build_odd_m(p: KneserParams) -> Result<Coloring, ConstructionError> {
    if p.m() % 2 != 1 {
        return Err(ConstructionError::WrongCase {
            m: p.m(),
            n: p.n(),
            reason: "m must be odd",
        });
    }
    if p.m() < 2 * p.n() + 2 {
        return Err(ConstructionError::WrongCase {
            m: p.m(),
            n: p.n(),
            reason: "need m >= 2n+2",
        });
    }
    let split = HalfSplit::new(p.m() - 1);
    let n = p.n();
    let top = p.m() - 1;
    let fresh = VertexSet::from_elements(p.m() - p.n()..p.m());
    let verts: Vec<VertexSet> = kneser::vertices(p).collect();
    let labels: Vec<ColorLabel> = verts
        .par_iter()
        .map(|&a| {
            if a.contains(top) {
                ColorLabel::Subset(fresh)
            } else {
                ColorLabel::Subset(even_label(a, &split, n))
            }
        })
        .collect();
    Ok(Coloring::from_labels(p, labels).expect("one label per vertex"))
}

/// b-colorings for the two sizes below the case constructions.
///
/// `m = 2n`: the graph is a perfect matching; two synthetic classes split
/// by membership of element 0, every vertex dominating. `m = 2n+1`: the
/// standard (m-2n+2 = 3)-coloring run through b-extraction, which yields a
/// checkable certificate with at least 2 classes.
pub fn build_small(p: KneserParams) -> Result<Coloring, ConstructionError> {
    if p.m() == 2 * p.n() {
        let labels = kneser::vertices(p)
            .map(|v| ColorLabel::Synthetic(if v.contains(0) { 0 } else { 1 }))
            .collect();
        Ok(Coloring::from_labels(p, labels).expect("one label per vertex"))
    } else if p.m() == 2 * p.n() + 1 {
        let base = kneser::standard_proper_coloring(p);
        solver::extract_b_coloring(&base).map_err(|e| {
            ConstructionError::InvalidArgument(format!("extraction failed: {e}"))
        })
    } else {
        Err(ConstructionError::WrongCase {
            m: p.m(),
            n: p.n(),
            reason: "small-case builder needs m in {2n, 2n+1}",
        })
    }
}

/// Builds the b-coloring for any `KG(m,n)` with `n >= 3`, dispatching on
/// the parity of m and n. Color count: `2*C(floor(m/2), n)` for even
/// m >= 2n+2, one more for odd m >= 2n+2, and 2 or 3 for m in {2n, 2n+1}.
pub fn build(p: KneserParams) -> Result<Coloring, ConstructionError> {
    match kind(p)? {
        ConstructionKind::SmallM => build_small(p),
        ConstructionKind::OddM => build_odd_m(p),
        ConstructionKind::EvenMOddN => build_even_m_odd_n(p),
        ConstructionKind::EvenMEvenN => build_even_m_even_n(p),
    }
}
