//! Independent checking of colorings: properness, per-class dominating
//! vertices, label census, and bound comparisons.
//!
//! Nothing here trusts the construction module: adjacency is re-derived
//! from the bitmasks, and every claim is established by scanning the
//! actual coloring.

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{ColorLabel, Coloring};
use crate::combinatorics::{binom64, rank_unchecked, VertexSet};
use crate::kneser;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("label {0} does not occur in the coloring")]
    UnknownLabel(ColorLabel),
}

/// Options for report generation.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// How many dominating witnesses to list per class. Existence is
    /// always decided exactly; this only truncates the report.
    pub witness_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { witness_cap: 16 }
    }
}

/// Per-class section of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub label: ColorLabel,
    pub size: u64,
    /// Members adjacent to at least one vertex of every other class,
    /// in colex order, truncated to the witness cap.
    pub dominating_witnesses: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub proper: bool,
    /// A disjoint same-label pair, when one exists.
    pub counterexample: Option<(VertexSet, VertexSet)>,
    /// One entry per distinct label, in canonical label order.
    pub classes: Vec<ClassReport>,
    pub color_count: u64,
    /// `2 * C(floor(m/2), n)`, the constructive lower bound.
    pub bound_lower: u64,
    /// `Δ + 1 = C(m-n, n) + 1`.
    pub bound_upper: u64,
    pub is_b: bool,
}

/// Dense label indexing shared by the checks here and by b-extraction.
pub(crate) struct LabelIndex {
    /// Distinct labels in canonical order.
    pub labels: Vec<ColorLabel>,
    /// Label index of each vertex, by rank.
    pub of_rank: Vec<u32>,
    pub class_sizes: Vec<u64>,
}

pub(crate) fn intern(c: &Coloring) -> LabelIndex {
    let labels = c.distinct_labels();
    let index_of = |l: &ColorLabel| labels.binary_search(l).expect("interned") as u32;
    let of_rank: Vec<u32> = c.labels().iter().map(index_of).collect();
    let mut class_sizes = vec![0u64; labels.len()];
    for &i in &of_rank {
        class_sizes[i as usize] += 1;
    }
    LabelIndex {
        labels,
        of_rank,
        class_sizes,
    }
}

/// First disjoint pair sharing a label, or `None` for a proper coloring.
///
/// Two strategies, picked by predicted cost: pairwise checks inside each
/// color class (quadratic only in class sizes), or the per-vertex
/// neighborhood scan. All-pairs enumeration over the whole vertex set is
/// never performed.
pub fn find_improper_pair(c: &Coloring) -> Option<(VertexSet, VertexSet)> {
    let idx = intern(c);
    find_improper_pair_interned(c, &idx)
}

fn find_improper_pair_interned(c: &Coloring, idx: &LabelIndex) -> Option<(VertexSet, VertexSet)> {
    let p = c.params();
    let pairwise_cost: u64 = idx.class_sizes.iter().map(|&s| s.saturating_mul(s)).sum();
    let scan_cost = p.vertex_count().saturating_mul(kneser::max_degree(p));
    if pairwise_cost <= scan_cost {
        // group members by class, then test disjointness within each class
        let mut members: Vec<Vec<VertexSet>> = vec![Vec::new(); idx.labels.len()];
        for (r, v) in kneser::vertices(p).enumerate() {
            members[idx.of_rank[r] as usize].push(v);
        }
        for class in &members {
            for (i, &a) in class.iter().enumerate() {
                for &b in &class[i + 1..] {
                    if kneser::adjacent(a, b) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    } else {
        let verts: Vec<VertexSet> = kneser::vertices(p).collect();
        verts
            .par_iter()
            .enumerate()
            .filter_map(|(r, &a)| {
                let own = idx.of_rank[r];
                kneser::neighbors(a, p)
                    .find(|&b| idx.of_rank[rank_unchecked(b) as usize] == own)
                    .map(|b| (r, a, b))
            })
            .min_by_key(|&(r, _, _)| r)
            .map(|(_, a, b)| (a, b))
    }
}

pub fn is_proper(c: &Coloring) -> bool {
    find_improper_pair(c).is_none()
}

/// True iff the vertex at `rank` has a neighbor in every class but its own.
fn dominates(
    c: &Coloring,
    idx: &LabelIndex,
    rank: usize,
    vertex: VertexSet,
    seen: &mut Vec<u64>,
) -> bool {
    let t = idx.labels.len();
    if t <= 1 {
        return true;
    }
    let needed = t - 1;
    let own = idx.of_rank[rank] as usize;
    seen.clear();
    seen.resize(t.div_ceil(64), 0);
    let mut covered = 0usize;
    for b in kneser::neighbors(vertex, c.params()) {
        let li = idx.of_rank[rank_unchecked(b) as usize] as usize;
        if li != own && seen[li / 64] >> (li % 64) & 1 == 0 {
            seen[li / 64] |= 1 << (li % 64);
            covered += 1;
            if covered == needed {
                return true;
            }
        }
    }
    false
}

/// Per-rank domination flags, computed in parallel.
pub(crate) fn domination_flags(c: &Coloring, idx: &LabelIndex) -> Vec<bool> {
    let verts: Vec<VertexSet> = kneser::vertices(c.params()).collect();
    verts
        .par_iter()
        .enumerate()
        .map_init(Vec::new, |seen, (r, &v)| dominates(c, idx, r, v, seen))
        .collect()
}

/// All dominating vertices of the given class, in colex order.
pub fn dominating_vertices(
    c: &Coloring,
    label: &ColorLabel,
) -> Result<Vec<VertexSet>, VerifyError> {
    let idx = intern(c);
    let target = idx
        .labels
        .binary_search(label)
        .map_err(|_| VerifyError::UnknownLabel(*label))? as u32;
    let verts: Vec<VertexSet> = kneser::vertices(c.params()).collect();
    let flags: Vec<bool> = verts
        .par_iter()
        .enumerate()
        .map_init(Vec::new, |seen, (r, &v)| {
            idx.of_rank[r] == target && dominates(c, &idx, r, v, seen)
        })
        .collect();
    Ok(verts
        .into_iter()
        .zip(flags)
        .filter_map(|(v, f)| f.then_some(v))
        .collect())
}

/// Full verification with default options.
pub fn is_b_coloring(c: &Coloring) -> VerificationReport {
    is_b_coloring_with(c, &VerifyOptions::default())
}

/// Full verification: properness plus, for every class, whether some
/// member dominates. `is_b` iff proper and every class has a witness.
pub fn is_b_coloring_with(c: &Coloring, opts: &VerifyOptions) -> VerificationReport {
    let p = c.params();
    let idx = intern(c);
    let counterexample = find_improper_pair_interned(c, &idx);
    let flags = domination_flags(c, &idx);

    let t = idx.labels.len();
    let mut witnessed = vec![false; t];
    let mut witnesses: Vec<Vec<VertexSet>> = vec![Vec::new(); t];
    for (r, v) in kneser::vertices(p).enumerate() {
        if flags[r] {
            let li = idx.of_rank[r] as usize;
            witnessed[li] = true;
            if witnesses[li].len() < opts.witness_cap {
                witnesses[li].push(v);
            }
        }
    }

    let classes: Vec<ClassReport> = idx
        .labels
        .iter()
        .enumerate()
        .map(|(i, &label)| ClassReport {
            label,
            size: idx.class_sizes[i],
            dominating_witnesses: std::mem::take(&mut witnesses[i]),
        })
        .collect();

    let proper = counterexample.is_none();
    let is_b = proper && witnessed.iter().all(|&w| w);
    VerificationReport {
        proper,
        counterexample,
        classes,
        color_count: t as u64,
        bound_lower: 2 * binom64(p.m() / 2, p.n()),
        bound_upper: kneser::max_degree(p) + 1,
        is_b,
    }
}
