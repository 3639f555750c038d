//! Ground truth at desk scale: exact b-chromatic numbers by pruned
//! backtracking, b-coloring extraction from proper colorings, the n=2
//! closed form, and certified bound pairs.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::coloring::{ColorLabel, Coloring};
use crate::combinatorics::{binom64, rank_unchecked, VertexSet};
use crate::kneser::{self, KneserParams};
use crate::verify;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{0}")]
    InvalidArgument(String),
    #[error("input coloring is not proper: {first} and {second} are disjoint and share a label")]
    NotProper { first: VertexSet, second: VertexSet },
    #[error("KG has {vertices} vertices, above the search cap {cap}; raise the cap to force the attempt")]
    VertexCapExceeded { vertices: u64, cap: u64 },
}

/// The closed-form b-chromatic number of `KG(m,2)`. `m = 8` has no
/// closed-form value and is reported as `Excluded`, never as a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormN2 {
    Value(u64),
    Excluded,
}

/// `floor(m(m-1)/6)` for odd m, `floor((m-1)(m-2)/6) + 3` for even m != 8.
///
/// Note the even branch overshoots the true value at m = 4, where the
/// graph is a perfect matching and 2 = Δ+1 colors is the ceiling; use
/// [`bounds`] for values that are always valid.
pub fn closed_form_n2(m: u32) -> Result<ClosedFormN2, SolverError> {
    if m < 4 {
        return Err(SolverError::InvalidArgument(format!(
            "closed form needs m >= 4, got {m}"
        )));
    }
    let m = m as u64;
    Ok(if m == 8 {
        ClosedFormN2::Excluded
    } else if m % 2 == 1 {
        ClosedFormN2::Value(m * (m - 1) / 6)
    } else {
        ClosedFormN2::Value((m - 1) * (m - 2) / 6 + 3)
    })
}

/// Certified `(lower, upper)` bounds for the b-chromatic number.
///
/// Upper: `Δ + 1`. Lower: `2*C(floor(m/2), n)` for n >= 3; the closed form
/// for n = 2 where it applies (m >= 5, m != 8); otherwise the chromatic
/// number `m - 2n + 2`, valid because dissolving a witness-less class of
/// an optimal coloring would contradict optimality.
pub fn bounds(p: KneserParams) -> (u64, u64) {
    let upper = kneser::max_degree(p) + 1;
    let lower = match p.n() {
        1 => kneser::chromatic_number(p),
        2 => match closed_form_n2(p.m()).expect("params guarantee m >= 4") {
            ClosedFormN2::Value(v) if p.m() >= 5 => v,
            _ => kneser::chromatic_number(p),
        },
        _ => 2 * binom64(p.m() / 2, p.n()),
    };
    debug_assert!(lower <= upper, "KG({},{}) bounds inverted", p.m(), p.n());
    (lower, upper)
}

/// Turns any proper coloring into a b-coloring without ever breaking
/// properness: while some class lacks a dominating vertex, dissolve the
/// smallest such class (ties to the smallest label) by recoloring each
/// member with the smallest label absent from its neighborhood; such a
/// label exists precisely because the member is non-dominating. Each
/// round removes exactly one label.
pub fn extract_b_coloring(c: &Coloring) -> Result<Coloring, SolverError> {
    if let Some((first, second)) = verify::find_improper_pair(c) {
        return Err(SolverError::NotProper { first, second });
    }
    let p = c.params();
    let verts: Vec<VertexSet> = kneser::vertices(p).collect();
    let mut labels = c.labels().to_vec();
    loop {
        let current = Coloring::from_labels(p, labels).expect("same length");
        let idx = verify::intern(&current);
        let flags = verify::domination_flags(&current, &idx);
        let t = idx.labels.len();
        let mut witnessed = vec![false; t];
        for (r, &f) in flags.iter().enumerate() {
            if f {
                witnessed[idx.of_rank[r] as usize] = true;
            }
        }
        let victim = (0..t)
            .filter(|&i| !witnessed[i])
            .min_by_key(|&i| (idx.class_sizes[i], idx.labels[i]));
        let Some(victim) = victim else {
            return Ok(current);
        };
        // Replacements are computed against the current assignment and
        // applied in one batch; members of a class are pairwise
        // non-adjacent, so sequential application would agree anyway.
        let mut updates = Vec::new();
        for (r, &v) in verts.iter().enumerate() {
            if idx.of_rank[r] as usize != victim {
                continue;
            }
            let mut seen = vec![false; t];
            for b in kneser::neighbors(v, p) {
                seen[idx.of_rank[rank_unchecked(b) as usize] as usize] = true;
            }
            let replacement = (0..t)
                .find(|&i| i != victim && !seen[i])
                .expect("members of a witness-less class miss some other class");
            updates.push((r, idx.labels[replacement]));
        }
        labels = current.labels().to_vec();
        for (r, l) in updates {
            labels[r] = l;
        }
        debug_assert!(verify::is_proper(
            &Coloring::from_labels(p, labels.clone()).expect("same length")
        ));
    }
}

/// Node and wall-clock ceilings for [`exact_b_chromatic`], plus the guard
/// on instance size.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Refuse instances with more vertices than this.
    pub vertex_cap: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: None,
            time_limit: None,
            vertex_cap: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    /// The b-chromatic number, with a witnessing b-coloring.
    Exact { value: u64, witness: Coloring },
    /// Budget exhausted: certified enclosure. `lower` comes from the
    /// chromatic number, `upper` from the refuted color counts above it.
    Interval { lower: u64, upper: u64 },
}

/// Exact b-chromatic number by backtracking, descending from `Δ + 1`:
/// the first color count admitting a b-coloring is the answer, and every
/// refutation above it certifies the upper bound. Prunes on properness,
/// on color-prefix symmetry (new colors enter in index order), and on
/// per-color feasibility of still acquiring a dominating vertex.
pub fn exact_b_chromatic(
    p: KneserParams,
    budget: &SearchBudget,
) -> Result<SearchResult, SolverError> {
    let vertex_count = p.vertex_count();
    if vertex_count > budget.vertex_cap {
        return Err(SolverError::VertexCapExceeded {
            vertices: vertex_count,
            cap: budget.vertex_cap,
        });
    }
    let start_t = (kneser::max_degree(p) + 1).min(vertex_count);
    if start_t > 64 {
        return Err(SolverError::InvalidArgument(format!(
            "{start_t} candidate colors exceed the 64-color search limit"
        )));
    }

    let verts: Vec<VertexSet> = kneser::vertices(p).collect();
    let nbrs: Vec<Vec<u32>> = verts
        .iter()
        .map(|&a| {
            verts
                .iter()
                .enumerate()
                .filter(|&(_, &b)| kneser::adjacent(a, b))
                .map(|(j, _)| j as u32)
                .collect()
        })
        .collect();

    let chi = kneser::chromatic_number(p);
    let deadline = budget.time_limit.map(|d| Instant::now() + d);
    let mut nodes_left = budget.max_nodes.unwrap_or(u64::MAX);

    for t in (1..=start_t).rev() {
        let mut search = Search::new(&nbrs, t as usize, deadline, &mut nodes_left);
        match search.run() {
            Outcome::Found(colors) => {
                let labels = colors
                    .iter()
                    .map(|&c| ColorLabel::Synthetic(c as u64))
                    .collect();
                let witness = Coloring::from_labels(p, labels).expect("total assignment");
                debug_assert!(verify::is_b_coloring(&witness).is_b);
                return Ok(SearchResult::Exact { value: t, witness });
            }
            Outcome::Refuted => {}
            Outcome::Aborted => {
                return Ok(SearchResult::Interval {
                    lower: chi,
                    upper: t,
                });
            }
        }
    }
    unreachable!("an optimal proper coloring is a b-coloring, so t = {chi} succeeds");
}

const UNASSIGNED: u8 = u8::MAX;

enum Outcome {
    Found(Vec<u8>),
    Refuted,
    Aborted,
}

struct Search<'a> {
    nbrs: &'a [Vec<u32>],
    t: usize,
    color: Vec<u8>,
    /// Distinct colors among assigned neighbors, as a bitmask.
    nbr_mask: Vec<u64>,
    /// Per vertex and color: number of assigned neighbors with that color.
    nbr_cnt: Vec<u16>,
    /// Unassigned neighbor counts.
    free_nbrs: Vec<u32>,
    unassigned: usize,
    max_used: i32,
    nodes_left: &'a mut u64,
    deadline: Option<Instant>,
    ticks: u32,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(
        nbrs: &'a [Vec<u32>],
        t: usize,
        deadline: Option<Instant>,
        nodes_left: &'a mut u64,
    ) -> Self {
        let v = nbrs.len();
        Search {
            nbrs,
            t,
            color: vec![UNASSIGNED; v],
            nbr_mask: vec![0; v],
            nbr_cnt: vec![0; v * t],
            free_nbrs: nbrs.iter().map(|l| l.len() as u32).collect(),
            unassigned: v,
            max_used: -1,
            nodes_left,
            deadline,
            ticks: 0,
            aborted: false,
        }
    }

    fn run(&mut self) -> Outcome {
        let found = self.solve();
        if found {
            Outcome::Found(self.color.clone())
        } else if self.aborted {
            Outcome::Aborted
        } else {
            Outcome::Refuted
        }
    }

    fn spend_node(&mut self) -> bool {
        if *self.nodes_left == 0 {
            self.aborted = true;
            return false;
        }
        *self.nodes_left -= 1;
        self.ticks += 1;
        if self.ticks >= 4096 {
            self.ticks = 0;
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted = true;
                    return false;
                }
            }
        }
        true
    }

    /// Optimistic viability: can every color still end up with a
    /// dominating member? A vertex can eventually dominate its class only
    /// if the distinct colors already adjacent to it, plus its unassigned
    /// neighbors, can reach t-1.
    fn feasible(&self) -> bool {
        if self.t as i32 - 1 - self.max_used > self.unassigned as i32 {
            return false;
        }
        let needed = self.t - 1;
        'colors: for c in 0..self.t {
            let cbit = 1u64 << c;
            for v in 0..self.color.len() {
                let col = self.color[v];
                if col == UNASSIGNED {
                    if self.nbr_mask[v] & cbit == 0
                        && (self.nbr_mask[v].count_ones() as usize
                            + self.free_nbrs[v] as usize)
                            >= needed
                    {
                        continue 'colors;
                    }
                } else if col as usize == c
                    && (self.nbr_mask[v].count_ones() as usize + self.free_nbrs[v] as usize)
                        >= needed
                {
                    continue 'colors;
                }
            }
            return false;
        }
        true
    }

    /// Most saturated vertex first: fewest allowed colors, then fewest
    /// unassigned neighbors, then smallest index.
    fn select(&self) -> usize {
        let limit = (self.max_used + 1).min(self.t as i32 - 1);
        let prefix: u64 = if limit >= 63 {
            u64::MAX
        } else {
            (1u64 << (limit + 1)) - 1
        };
        let mut best = usize::MAX;
        let mut best_key = (u32::MAX, u32::MAX);
        for v in 0..self.color.len() {
            if self.color[v] != UNASSIGNED {
                continue;
            }
            let key = ((prefix & !self.nbr_mask[v]).count_ones(), self.free_nbrs[v]);
            if key < best_key {
                best_key = key;
                best = v;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: u8) {
        debug_assert_eq!(self.color[v], UNASSIGNED);
        self.color[v] = c;
        self.unassigned -= 1;
        for &u in &self.nbrs[v] {
            let u = u as usize;
            let slot = u * self.t + c as usize;
            self.nbr_cnt[slot] += 1;
            if self.nbr_cnt[slot] == 1 {
                self.nbr_mask[u] |= 1 << c;
            }
            self.free_nbrs[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, c: u8) {
        self.color[v] = UNASSIGNED;
        self.unassigned += 1;
        for &u in &self.nbrs[v] {
            let u = u as usize;
            let slot = u * self.t + c as usize;
            self.nbr_cnt[slot] -= 1;
            if self.nbr_cnt[slot] == 0 {
                self.nbr_mask[u] &= !(1 << c);
            }
            self.free_nbrs[u] += 1;
        }
    }

    fn solve(&mut self) -> bool {
        if !self.spend_node() {
            return false;
        }
        if !self.feasible() {
            return false;
        }
        if self.unassigned == 0 {
            // feasible() at a leaf is exact: masks are complete, so a
            // viable color class contains an actual dominating vertex,
            // and the prefix check forces all t colors in use.
            return true;
        }
        let v = self.select();
        let limit = (self.max_used + 1).min(self.t as i32 - 1);
        for c in 0..=limit as u8 {
            if self.nbr_mask[v] >> c & 1 == 1 {
                continue;
            }
            let prev_max = self.max_used;
            self.max_used = self.max_used.max(c as i32);
            self.assign(v, c);
            if self.solve() {
                return true;
            }
            self.unassign(v, c);
            self.max_used = prev_max;
            if self.aborted {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction;
    use crate::kneser::standard_proper_coloring;

    fn params(m: u32, n: u32) -> KneserParams {
        KneserParams::new(m, n).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_n2(5).unwrap(), ClosedFormN2::Value(3));
        assert_eq!(closed_form_n2(6).unwrap(), ClosedFormN2::Value(6));
        assert_eq!(closed_form_n2(7).unwrap(), ClosedFormN2::Value(7));
        assert_eq!(closed_form_n2(8).unwrap(), ClosedFormN2::Excluded);
        assert_eq!(closed_form_n2(9).unwrap(), ClosedFormN2::Value(12));
        assert!(closed_form_n2(3).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(bounds(params(10, 3)), (20, 36));
        assert_eq!(bounds(params(6, 3)), (2, 2));
        assert_eq!(bounds(params(5, 2)), (3, 4));
        // n=2 fallbacks: the closed form does not apply at m=4 and m=8
        assert_eq!(bounds(params(4, 2)), (2, 2));
        assert_eq!(bounds(params(8, 2)), (6, 16));
        // complete graph: tight at m
        assert_eq!(bounds(params(7, 1)), (7, 7));
    }

    #[test]
    fn bounds_are_ordered_on_a_grid() {
        for n in 1..=5u32 {
            for m in (2 * n)..=24 {
                let (lo, hi) = bounds(params(m, n));
                assert!(lo <= hi, "KG({m},{n})");
            }
        }
    }

    #[test]
    fn extraction_is_a_fixed_point_on_b_colorings() {
        let c = construction::build(params(10, 3)).unwrap();
        assert_eq!(extract_b_coloring(&c).unwrap(), c);
    }

    #[test]
    fn extraction_from_standard_coloring() {
        // chromatic colorings are already b-colorings; extraction keeps
        // all three classes
        let c = extract_b_coloring(&standard_proper_coloring(params(7, 3))).unwrap();
        assert_eq!(c.color_count(), 3);
        assert!(verify::is_b_coloring(&c).is_b);
    }

    #[test]
    fn extraction_dissolves_witnessless_classes() {
        // three classes on the perfect matching KG(6,3): nothing can
        // dominate, so extraction must collapse down to two
        let p = params(6, 3);
        let labels = kneser::vertices(p)
            .map(|a| {
                if !a.contains(0) {
                    ColorLabel::Synthetic(2)
                } else if a.contains(1) {
                    ColorLabel::Synthetic(0)
                } else {
                    ColorLabel::Synthetic(1)
                }
            })
            .collect();
        let c = Coloring::from_labels(p, labels).unwrap();
        let extracted = extract_b_coloring(&c).unwrap();
        assert!(extracted.color_count() < 3);
        assert!(verify::is_b_coloring(&extracted).is_b);
    }

    #[test]
    fn extraction_rejects_improper_input() {
        let p = params(5, 2);
        let labels = vec![ColorLabel::Synthetic(0); p.vertex_count() as usize];
        let c = Coloring::from_labels(p, labels).unwrap();
        assert!(matches!(
            extract_b_coloring(&c),
            Err(SolverError::NotProper { .. })
        ));
    }

    #[test]
    fn exact_on_tiny_instances() {
        let budget = SearchBudget::default();
        match exact_b_chromatic(params(4, 2), &budget).unwrap() {
            SearchResult::Exact { value, witness } => {
                assert_eq!(value, 2);
                assert!(verify::is_b_coloring(&witness).is_b);
            }
            other => panic!("expected exact result, got {other:?}"),
        }
        match exact_b_chromatic(params(6, 3), &budget).unwrap() {
            SearchResult::Exact { value, .. } => assert_eq!(value, 2),
            other => panic!("expected exact result, got {other:?}"),
        }
    }

    #[test]
    fn petersen_exact_matches_closed_form() {
        let result = exact_b_chromatic(params(5, 2), &SearchBudget::default()).unwrap();
        match result {
            SearchResult::Exact { value, witness } => {
                assert_eq!(value, 3);
                assert_eq!(closed_form_n2(5).unwrap(), ClosedFormN2::Value(3));
                let report = verify::is_b_coloring(&witness);
                assert!(report.is_b);
                assert_eq!(report.color_count, 3);
            }
            other => panic!("expected exact result, got {other:?}"),
        }
    }

    #[test]
    fn closed_form_overshoots_at_m4() {
        // the even branch gives 4, but the perfect matching KG(4,2) caps
        // at Δ+1 = 2; bounds() works around this by falling back to the
        // chromatic number
        assert_eq!(closed_form_n2(4).unwrap(), ClosedFormN2::Value(4));
        match exact_b_chromatic(params(4, 2), &SearchBudget::default()).unwrap() {
            SearchResult::Exact { value, .. } => assert_eq!(value, 2),
            other => panic!("expected exact result, got {other:?}"),
        }
    }

    #[test]
    fn cap_refusal() {
        let err = exact_b_chromatic(params(10, 3), &SearchBudget::default()).unwrap_err();
        assert!(matches!(err, SolverError::VertexCapExceeded { vertices: 120, cap: 30 }));
    }

    #[test]
    fn exhausted_budget_returns_enclosing_interval() {
        let budget = SearchBudget {
            max_nodes: Some(10),
            ..SearchBudget::default()
        };
        match exact_b_chromatic(params(5, 2), &budget).unwrap() {
            SearchResult::Interval { lower, upper } => {
                assert!(lower <= 3 && 3 <= upper);
            }
            SearchResult::Exact { .. } => panic!("10 nodes cannot settle the Petersen graph"),
        }
    }

    #[test]
    fn search_respects_bounds_sandwich() {
        let budget = SearchBudget {
            vertex_cap: 100,
            ..SearchBudget::default()
        };
        for (m, n) in [(4u32, 2u32), (5, 2), (6, 3), (8, 4)] {
            let p = params(m, n);
            let (lo, hi) = bounds(p);
            match exact_b_chromatic(p, &budget).unwrap() {
                SearchResult::Exact { value, .. } => {
                    assert!(lo <= value && value <= hi, "KG({m},{n}): {lo} <= {value} <= {hi}");
                }
                other => panic!("expected exact result, got {other:?}"),
            }
        }
    }
}
