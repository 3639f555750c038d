//! Exact integer combinatorics and subset encoding/enumeration.
//!
//! Subsets of `[m] = {0, 1, ..., m-1}` with `m <= 64` are packed into a
//! single `u64` bitmask (bit `i` set iff element `i` is in the set). The
//! canonical enumeration order everywhere is colexicographic, which for
//! bitmasks of equal popcount coincides with plain numeric order.

use std::fmt;

use thiserror::Error;

/// Largest supported ground-set size; a subset of `[m]` must fit one word.
pub const MAX_GROUND_SET: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("binomial coefficient overflows u128")]
    Overflow,
    #[error("set {set} has {actual} elements, expected {expected}")]
    SizeMismatch {
        set: VertexSet,
        expected: u32,
        actual: u32,
    },
    #[error("rank {rank} out of range: C({m},{n}) = {count}")]
    RankOutOfRange { rank: u64, m: u32, n: u32, count: u64 },
}

/// A subset of `[m]` packed as a bitmask. Doubles as a color label in the
/// subset-valued colorings.
///
/// The derived `Ord` compares masks numerically, which for sets of equal
/// size is exactly colexicographic order: `A < B` iff `max(A Δ B) ∈ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let mut bits = 0u64;
        for e in elements {
            assert!(e < MAX_GROUND_SET, "element {e} out of range");
            bits |= 1 << e;
        }
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, element: u32) -> bool {
        element < 64 && (self.0 >> element) & 1 == 1
    }

    /// Smallest element, or `None` for the empty set.
    #[inline]
    pub const fn min_element(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros())
        }
    }

    #[inline]
    pub const fn max_element(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    #[inline]
    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn symmetric_difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 ^ other.0)
    }

    #[inline]
    pub const fn insert(self, element: u32) -> VertexSet {
        VertexSet(self.0 | (1 << element))
    }

    /// True iff no bit at position `m` or above is set.
    #[inline]
    pub const fn fits_ground_set(self, m: u32) -> bool {
        m >= 64 || self.0 >> m == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut bits = self.0;
        while bits != 0 {
            out.push(bits.trailing_zeros());
            bits &= bits - 1;
        }
        out
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros();
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Mask with the lowest `m` bits set.
#[inline]
pub const fn full_mask(m: u32) -> VertexSet {
    if m >= 64 {
        VertexSet(u64::MAX)
    } else {
        VertexSet((1u64 << m) - 1)
    }
}

/// Position of an n-subset in the colexicographic enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetRank(pub u64);

const fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact binomial coefficient `C(a, b)`; returns 0 when `b > a`.
///
/// Multiplicative formula with full gcd reduction before every multiply,
/// so `Overflow` is reported iff the value itself exceeds `u128` (every
/// intermediate equals a smaller binomial coefficient).
pub fn binomial(a: u64, b: u64) -> Result<u128, CombinatoricsError> {
    if b > a {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut result: u128 = 1;
    for i in 1..=b {
        let mut factor = (a - b + i) as u128;
        let mut div = i as u128;
        let g = gcd_u128(factor, div);
        factor /= g;
        div /= g;
        let g = gcd_u128(result, div);
        result /= g;
        // C(a-b+i, i) is an integer, so after both reductions div is 1.
        debug_assert_eq!(div / g, 1);
        result = result
            .checked_mul(factor)
            .ok_or(CombinatoricsError::Overflow)?;
    }
    Ok(result)
}

/// Pascal table for the `a <= 64` regime, where every `C(a, b)` fits `u64`.
/// Ranking every neighbor of every vertex hits this in a tight loop.
fn pascal_table() -> &'static [[u64; 65]; 65] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for a in 0..=64usize {
            t[a][0] = 1;
            for b in 1..=a {
                t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
            }
        }
        t
    })
}

/// `C(a, b)` via the Pascal table (`a <= 64`); 0 when `b > a`.
#[inline]
pub(crate) fn binom64(a: u32, b: u32) -> u64 {
    debug_assert!(a <= 64);
    if b > a {
        0
    } else {
        pascal_table()[a as usize][b as usize]
    }
}

/// Colex rank without the size check, for hot loops over known vertices.
#[inline]
pub(crate) fn rank_unchecked(set: VertexSet) -> u64 {
    let mut r = 0u64;
    for (i, e) in set.iter().enumerate() {
        r += binom64(e, i as u32 + 1);
    }
    r
}

/// Colex rank of an `n`-subset. Independent of the ground-set size.
pub fn rank(set: VertexSet, n: u32) -> Result<SubsetRank, CombinatoricsError> {
    if set.len() != n {
        return Err(CombinatoricsError::SizeMismatch {
            set,
            expected: n,
            actual: set.len(),
        });
    }
    Ok(SubsetRank(rank_unchecked(set)))
}

/// Inverse of [`rank`]: the `r`-th `n`-subset of `[m]` in colex order.
pub fn unrank(r: SubsetRank, m: u32, n: u32) -> Result<VertexSet, CombinatoricsError> {
    assert!(m <= MAX_GROUND_SET, "ground set capped at 64");
    let count = binom64(m, n);
    if n > m || r.0 >= count {
        return Err(CombinatoricsError::RankOutOfRange {
            rank: r.0,
            m,
            n,
            count: if n > m { 0 } else { count },
        });
    }
    let mut bits = 0u64;
    let mut rest = r.0;
    let mut upper = m;
    for k in (1..=n).rev() {
        // Largest e with C(e, k) <= rest; e < upper keeps elements distinct.
        let mut e = upper - 1;
        while binom64(e, k) > rest {
            e -= 1;
        }
        rest -= binom64(e, k);
        bits |= 1 << e;
        upper = e;
    }
    Ok(VertexSet(bits))
}

/// All `C(m, n)` subsets of `[m]` with `n` elements, in colex order
/// (equivalently: ascending as bitmask integers; Gosper successor).
pub fn iterate_subsets(m: u32, n: u32) -> SubsetIter {
    assert!(m <= MAX_GROUND_SET, "ground set capped at 64");
    assert!(n <= m, "subset size {n} exceeds ground set {m}");
    SubsetIter {
        current: full_mask(n).bits(),
        remaining: binom64(m, n),
    }
}

/// Iterator produced by [`iterate_subsets`].
#[derive(Debug, Clone)]
pub struct SubsetIter {
    current: u64,
    remaining: u64,
}

impl Iterator for SubsetIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current;
        self.remaining -= 1;
        if self.remaining > 0 && out != 0 {
            // Gosper's hack; safe from u64 overflow because the colex
            // maximum is never advanced past (remaining hits 0 first).
            let low = out & out.wrapping_neg();
            let carry = out + low;
            self.current = carry | (((out ^ carry) / low) >> 2);
        }
        Some(VertexSet(out))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for SubsetIter {}
