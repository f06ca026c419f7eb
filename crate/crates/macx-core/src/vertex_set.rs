//! Subsets of a labeled vertex set `[m] = {1, .., m}` packed into one machine word.
//!
//! A [`VertexSet`] is the index currency for the whole crate: simplices,
//! minimal non-faces, Hochster subsets and cubical cell coordinates are all
//! vertex sets. Vertices are 1-indexed; vertex `v` occupies bit `v - 1`.
//! The cap of 63 vertices keeps every set in a single `u64`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: u32 = 63;

/// A subset of `[m]` as a bit vector. Vertex `v` (1-indexed) is bit `v - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The full set `{1, .., m}`.
    pub fn full(m: u32) -> VertexSet {
        debug_assert!(m <= MAX_VERTICES);
        if m == 0 {
            VertexSet(0)
        } else {
            VertexSet(u64::MAX >> (64 - m))
        }
    }

    pub fn singleton(v: u32) -> VertexSet {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1 << (v - 1))
    }

    /// Builds a set from 1-indexed vertices; rejects labels outside `1..=63`.
    pub fn from_vertices(vertices: &[u32]) -> Result<VertexSet> {
        let mut bits = 0u64;
        for &v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { v, m: MAX_VERTICES });
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn insert(self, v: u32) -> VertexSet {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(self.0 | 1 << (v - 1))
    }

    pub fn remove(self, v: u32) -> VertexSet {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Complement relative to `[m]`.
    pub fn complement_in(self, m: u32) -> VertexSet {
        VertexSet(Self::full(m).0 & !self.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of vertices in the set.
    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    /// Smallest vertex, if any.
    pub fn min_vertex(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() + 1)
        }
    }

    /// Iterates vertices in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn vertices(self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// All subsets of `set` in ascending numeric order of their bit patterns
/// (the carry-rippler enumeration). Includes the empty set and `set` itself.
pub fn subsets_of(set: VertexSet) -> SubsetIter {
    SubsetIter {
        set: set.bits(),
        next: Some(0),
    }
}

pub struct SubsetIter {
    set: u64,
    next: Option<u64>,
}

impl Iterator for SubsetIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        let stepped = cur.wrapping_sub(self.set) & self.set;
        self.next = if stepped == 0 { None } else { Some(stepped) };
        Some(VertexSet(cur))
    }
}

/// All `k`-element subsets of `{1, .., m}` in ascending numeric order
/// (Gosper's hack).
pub fn k_subsets(m: u32, k: u32) -> KSubsetIter {
    debug_assert!(m <= MAX_VERTICES);
    let cur = if k == 0 {
        Some(0)
    } else if k > m {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    KSubsetIter {
        limit: if m == 0 { 0 } else { u64::MAX >> (64 - m) },
        k,
        cur,
    }
}

pub struct KSubsetIter {
    limit: u64,
    k: u32,
    cur: Option<u64>,
}

impl Iterator for KSubsetIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.cur?;
        if cur > self.limit {
            self.cur = None;
            return None;
        }
        self.cur = if self.k == 0 || cur == 0 {
            None
        } else {
            let lowest = cur & cur.wrapping_neg();
            let ripple = cur + lowest;
            if ripple == 0 {
                None
            } else {
                Some(ripple | (((cur ^ ripple) / lowest) >> 2))
            }
        };
        Some(VertexSet(cur))
    }
}
