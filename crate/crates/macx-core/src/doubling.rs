//! The doubling operation `K ↦ L(K)`.
//!
//! `L(K)` lives on `2m` vertices, two per original vertex, interleaved:
//! vertex `i` of `K` owns the pair `(2i - 1, 2i)`. A subset of `[2m]` is a
//! minimal non-face of `L(K)` exactly when it is `d(σ) = ∪_{i∈σ} {2i-1, 2i}`
//! for a minimal non-face `σ` of `K`. Doubling doubles the vertex count and
//! shifts both `dim` and `mdim` up by `m`, and it commutes with joins.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// The vertex correspondence of one doubling step: vertex `i` of the source
/// maps to the pair `(2i - 1, 2i)` of the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoublingMap {
    source_m: u32,
}

impl DoublingMap {
    pub fn new(source_m: u32) -> Result<DoublingMap> {
        if 2 * source_m > MAX_VERTICES {
            return Err(Error::MTooLarge {
                m: 2 * source_m,
                max: MAX_VERTICES,
            });
        }
        Ok(DoublingMap { source_m })
    }

    pub fn source_m(self) -> u32 {
        self.source_m
    }

    pub fn target_m(self) -> u32 {
        2 * self.source_m
    }

    /// Unprimed copy of source vertex `i`.
    pub fn unprimed(self, i: u32) -> u32 {
        2 * i - 1
    }

    /// Primed copy of source vertex `i`.
    pub fn primed(self, i: u32) -> u32 {
        2 * i
    }

    /// `d(σ)`: both copies of every vertex of `σ`.
    pub fn doubled_set(self, sigma: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for i in sigma.iter() {
            out = out.insert(self.unprimed(i)).insert(self.primed(i));
        }
        out
    }

    /// Source vertices whose *pair* is wholly contained in `tau`.
    pub fn paired_vertices(self, tau: VertexSet) -> VertexSet {
        let bits = tau.bits();
        // Vertex i is paired iff bits 2i-2 and 2i-1 are both set.
        let pairs = bits & (bits >> 1) & 0x5555_5555_5555_5555;
        let mut out = VertexSet::EMPTY;
        let mut rest = pairs;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            out = out.insert(bit / 2 + 1);
            rest &= rest - 1;
        }
        out
    }
}

/// The double `L(K)` of a simplicial complex.
///
/// A subset `τ ⊆ [2m]` is a face of `L(K)` iff no doubled minimal non-face
/// `d(σ)` is contained in `τ`. The maximal faces are materialized from that
/// membership rule: `τ` is maximal exactly when the paired-vertex set
/// `ρ = {i : both copies of i in τ}` is a *maximal* face of `K` and `τ`
/// contains one copy of every vertex outside `ρ` (dropping a whole pair
/// would leave room to re-add a single copy, and completing a pair beyond a
/// maximal `ρ` would cover some `d(σ)`).
pub fn double(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let map = DoublingMap::new(k.m())?;
    let mut maximal = Vec::new();
    for &face in k.maximal_faces() {
        let base = map.doubled_set(face);
        let free: Vec<u32> = VertexSet::full(k.m()).difference(face).vertices();
        // One copy (unprimed or primed) for each vertex outside the face.
        for choice in 0..(1u64 << free.len()) {
            let mut tau = base;
            for (pos, &i) in free.iter().enumerate() {
                let copy = if choice >> pos & 1 == 0 {
                    map.unprimed(i)
                } else {
                    map.primed(i)
                };
                tau = tau.insert(copy);
            }
            maximal.push(tau);
        }
    }
    SimplicialComplex::from_maximal_sets(map.target_m(), maximal)
}

/// Membership test for `L(K)` straight from the minimal non-face rule,
/// without materializing the double.
pub fn is_face_of_double(k: &SimplicialComplex, tau: VertexSet) -> Result<bool> {
    let map = DoublingMap::new(k.m())?;
    if !tau.is_subset_of(VertexSet::full(map.target_m())) {
        let v = tau
            .difference(VertexSet::full(map.target_m()))
            .min_vertex()
            .unwrap();
        return Err(Error::VertexOutOfRange {
            v,
            m: map.target_m(),
        });
    }
    Ok(!k
        .minimal_non_faces()
        .iter()
        .any(|&sigma| map.doubled_set(sigma).is_subset_of(tau)))
}

/// The permutation of `[2(m1 + m2)]` aligning `L(K1) * L(K2)` with
/// `L(K1 * K2)`, as `perm[v - 1] = image of v`.
///
/// With interleaved pair labels and joins shifting the second factor, a
/// vertex `q ≤ 2 m1` encodes `(i, primed)` with `i = ⌈q/2⌉` and lands on
/// `2i - 1 + primed`; a vertex `q > 2 m1` encodes vertex `j = ⌈(q - 2m1)/2⌉`
/// of `K2`, which the joined complex labels `m1 + j`, landing on
/// `2(m1 + j) - 1 + primed`. Both reduce to the identity, but the table is
/// built from the rule so the convention stays checkable.
pub fn doubling_permutation(m1: u32, m2: u32) -> Result<Vec<u32>> {
    let total = 2 * (m1 + m2);
    if total > MAX_VERTICES {
        return Err(Error::MTooLarge {
            m: total,
            max: MAX_VERTICES,
        });
    }
    let mut perm = Vec::with_capacity(total as usize);
    for q in 1..=total {
        let target = if q <= 2 * m1 {
            let i = q.div_ceil(2);
            let primed = 1 - q % 2;
            2 * i - 1 + primed
        } else {
            let q2 = q - 2 * m1;
            let j = q2.div_ceil(2);
            let primed = 1 - q2 % 2;
            2 * (m1 + j) - 1 + primed
        };
        perm.push(target);
    }
    Ok(perm)
}
