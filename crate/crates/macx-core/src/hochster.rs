//! The Hochster decomposition of `H*(Z_K; Q)`.
//!
//! The cohomology of the moment-angle complex splits as the direct sum of
//! reduced cohomologies of all full subcomplexes:
//! `H*(Z_K; Q) ≅ ⊕_{ω ⊆ [m], p ≥ -1} H̃^p(K_ω; Q)`, a class from `(ω, p)`
//! sitting in total degree `p + |ω| + 1`. Over the rationals the reduced
//! cohomology ranks equal the reduced homology ranks, which is what the
//! engine computes. The graded placement is validated against the cubical
//! model of the double throughout the test corpus; the ungraded sum is the
//! quantity the toral-rank bounds use.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{reduced_betti, BettiTable};
use crate::vertex_set::VertexSet;

/// Subset enumeration is `2^m`; beyond this it is not worth attempting.
pub const MAX_ENUMERATION_M: u32 = 20;

/// The bigraded rank table `(ω, p) -> rank H̃^p(K_ω; Q)`, zeros omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HochsterTable {
    entries: BTreeMap<(VertexSet, i32), usize>,
    graded: BettiTable,
}

impl HochsterTable {
    /// All nonzero entries, ordered by `(ω, p)`.
    pub fn entries(&self) -> impl Iterator<Item = (VertexSet, i32, usize)> + '_ {
        self.entries.iter().map(|(&(w, p), &r)| (w, p, r))
    }

    pub fn rank(&self, omega: VertexSet, p: i32) -> usize {
        self.entries.get(&(omega, p)).copied().unwrap_or(0)
    }

    /// Betti table of `Z_K` assembled by total degree `p + |ω| + 1`.
    pub fn graded(&self) -> &BettiTable {
        &self.graded
    }

    /// Ungraded total rank.
    pub fn hrk(&self) -> usize {
        self.entries.values().sum()
    }
}

/// Computes the full decomposition: reduced Betti numbers of `K_ω` for
/// every `ω ⊆ [m]`.
///
/// Subsets are processed in parallel; the table does not depend on the
/// evaluation order.
pub fn hochster_table(k: &SimplicialComplex) -> Result<HochsterTable> {
    if k.m() > MAX_ENUMERATION_M {
        return Err(Error::MTooLargeForEnumeration {
            m: k.m(),
            max: MAX_ENUMERATION_M,
        });
    }
    let per_subset: Vec<(VertexSet, BettiTable)> = (0u64..(1u64 << k.m()))
        .into_par_iter()
        .map(|bits| {
            let omega = VertexSet::from_bits(bits);
            let sub = k.restriction(omega).expect("ω enumerated inside [m]");
            (omega, reduced_betti(&sub))
        })
        .collect();

    let mut entries = BTreeMap::new();
    let mut graded = BettiTable::new();
    for (omega, betti) in per_subset {
        for (p, rank) in betti.iter() {
            entries.insert((omega, p), rank);
            graded.add(p + omega.card() as i32 + 1, rank);
        }
    }
    Ok(HochsterTable { entries, graded })
}

/// Total rational cohomology rank of `Z_K`.
pub fn hrk_zk(k: &SimplicialComplex) -> Result<usize> {
    Ok(hochster_table(k)?.hrk())
}
