//! Chain complexes and Betti numbers over the rationals.
//!
//! A [`ChainComplex`] is a graded family of integer boundary matrices
//! `D_p: C_p -> C_{p-1}` with `D_{p-1} . D_p = 0`. Betti numbers come from
//! the rank formula `b_p = c_p - rank D_p - rank D_{p+1}`; all ranks are
//! exact (see [`crate::matrix`]).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matrix::{graded_ranks, IntMatrix};

/// Ranks of (co)homology groups by degree; absent degrees are zero.
/// Serializes as the bare degree-to-rank map, e.g. `{"0":1,"3":2}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable {
    ranks: BTreeMap<i32, usize>,
}

impl BettiTable {
    pub fn new() -> BettiTable {
        BettiTable::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, usize)>) -> BettiTable {
        let mut table = BettiTable::new();
        for (p, r) in pairs {
            table.add(p, r);
        }
        table
    }

    /// Adds `rank` in degree `p`; zero contributions are not stored.
    pub fn add(&mut self, p: i32, rank: usize) {
        if rank > 0 {
            *self.ranks.entry(p).or_insert(0) += rank;
        }
    }

    pub fn get(&self, p: i32) -> usize {
        self.ranks.get(&p).copied().unwrap_or(0)
    }

    /// Total rank over all degrees.
    pub fn hrk(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.ranks.iter().map(|(&p, &r)| (p, r))
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `Σ_p (-1)^p b_p`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(p, r)| {
                if p.rem_euclid(2) == 0 {
                    r as i64
                } else {
                    -(r as i64)
                }
            })
            .sum()
    }

    /// Degree-wise convolution: the table of a product space.
    pub fn convolve(&self, other: &BettiTable) -> BettiTable {
        let mut out = BettiTable::new();
        for (p, r) in self.iter() {
            for (q, s) in other.iter() {
                out.add(p + q, r * s);
            }
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, r)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {r}")?;
        }
        write!(f, "}}")
    }
}

/// A finite chain complex of free abelian groups with integer boundaries.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    bottom: i32,
    sizes: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `sizes[i]` is the basis size in degree `bottom + i`; `boundaries[i]`
    /// maps degree `bottom + i + 1` to degree `bottom + i`.
    ///
    /// Panics on shape mismatch (that is a construction bug, not input
    /// data); whether the boundaries actually compose to zero is checked by
    /// [`ChainComplex::betti`].
    pub fn new(bottom: i32, sizes: Vec<usize>, boundaries: Vec<IntMatrix>) -> ChainComplex {
        assert_eq!(
            boundaries.len() + 1,
            sizes.len().max(1),
            "need one boundary per adjacent degree pair"
        );
        for (i, d) in boundaries.iter().enumerate() {
            assert_eq!(
                d.rows(),
                sizes[i],
                "rows of D_{} mismatch",
                bottom + i as i32 + 1
            );
            assert_eq!(
                d.cols(),
                sizes[i + 1],
                "cols of D_{} mismatch",
                bottom + i as i32 + 1
            );
        }
        ChainComplex {
            bottom,
            sizes,
            boundaries,
        }
    }

    pub fn bottom_degree(&self) -> i32 {
        self.bottom
    }

    pub fn top_degree(&self) -> i32 {
        self.bottom + self.sizes.len() as i32 - 1
    }

    pub fn size(&self, p: i32) -> usize {
        let idx = p - self.bottom;
        if idx < 0 || idx as usize >= self.sizes.len() {
            0
        } else {
            self.sizes[idx as usize]
        }
    }

    /// The boundary `D_p: C_p -> C_{p-1}`, if that degree pair exists.
    pub fn boundary(&self, p: i32) -> Option<&IntMatrix> {
        let idx = p - self.bottom - 1;
        if idx < 0 {
            None
        } else {
            self.boundaries.get(idx as usize)
        }
    }

    /// Verifies `D_{p-1} . D_p = 0` for all adjacent pairs.
    pub fn verify_boundary_condition(&self) -> Result<()> {
        for i in 1..self.boundaries.len() {
            if !self.boundaries[i - 1].compose_is_zero(&self.boundaries[i]) {
                return Err(Error::CompositionNonzero {
                    degree: self.bottom + i as i32,
                });
            }
        }
        Ok(())
    }

    /// Betti numbers over the rationals.
    ///
    /// The boundary condition is always verified first: the joint
    /// elimination relies on it, and a violation means some upstream
    /// construction is broken.
    pub fn betti(&self) -> Result<BettiTable> {
        self.verify_boundary_condition()?;
        let ranks = graded_ranks(&self.boundaries);
        let mut table = BettiTable::new();
        for (i, &c) in self.sizes.iter().enumerate() {
            let rank_in = if i < ranks.len() { ranks[i] } else { 0 };
            let rank_out = if i == 0 { 0 } else { ranks[i - 1] };
            let b = c as i64 - rank_in as i64 - rank_out as i64;
            if b < 0 {
                // Impossible for a genuine chain complex; the composition
                // check above can miss violations only through rank bugs.
                return Err(Error::CompositionNonzero {
                    degree: self.bottom + i as i32,
                });
            }
            table.add(self.bottom + i as i32, b as usize);
        }
        Ok(table)
    }
}

/// The augmented chain complex of a simplicial complex: one generator per
/// face including the empty face in degree `-1`.
pub fn augmented_chain_complex(k: &SimplicialComplex) -> ChainComplex {
    let faces = k.faces();
    let dim = faces.max_dim();
    let mut sizes = Vec::new();
    for p in -1..=dim {
        sizes.push(faces.of_dim(p).len());
    }
    let mut boundaries = Vec::new();
    for p in 0..=dim {
        let lower = faces.of_dim(p - 1);
        let current = faces.of_dim(p);
        let mut entries = Vec::new();
        for (j, &face) in current.iter().enumerate() {
            for (pos, v) in face.iter().enumerate() {
                let sub = face.remove(v);
                let i = lower.binary_search(&sub).expect("faces are subset-closed");
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                entries.push((i, j, sign));
            }
        }
        boundaries.push(IntMatrix::from_entries(lower.len(), current.len(), entries));
    }
    ChainComplex::new(-1, sizes, boundaries)
}

/// Reduced Betti numbers `b̃_p(K; Q)` for `-1 <= p <= dim K`.
///
/// The empty complex has `{-1: 1}`; any nonempty complex has
/// `b̃_{-1} = 0`; a point has none at all.
pub fn reduced_betti(k: &SimplicialComplex) -> BettiTable {
    augmented_chain_complex(k)
        .betti()
        .expect("simplicial boundaries compose to zero")
}
