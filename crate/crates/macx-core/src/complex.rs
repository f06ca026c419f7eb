//! Finite simplicial complexes on labeled vertex sets.
//!
//! A complex is stored by its inclusion-maximal faces in a canonical order,
//! so structural equality is plain value comparison. Construction validates
//! the two representation invariants: the maximal faces form an antichain,
//! and every vertex of `[m]` occurs in some face (no ghost vertices). The
//! empty complex is `m = 0` with the single face `∅`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::vertex_set::{k_subsets, VertexSet, MAX_VERTICES};

/// An immutable simplicial complex on the vertex set `{1, .., m}`.
///
/// Minimal non-faces and the full face list are computed on first use and
/// cached; the caches are populated idempotently, so shared values can be
/// read from several threads.
pub struct SimplicialComplex {
    m: u32,
    maximal: Vec<VertexSet>,
    min_non_faces: OnceLock<Vec<VertexSet>>,
    face_list: OnceLock<FaceList>,
}

impl SimplicialComplex {
    /// Builds a complex from 1-indexed vertex lists of its (intended)
    /// maximal faces. Faces contained in other listed faces are dropped.
    pub fn from_maximal_faces(m: u32, faces: &[Vec<u32>]) -> Result<SimplicialComplex> {
        if m > MAX_VERTICES {
            return Err(Error::MTooLarge {
                m,
                max: MAX_VERTICES,
            });
        }
        let mut sets = Vec::with_capacity(faces.len());
        for face in faces {
            let set = VertexSet::from_vertices(face)?;
            if !set.is_subset_of(VertexSet::full(m)) {
                let v = set.difference(VertexSet::full(m)).min_vertex().unwrap();
                return Err(Error::VertexOutOfRange { v, m });
            }
            sets.push(set);
        }
        Self::from_maximal_sets(m, sets)
    }

    /// Bit-level constructor; applies the same reduction and validation as
    /// [`SimplicialComplex::from_maximal_faces`].
    pub fn from_maximal_sets(m: u32, sets: Vec<VertexSet>) -> Result<SimplicialComplex> {
        if m > MAX_VERTICES {
            return Err(Error::MTooLarge {
                m,
                max: MAX_VERTICES,
            });
        }
        let full = VertexSet::full(m);
        for &s in &sets {
            if !s.is_subset_of(full) {
                let v = s.difference(full).min_vertex().unwrap();
                return Err(Error::VertexOutOfRange { v, m });
            }
        }
        let maximal = antichain_reduce(sets);
        let covered = maximal
            .iter()
            .fold(VertexSet::EMPTY, |acc, &f| acc.union(f));
        if covered != full {
            let v = full.difference(covered).min_vertex().unwrap();
            return Err(Error::GhostVertex { v });
        }
        let maximal = if m == 0 {
            vec![VertexSet::EMPTY]
        } else {
            maximal
        };
        Ok(SimplicialComplex {
            m,
            maximal,
            min_non_faces: OnceLock::new(),
            face_list: OnceLock::new(),
        })
    }

    /// The empty complex: no vertices, unique face `∅`.
    pub fn empty() -> SimplicialComplex {
        SimplicialComplex::from_maximal_sets(0, Vec::new()).unwrap()
    }

    /// The full simplex on `m` vertices.
    pub fn simplex(m: u32) -> Result<SimplicialComplex> {
        SimplicialComplex::from_maximal_sets(m, vec![VertexSet::full(m)])
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Maximal faces in canonical order: ascending cardinality, then
    /// ascending numeric bit value.
    pub fn maximal_faces(&self) -> &[VertexSet] {
        &self.maximal
    }

    /// Whether `sigma` is a face, i.e. contained in some maximal face.
    pub fn is_face(&self, sigma: VertexSet) -> Result<bool> {
        self.check_in_universe(sigma)?;
        Ok(self.contains_face(sigma))
    }

    /// Membership without the range check; callers guarantee `sigma ⊆ [m]`.
    pub(crate) fn contains_face(&self, sigma: VertexSet) -> bool {
        self.maximal.iter().any(|&f| sigma.is_subset_of(f))
    }

    fn check_in_universe(&self, sigma: VertexSet) -> Result<()> {
        let full = VertexSet::full(self.m);
        if sigma.is_subset_of(full) {
            Ok(())
        } else {
            let v = sigma.difference(full).min_vertex().unwrap();
            Err(Error::VertexOutOfRange { v, m: self.m })
        }
    }

    /// The inclusion-minimal subsets of `[m]` that are not faces. Every
    /// entry has cardinality at least 2; a full simplex has none.
    ///
    /// Candidates are scanned by increasing cardinality, pruning supersets
    /// of non-faces already found; a minimal non-face has all of its facets
    /// in the complex, so its cardinality is at most `dim K + 2`.
    pub fn minimal_non_faces(&self) -> &[VertexSet] {
        self.min_non_faces.get_or_init(|| {
            let mut found: Vec<VertexSet> = Vec::new();
            let cap = (self.dim() + 2).min(self.m as i32);
            for c in 2..=cap {
                for sigma in k_subsets(self.m, c as u32) {
                    if found.iter().any(|&nf| nf.is_subset_of(sigma)) {
                        continue;
                    }
                    if !self.contains_face(sigma) {
                        found.push(sigma);
                    }
                }
            }
            sort_canonical(&mut found);
            found
        })
    }

    /// Largest dimension of a maximal face; `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.maximal
            .iter()
            .map(|f| f.card() as i32 - 1)
            .max()
            .unwrap_or(-1)
    }

    /// Smallest dimension of a maximal face; `-1` for the empty complex.
    pub fn mdim(&self) -> i32 {
        self.maximal
            .iter()
            .map(|f| f.card() as i32 - 1)
            .min()
            .unwrap_or(-1)
    }

    /// Join of two complexes on the disjoint union of their vertex sets;
    /// vertices of `other` are shifted up by `self.m()`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let m = self.m + other.m;
        if m > MAX_VERTICES {
            return Err(Error::MTooLarge {
                m,
                max: MAX_VERTICES,
            });
        }
        let mut sets = Vec::with_capacity(self.maximal.len() * other.maximal.len());
        for &f1 in &self.maximal {
            for &f2 in &other.maximal {
                sets.push(f1.union(VertexSet::from_bits(f2.bits() << self.m)));
            }
        }
        SimplicialComplex::from_maximal_sets(m, sets)
    }

    /// Link of a vertex: `{σ : v ∉ σ, σ ∪ {v} ∈ K}`, re-indexed onto its
    /// own vertex support (order preserving).
    pub fn link(&self, v: u32) -> Result<Link> {
        if v == 0 || v > self.m {
            return Err(Error::VertexOutOfRange { v, m: self.m });
        }
        let sets: Vec<VertexSet> = self
            .maximal
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.remove(v))
            .collect();
        let reduced = antichain_reduce(sets);
        let support = reduced
            .iter()
            .fold(VertexSet::EMPTY, |acc, &f| acc.union(f));
        let complex = compact_onto_support(&reduced, support)?;
        Ok(Link { complex, support })
    }

    /// Full subcomplex on `omega`: faces contained in `omega`, re-indexed
    /// onto `omega` (order preserving).
    pub fn restriction(&self, omega: VertexSet) -> Result<SimplicialComplex> {
        self.check_in_universe(omega)?;
        let sets: Vec<VertexSet> = self
            .maximal
            .iter()
            .map(|&f| f.intersection(omega))
            .collect();
        compact_onto_support(&antichain_reduce(sets), omega)
    }

    /// All faces including `∅`, grouped by dimension, cached.
    pub fn faces(&self) -> &FaceList {
        self.face_list.get_or_init(|| {
            let dim = self.dim();
            let mut by_dim: Vec<Vec<VertexSet>> = vec![Vec::new(); (dim + 2) as usize];
            let mut seen = std::collections::HashSet::new();
            let mut work: Vec<VertexSet> = Vec::new();
            for &f in &self.maximal {
                if seen.insert(f) {
                    work.push(f);
                }
            }
            while let Some(face) = work.pop() {
                by_dim[(face.card()) as usize].push(face);
                for v in face.iter() {
                    let sub = face.remove(v);
                    if seen.insert(sub) {
                        work.push(sub);
                    }
                }
            }
            for faces in &mut by_dim {
                faces.sort();
            }
            FaceList { by_dim }
        })
    }

    /// Applies a permutation of `[m]` to the vertex labels; `perm[v - 1]`
    /// is the image of `v`.
    pub fn relabel(&self, perm: &[u32]) -> Result<SimplicialComplex> {
        let image = VertexSet::from_vertices(perm).ok();
        if perm.len() != self.m as usize || image != Some(VertexSet::full(self.m)) {
            return Err(Error::InvalidPermutation {
                perm: perm.to_vec(),
                m: self.m,
            });
        }
        let sets = self
            .maximal
            .iter()
            .map(|f| {
                f.iter()
                    .fold(VertexSet::EMPTY, |acc, v| acc.insert(perm[v as usize - 1]))
            })
            .collect();
        SimplicialComplex::from_maximal_sets(self.m, sets)
    }

    /// `Σ_p (-1)^p f_p` over faces of dimension `p ≥ 0`.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for p in 0..=self.dim() {
            let count = self.faces().of_dim(p).len() as i64;
            chi += if p % 2 == 0 { count } else { -count };
        }
        chi
    }
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            m: self.m,
            maximal: self.maximal.clone(),
            min_non_faces: OnceLock::new(),
            face_list: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.maximal == other.maximal
    }
}

impl Eq for SimplicialComplex {}

impl std::hash::Hash for SimplicialComplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.maximal.hash(state);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(m={}, maximal={:?})",
            self.m, self.maximal
        )
    }
}

/// Result of [`SimplicialComplex::link`]: the link complex plus the vertex
/// support it was compacted from, for traceability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub complex: SimplicialComplex,
    pub support: VertexSet,
}

impl Link {
    /// Number of vertices of the link.
    pub fn vertex_count(&self) -> u32 {
        self.support.card()
    }
}

/// Faces grouped by dimension, from `-1` (the empty face) upward, each
/// group sorted by ascending numeric bit value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceList {
    // by_dim[i] holds the faces of dimension i - 1.
    by_dim: Vec<Vec<VertexSet>>,
}

impl FaceList {
    pub fn min_dim(&self) -> i32 {
        -1
    }

    pub fn max_dim(&self) -> i32 {
        self.by_dim.len() as i32 - 2
    }

    pub fn of_dim(&self, p: i32) -> &[VertexSet] {
        let idx = p + 1;
        if idx < 0 || idx as usize >= self.by_dim.len() {
            &[]
        } else {
            &self.by_dim[idx as usize]
        }
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Position of `face` within its dimension group.
    pub fn index_of(&self, face: VertexSet) -> Option<usize> {
        let group = self.of_dim(face.card() as i32 - 1);
        group.binary_search(&face).ok()
    }
}

/// Drops sets contained in another set of the list, deduplicates, and
/// returns the canonical ordering.
fn antichain_reduce(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.card()));
    let mut maximal: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !maximal.iter().any(|&f| s.is_subset_of(f)) {
            maximal.push(s);
        }
    }
    sort_canonical(&mut maximal);
    maximal
}

fn sort_canonical(sets: &mut [VertexSet]) {
    sets.sort_by_key(|s| (s.card(), s.bits()));
}

/// Re-indexes faces supported on `support` onto `1..=|support|`, keeping
/// the relative vertex order.
fn compact_onto_support(sets: &[VertexSet], support: VertexSet) -> Result<SimplicialComplex> {
    let mut position = [0u32; 64];
    for (i, v) in support.iter().enumerate() {
        position[v as usize] = i as u32 + 1;
    }
    let compacted = sets
        .iter()
        .map(|f| {
            f.iter()
                .fold(VertexSet::EMPTY, |acc, v| acc.insert(position[v as usize]))
        })
        .collect();
    SimplicialComplex::from_maximal_sets(support.card(), compacted)
}
