//! Toral-rank bookkeeping and corpus verification.
//!
//! For a complex `K` on `m` vertices the report records the subtorus rank
//! bound `m - 1 - dim K`, the two total cohomology ranks (`hrk Z_K` via the
//! Hochster decomposition, `hrk RZ_K` via the cubical model), and checks
//!
//! * `cross_check_ok`: graded Hochster table of `K` equals the cubical
//!   Betti table of the double, degree by degree;
//! * `theorem_ok`: `hrk RZ_K >= 2^(m - mdim K - 1)`;
//! * `trc_ok`: `hrk Z_K >= 2^(m - 1 - dim K)`;
//! * `slice_ok`: `hrk RZ_K >= 2^(m - k - 1) * hrk RZ_{lk v}` for every
//!   vertex `v`, `k` the vertex count of the link.
//!
//! All four are theorems, so a false flag is a defect in this crate, not a
//! discovery about the input; the corpus runner treats any false flag as a
//! hard failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::cubical::{betti_rzk, hrk_rzk};
use crate::doubling::double;
use crate::error::{Error, Result};
use crate::hochster::hochster_table;
use crate::vertex_set::{k_subsets, VertexSet};

/// Exhaustive enumeration cap: all complexes on `m <= 4` vertices.
pub const MAX_EXHAUSTIVE_M: u32 = 4;

/// `m - 1 - dim K`: the largest rank of a coordinate subtorus acting
/// almost freely on `Z_K` (attained, so reported as the toral rank).
pub fn trk_upper_bound(k: &SimplicialComplex) -> u32 {
    (k.m() as i64 - 1 - k.dim() as i64) as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub hrk_rzk: usize,
    pub bound: u64,
    pub ok: bool,
}

/// Checks `hrk(RZ_K) >= 2^(m - mdim K - 1)` directly on `K`.
pub fn check_theorem(k: &SimplicialComplex) -> Result<TheoremCheck> {
    let hrk = hrk_rzk(k)?;
    let exponent = k.m() as i64 - k.mdim() as i64 - 1;
    let bound = 1u64 << exponent;
    Ok(TheoremCheck {
        hrk_rzk: hrk,
        bound,
        ok: hrk as u64 >= bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCheck {
    pub lhs: usize,
    pub rhs: u64,
    pub ok: bool,
}

/// Compares `hrk(RZ_K)` against the slice at one vertex:
/// `2^(m - k - 1)` disjoint copies of `RZ_{lk v}`.
pub fn slice_check(k: &SimplicialComplex, v: u32) -> Result<SliceCheck> {
    let link = k.link(v)?;
    let lhs = hrk_rzk(k)?;
    let link_hrk = hrk_rzk(&link.complex)?;
    let exponent = k.m() - link.vertex_count() - 1;
    let rhs = (1u64 << exponent) * link_hrk as u64;
    Ok(SliceCheck {
        lhs,
        rhs,
        ok: lhs as u64 >= rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrcFlags {
    pub theorem_ok: bool,
    pub trc_ok: bool,
    pub cross_check_ok: bool,
    pub slice_ok: bool,
}

impl TrcFlags {
    pub fn all_ok(&self) -> bool {
        self.theorem_ok && self.trc_ok && self.cross_check_ok && self.slice_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrcReport {
    pub id: String,
    pub m: u32,
    pub dim: i32,
    pub mdim: i32,
    pub trk_bound: u32,
    pub hrk_zk: usize,
    pub hrk_rzk: usize,
    pub theorem_bound: u64,
    pub trc_bound: u64,
    pub theorem_tight: bool,
    pub flags: TrcFlags,
}

/// Runs every check on one complex.
pub fn check_trc(k: &SimplicialComplex, id: &str) -> Result<TrcReport> {
    let table = hochster_table(k)?;
    let doubled = double(k)?;
    let cubical_of_double = betti_rzk(&doubled)?;
    let cross_check_ok = table.graded() == &cubical_of_double;

    let theorem = check_theorem(k)?;
    let hrk_zk = table.hrk();
    let trk_bound = trk_upper_bound(k);
    let trc_bound = 1u64 << trk_bound;

    let mut slice_ok = true;
    for v in 1..=k.m() {
        slice_ok &= slice_check(k, v)?.ok;
    }

    Ok(TrcReport {
        id: id.to_string(),
        m: k.m(),
        dim: k.dim(),
        mdim: k.mdim(),
        trk_bound,
        hrk_zk,
        hrk_rzk: theorem.hrk_rzk,
        theorem_bound: theorem.bound,
        trc_bound,
        theorem_tight: theorem.hrk_rzk as u64 == theorem.bound,
        flags: TrcFlags {
            theorem_ok: theorem.ok,
            trc_ok: hrk_zk as u64 >= trc_bound,
            cross_check_ok,
            slice_ok,
        },
    })
}

/// Every simplicial complex on exactly `m` labeled vertices (all
/// singletons present), each exactly once, in a fixed order.
///
/// Complexes correspond one-to-one with antichains of subsets of
/// cardinality at least 2: the antichain lists the maximal faces that are
/// not singletons. Candidate subsets are ordered by (cardinality, bit
/// value) and selections enumerated in ascending mask order.
pub fn enumerate_complexes(m: u32) -> Result<Vec<SimplicialComplex>> {
    if m > MAX_EXHAUSTIVE_M {
        return Err(Error::MTooLargeForEnumeration {
            m,
            max: MAX_EXHAUSTIVE_M,
        });
    }
    let mut candidates: Vec<VertexSet> = Vec::new();
    for card in 2..=m {
        candidates.extend(k_subsets(m, card));
    }
    let mut out = Vec::new();
    'masks: for mask in 0u64..(1 << candidates.len()) {
        let chosen: Vec<VertexSet> = candidates
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        for (i, &a) in chosen.iter().enumerate() {
            for &b in &chosen[i + 1..] {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    continue 'masks;
                }
            }
        }
        let covered = chosen.iter().fold(VertexSet::EMPTY, |acc, &s| acc.union(s));
        let mut maximal = chosen;
        for v in VertexSet::full(m).difference(covered).iter() {
            maximal.push(VertexSet::singleton(v));
        }
        out.push(SimplicialComplex::from_maximal_sets(m, maximal)?);
    }
    Ok(out)
}

/// Seeded random complex: every subset of cardinality at least 2 is drawn
/// as a candidate maximal face with the given probability (subsets visited
/// in ascending bit order), then closed downward and completed with the
/// missing singletons. Identical `(m, density, seed)` give identical
/// output on every platform.
pub fn random_complex(m: u32, density: f64, seed: u64) -> Result<SimplicialComplex> {
    if !(1..=16).contains(&m) {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("{m} outside 1..=16"),
        });
    }
    if !(density > 0.0 && density < 1.0) {
        return Err(Error::InvalidParameter {
            name: "density",
            reason: format!("{density} outside the open interval (0, 1)"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<VertexSet> = Vec::new();
    for bits in 0..(1u64 << m) {
        if bits.count_ones() >= 2 && rng.gen_bool(density) {
            chosen.push(VertexSet::from_bits(bits));
        }
    }
    let covered = chosen.iter().fold(VertexSet::EMPTY, |acc, &s| acc.union(s));
    for v in VertexSet::full(m).difference(covered).iter() {
        chosen.push(VertexSet::singleton(v));
    }
    SimplicialComplex::from_maximal_sets(m, chosen)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomBatch {
    pub count: u32,
    pub m: u32,
    pub density: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusParams {
    /// Exhaustive enumeration for every vertex count `1..=max_m`.
    pub max_m: u32,
    /// Additional random legs; item `i` of a batch uses `seed + i`.
    pub random: Vec<RandomBatch>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub version: String,
    pub params: CorpusParams,
    pub all_ok: bool,
    pub reports: Vec<TrcReport>,
}

/// Materializes the corpus described by `params`, in report order.
pub fn corpus_complexes(params: &CorpusParams) -> Result<Vec<(String, SimplicialComplex)>> {
    if params.max_m > MAX_EXHAUSTIVE_M {
        return Err(Error::MTooLargeForEnumeration {
            m: params.max_m,
            max: MAX_EXHAUSTIVE_M,
        });
    }
    let mut items = Vec::new();
    for m in 1..=params.max_m {
        for (i, k) in enumerate_complexes(m)?.into_iter().enumerate() {
            items.push((format!("m{m}-e{i:04}"), k));
        }
    }
    for batch in &params.random {
        for i in 0..batch.count {
            let seed = batch.seed.wrapping_add(i as u64);
            let k = random_complex(batch.m, batch.density, seed)?;
            items.push((format!("m{}-s{}-r{i:03}", batch.m, batch.seed), k));
        }
    }
    Ok(items)
}

/// Runs [`check_trc`] over the whole corpus, in parallel, and assembles
/// the deterministic report.
pub fn run_corpus(params: &CorpusParams) -> Result<CorpusReport> {
    let items = corpus_complexes(params)?;
    let reports: Vec<TrcReport> = items
        .par_iter()
        .map(|(id, k)| check_trc(k, id))
        .collect::<Result<_>>()?;
    let all_ok = reports.iter().all(|r| r.flags.all_ok());
    Ok(CorpusReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        params: params.clone(),
        all_ok,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_maximal_faces(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
            .unwrap()
    }

    fn three_points() -> SimplicialComplex {
        SimplicialComplex::from_maximal_faces(3, &[vec![1], vec![2], vec![3]]).unwrap()
    }

    #[test]
    fn trk_bound_examples() {
        let two_points = SimplicialComplex::from_maximal_faces(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(trk_upper_bound(&two_points), 1);
        assert_eq!(trk_upper_bound(&SimplicialComplex::simplex(5).unwrap()), 0);
        assert_eq!(trk_upper_bound(&four_cycle()), 2);
    }

    #[test]
    fn theorem_check_tight_cases() {
        let two_points = SimplicialComplex::from_maximal_faces(2, &[vec![1], vec![2]]).unwrap();
        let t = check_theorem(&two_points).unwrap();
        assert_eq!((t.hrk_rzk, t.bound, t.ok), (2, 2, true));

        let t = check_theorem(&SimplicialComplex::simplex(4).unwrap()).unwrap();
        assert_eq!((t.hrk_rzk, t.bound, t.ok), (1, 1, true));

        let t = check_theorem(&four_cycle()).unwrap();
        assert_eq!((t.hrk_rzk, t.bound, t.ok), (4, 4, true));
    }

    #[test]
    fn slice_check_examples() {
        let s = slice_check(&four_cycle(), 1).unwrap();
        assert_eq!((s.lhs, s.rhs, s.ok), (4, 4, true));

        let simplex = SimplicialComplex::simplex(4).unwrap();
        for v in 1..=4 {
            let s = slice_check(&simplex, v).unwrap();
            assert_eq!((s.lhs, s.rhs, s.ok), (1, 1, true));
        }

        let s = slice_check(&three_points(), 1).unwrap();
        assert_eq!((s.lhs, s.rhs, s.ok), (6, 4, true));

        assert!(slice_check(&three_points(), 4).is_err());
    }

    #[test]
    fn trc_report_examples() {
        let r = check_trc(&four_cycle(), "four-cycle").unwrap();
        assert_eq!(r.trk_bound, 2);
        assert_eq!(r.hrk_zk, 4);
        assert_eq!(r.trc_bound, 4);
        assert!(r.flags.all_ok());
        assert!(r.theorem_tight);

        let r = check_trc(&three_points(), "three-points").unwrap();
        assert_eq!((r.trk_bound, r.hrk_zk), (2, 6));
        assert!(r.flags.all_ok());

        let two_points = SimplicialComplex::from_maximal_faces(2, &[vec![1], vec![2]]).unwrap();
        let r = check_trc(&two_points, "two-points").unwrap();
        assert_eq!((r.trk_bound, r.hrk_zk), (1, 2));
        assert!(r.flags.all_ok());
        assert!(r.theorem_tight);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_complexes(1).unwrap().len(), 1);
        assert_eq!(enumerate_complexes(2).unwrap().len(), 2);
        assert_eq!(enumerate_complexes(3).unwrap().len(), 9);
        assert!(enumerate_complexes(5).is_err());

        // No duplicates, and every complex uses all m vertices.
        let all = enumerate_complexes(4).unwrap();
        let set: std::collections::HashSet<Vec<VertexSet>> =
            all.iter().map(|k| k.maximal_faces().to_vec()).collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn random_complex_determinism_and_limits() {
        let a = random_complex(5, 0.3, 42).unwrap();
        let b = random_complex(5, 0.3, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(
            random_complex(5, 0.3, 1).unwrap(),
            random_complex(5, 0.3, 2).unwrap()
        );
        assert!(random_complex(0, 0.3, 1).is_err());
        assert!(random_complex(17, 0.3, 1).is_err());
        assert!(random_complex(5, 0.0, 1).is_err());
        assert!(random_complex(5, 1.0, 1).is_err());
    }

    #[test]
    fn random_complex_density_limits() {
        // Vanishing density: no candidate accepted, only disjoint points.
        let sparse = random_complex(3, 1e-9, 5).unwrap();
        assert_eq!(sparse, three_points());
        // Density near one: the full vertex set is accepted.
        let dense = random_complex(3, 1.0 - 1e-9, 5).unwrap();
        assert_eq!(dense, SimplicialComplex::simplex(3).unwrap());
    }

    #[test]
    fn small_corpus_run_is_all_ok_and_deterministic() {
        let params = CorpusParams {
            max_m: 3,
            random: vec![RandomBatch {
                count: 3,
                m: 4,
                density: 0.4,
                seed: 7,
            }],
        };
        let a = run_corpus(&params).unwrap();
        assert!(a.all_ok);
        assert_eq!(a.reports.len(), 1 + 2 + 9 + 3);
        assert_eq!(a.reports[0].id, "m1-e0000");
        let b = run_corpus(&params).unwrap();
        assert_eq!(a, b);
    }
}
