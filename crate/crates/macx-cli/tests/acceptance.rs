//! Acceptance suite: one test per criterion, exact assertions throughout.
//!
//! The corpus shared by several criteria (every complex on up to 4
//! vertices, plus 50 seeded random complexes each at m = 5 and m = 6) is
//! computed once; library-level checks read the resulting reports, while
//! the command line is exercised through the built binary.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use macx_core::complex::SimplicialComplex;
use macx_core::cubical::{betti_rzk, build_cells};
use macx_core::doubling::{double, doubling_permutation};
use macx_core::homology::{augmented_chain_complex, reduced_betti, BettiTable};
use macx_core::matrix::{rank_exact, IntMatrix};
use macx_core::verify::{enumerate_complexes, run_corpus, CorpusParams, CorpusReport, RandomBatch};

const DENSITY: f64 = 0.3;
const SEED: u64 = 42;

fn corpus_params() -> CorpusParams {
    CorpusParams {
        max_m: 4,
        random: vec![
            RandomBatch {
                count: 50,
                m: 5,
                density: DENSITY,
                seed: SEED,
            },
            RandomBatch {
                count: 50,
                m: 6,
                density: DENSITY,
                seed: SEED,
            },
        ],
    }
}

/// The full corpus verification, run once and shared.
fn corpus_report() -> &'static CorpusReport {
    static REPORT: OnceLock<CorpusReport> = OnceLock::new();
    REPORT.get_or_init(|| run_corpus(&corpus_params()).expect("corpus verification runs"))
}

fn corpus_complexes() -> Vec<SimplicialComplex> {
    let params = corpus_params();
    let mut out: Vec<SimplicialComplex> = (1..=params.max_m)
        .flat_map(|m| enumerate_complexes(m).unwrap())
        .collect();
    for batch in &params.random {
        for i in 0..batch.count {
            out.push(
                macx_core::verify::random_complex(batch.m, batch.density, batch.seed + i as u64)
                    .unwrap(),
            );
        }
    }
    out
}

fn macx(args: &[&str]) -> (bool, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_macx"))
        .args(args)
        .output()
        .expect("macx runs");
    (
        output.status.success(),
        String::from_utf8_lossy(&output.stdout).into_owned(),
    )
}

fn write_complex(path: &Path, doc: &str) {
    fs::write(path, doc).unwrap();
}

fn two_points() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(2, &[vec![1], vec![2]]).unwrap()
}

fn four_cycle() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
        .unwrap()
}

/// Criterion 1: the cubical model of the doubled two-point complex and the
/// Hochster route for the two-point complex both give the Betti table of
/// the three-sphere, through the command line, in under a second.
#[test]
fn criterion_1_three_sphere_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let dd2 = dir.path().join("dd2.json");
    let dd4 = dir.path().join("dd4.json");
    write_complex(&dd2, r#"{"m":2,"maximal_faces":[[1],[2]]}"#);

    let started = Instant::now();
    let (ok, _) = macx(&[
        "double",
        "--in",
        dd2.to_str().unwrap(),
        "--out",
        dd4.to_str().unwrap(),
    ]);
    assert!(ok);
    let doubled: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&dd4).unwrap()).unwrap();
    assert_eq!(
        doubled,
        serde_json::json!({"m": 4, "maximal_faces": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]})
    );

    let (ok, rzk_out) = macx(&["betti", "--model", "rzk", "--in", dd4.to_str().unwrap()]);
    assert!(ok);
    let rzk: serde_json::Value = serde_json::from_str(&rzk_out).unwrap();
    assert_eq!(rzk["model"], "rzk");
    assert_eq!(rzk["betti"], serde_json::json!({"0": 1, "3": 1}));
    assert_eq!(rzk["hrk"], 2);

    let (ok, zk_out) = macx(&["betti", "--model", "zk", "--in", dd2.to_str().unwrap()]);
    assert!(ok);
    let zk: serde_json::Value = serde_json::from_str(&zk_out).unwrap();
    assert_eq!(zk["model"], "zk");
    assert_eq!(zk["betti"], rzk["betti"]);
    assert_eq!(zk["hrk"], 2);

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "pipeline took {elapsed:?}, expected < 1 s"
    );
}

/// Criterion 2: the graded Hochster table of K equals the cubical Betti
/// table of the double, in every degree, across the whole corpus.
#[test]
fn criterion_2_oracle_equivalence_across_corpus() {
    let report = corpus_report();
    assert_eq!(report.reports.len(), 126 + 50 + 50);
    for r in &report.reports {
        assert!(
            r.flags.cross_check_ok,
            "{}: hochster table differs from cubical model of the double",
            r.id
        );
    }
    // Degreewise equality implies equal totals; recompute a few named
    // instances end to end anyway.
    for k in [
        two_points(),
        four_cycle(),
        SimplicialComplex::simplex(3).unwrap(),
    ] {
        let via_double = betti_rzk(&double(&k).unwrap()).unwrap();
        let table = macx_core::hochster::hochster_table(&k).unwrap();
        assert_eq!(table.graded(), &via_double);
        assert_eq!(table.hrk(), via_double.hrk());
    }
}

/// Criterion 3: `hrk(RZ_K) >= 2^(m - mdim K - 1)` over the corpus, with
/// the tight cases present and flagged tight.
#[test]
fn criterion_3_theorem_inequality_with_tight_cases() {
    let report = corpus_report();
    for r in &report.reports {
        assert!(
            r.flags.theorem_ok,
            "{}: hrk_rzk {} < bound {}",
            r.id, r.hrk_rzk, r.theorem_bound
        );
        assert_eq!(r.theorem_tight, r.hrk_rzk as u64 == r.theorem_bound);
    }

    // Locate the named tight cases by value in the exhaustive part.
    let mut expectations: Vec<(SimplicialComplex, usize, u64)> =
        vec![(two_points(), 2, 2), (four_cycle(), 4, 4)];
    for m in 1..=4 {
        expectations.push((SimplicialComplex::simplex(m).unwrap(), 1, 1));
    }
    for (k, hrk, bound) in expectations {
        let m = k.m();
        let index = enumerate_complexes(m)
            .unwrap()
            .iter()
            .position(|c| *c == k)
            .expect("complex appears in the enumeration");
        let id = format!("m{m}-e{index:04}");
        let r = report
            .reports
            .iter()
            .find(|r| r.id == id)
            .expect("report present");
        assert_eq!(r.hrk_rzk, hrk, "{id}");
        assert_eq!(r.theorem_bound, bound, "{id}");
        assert!(r.theorem_tight, "{id} must be flagged tight");
    }
}

/// Criterion 4: doubling dimension identities on the full corpus, and
/// join compatibility exhaustively for m1 + m2 <= 5.
#[test]
fn criterion_4_doubling_identities() {
    for k in corpus_complexes() {
        let l = double(&k).unwrap();
        let m = k.m() as i32;
        assert_eq!(l.dim(), m + k.dim(), "dim identity for {k:?}");
        assert_eq!(l.mdim(), m + k.mdim(), "mdim identity for {k:?}");
    }
    for m1 in 1..=4u32 {
        for m2 in 1..=(5 - m1) {
            for k1 in enumerate_complexes(m1).unwrap() {
                for k2 in enumerate_complexes(m2).unwrap() {
                    let lhs = double(&k1)
                        .unwrap()
                        .join(&double(&k2).unwrap())
                        .unwrap()
                        .relabel(&doubling_permutation(m1, m2).unwrap())
                        .unwrap();
                    assert_eq!(lhs, double(&k1.join(&k2).unwrap()).unwrap());
                }
            }
        }
    }
}

/// Criterion 5: `hrk(Z_K) >= 2^(m - 1 - dim K)` over the corpus, and the
/// corpus command exits 0.
#[test]
fn criterion_5_toral_rank_chain() {
    let report = corpus_report();
    for r in &report.reports {
        assert!(
            r.flags.trc_ok,
            "{}: hrk_zk {} < 2^{}",
            r.id, r.hrk_zk, r.trk_bound
        );
        assert!(r.theorem_bound >= r.trc_bound, "{}", r.id);
    }
    assert!(report.all_ok);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus.json");
    let (ok, stdout) = macx(&[
        "corpus",
        "--max-m",
        "4",
        "--random",
        "50",
        "--m",
        "5",
        "--density",
        "0.3",
        "--seed",
        "42",
        "--report",
        out.to_str().unwrap(),
    ]);
    assert!(ok, "corpus command must exit 0; output:\n{stdout}");
    let written: CorpusReport = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(written.all_ok);
    assert_eq!(written.reports.len(), 126 + 50);
}

/// Criterion 6: the slice inequality holds at every vertex of every
/// corpus complex.
#[test]
fn criterion_6_slice_inequality_everywhere() {
    let report = corpus_report();
    for r in &report.reports {
        assert!(r.flags.slice_ok, "{}: some vertex slice fails", r.id);
    }
    // The flag aggregates all vertices; spot-check the tight instance.
    let s = macx_core::verify::slice_check(&four_cycle(), 1).unwrap();
    assert_eq!((s.lhs, s.rhs, s.ok), (4, 4, true));
}

/// Criterion 7: boundary-of-boundary vanishes on every constructed chain
/// complex, the 6-vertex projective plane has no rational homology, and
/// the exact rank agrees with a naive rational elimination oracle on 200
/// random matrices.
#[test]
fn criterion_7_engine_soundness() {
    // Every chain complex built anywhere goes through betti(), which
    // verifies the composition first; here the check also runs explicitly
    // on the simplicial and cubical complexes of the exhaustive corpus
    // and the cubical complexes of their doubles.
    for m in 1..=4 {
        for k in enumerate_complexes(m).unwrap() {
            augmented_chain_complex(&k)
                .verify_boundary_condition()
                .unwrap();
            build_cells(&k)
                .unwrap()
                .chain_complex()
                .verify_boundary_condition()
                .unwrap();
            build_cells(&double(&k).unwrap())
                .unwrap()
                .chain_complex()
                .verify_boundary_condition()
                .unwrap();
        }
    }

    // Minimal triangulation of the projective plane: 10 triangles over
    // all 15 edges; rationally invisible.
    let projective_plane = SimplicialComplex::from_maximal_faces(
        6,
        &[
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 5, 6],
            vec![1, 2, 6],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![2, 4, 5],
            vec![3, 5, 6],
            vec![2, 4, 6],
        ],
    )
    .unwrap();
    assert_eq!(reduced_betti(&projective_plane), BettiTable::new());

    // 200 seeded random {-1,0,1} matrices up to 30x30.
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    for round in 0..200 {
        let rows = rng.gen_range(1..=30);
        let cols = rng.gen_range(1..=30);
        let mut entries = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                let v = rng.gen_range(-1i64..=1);
                if v != 0 {
                    entries.push((i, j, v));
                }
            }
        }
        let m = IntMatrix::from_entries(rows, cols, entries);
        assert_eq!(
            rank_exact(&m),
            rational_rank_oracle(&m),
            "round {round}: {rows}x{cols}"
        );
    }
}

/// Criterion 8: repeating the random corpus legs with the same seeds
/// yields byte-identical report files.
#[test]
fn criterion_8_deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    for m in ["5", "6"] {
        let mut bytes: Vec<Vec<u8>> = Vec::new();
        for round in 0..2 {
            let out = dir.path().join(format!("corpus-m{m}-{round}.json"));
            let (ok, stdout) = macx(&[
                "corpus",
                "--max-m",
                "1",
                "--random",
                "50",
                "--m",
                m,
                "--density",
                "0.3",
                "--seed",
                "42",
                "--report",
                out.to_str().unwrap(),
            ]);
            assert!(ok, "corpus m={m} round {round} failed:\n{stdout}");
            bytes.push(fs::read(&out).unwrap());
        }
        assert_eq!(
            bytes[0], bytes[1],
            "reports for the m={m} leg differ between runs"
        );
        assert!(!bytes[0].is_empty());
    }
}

/// Dense rational elimination, independent of the crate's eliminators.
#[allow(clippy::needless_range_loop)]
fn rational_rank_oracle(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m.cols()]; m.rows()];
    for j in 0..m.cols() {
        for &(i, v) in m.column(j) {
            a[i as usize][j] = BigRational::from(BigInt::from(v));
        }
    }
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(pivot_row) = (rank..m.rows()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let inv = a[rank][col].recip();
        for j in col..m.cols() {
            let scaled = &a[rank][j] * &inv;
            a[rank][j] = scaled;
        }
        for i in 0..m.rows() {
            if i != rank && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for j in col..m.cols() {
                    let delta = &factor * &a[rank][j];
                    a[i][j] = &a[i][j] - delta;
                }
            }
        }
        rank += 1;
        if rank == m.rows() {
            break;
        }
    }
    rank
}
