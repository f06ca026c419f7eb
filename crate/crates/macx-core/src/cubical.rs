//! The real moment-angle complex `RZ_K = (I¹, S⁰)^K` as a cubical cell
//! complex inside `[-1, 1]^m`.
//!
//! Each cell is a pair `(ω, ε)`: a face `ω` of `K` marking the coordinates
//! free to range over `[-1, 1]`, and a sign `ε ∈ {-1, +1}` pinned on every
//! other coordinate. The dimension of the cell is `|ω|`, so the complex has
//! `Σ_{ω ∈ K} 2^{m - |ω|}` cells. Boundaries follow the product rule for
//! intervals: `∂[-1, 1] = {+1} - {-1}`.

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{BettiTable, ChainComplex};
use crate::matrix::IntMatrix;
use crate::vertex_set::VertexSet;

/// Default limit on the number of cells materialized for one complex.
pub const DEFAULT_CELL_BUDGET: u64 = 1 << 24;

/// One cubical cell of `RZ_K`.
///
/// `free` is the set of interval coordinates (a face of `K`); `signs`
/// records the pinned coordinates set to `+1` and is always disjoint from
/// `free` — pinned coordinates absent from `signs` sit at `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubicalCell {
    pub free: VertexSet,
    pub signs: VertexSet,
}

impl CubicalCell {
    pub fn dimension(&self) -> u32 {
        self.free.card()
    }

    /// Signed boundary: for each free coordinate `i` (ascending), the cell
    /// pinned at `i = +1` minus the cell pinned at `i = -1`, weighted by
    /// `(-1)^{#(j ∈ free, j < i)}`.
    pub fn boundary(&self) -> Vec<(CubicalCell, i64)> {
        let mut out = Vec::with_capacity(2 * self.free.card() as usize);
        for (pos, i) in self.free.iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let free = self.free.remove(i);
            out.push((
                CubicalCell {
                    free,
                    signs: self.signs.insert(i),
                },
                sign,
            ));
            out.push((
                CubicalCell {
                    free,
                    signs: self.signs,
                },
                -sign,
            ));
        }
        out
    }
}

/// The cubical cell complex of `RZ_K`, with its chain complex.
#[derive(Debug, Clone)]
pub struct CubicalComplex {
    m: u32,
    cells: Vec<Vec<CubicalCell>>,
    chain: ChainComplex,
}

/// Number of cells `build_cells` would materialize:
/// `Σ_{ω ∈ K} 2^{m - |ω|}`, saturating at `u64::MAX`.
///
/// Materializes the face list; use [`build_cells_with_budget`] when the
/// input is untrusted, its guard walks faces with early abort instead.
pub fn cell_count(k: &SimplicialComplex) -> u64 {
    let faces = k.faces();
    let mut total: u128 = 0;
    for p in -1..=faces.max_dim() {
        let card = (p + 1) as u32;
        total += (faces.of_dim(p).len() as u128) << (k.m() - card);
    }
    total.min(u64::MAX as u128) as u64
}

/// Streaming cell count: `Ok(exact)` when within `budget`, otherwise
/// `Err(running count)` at the moment the budget was exceeded, keeping
/// memory proportional to the budget rather than to the input.
fn cell_count_within(k: &SimplicialComplex, budget: u64) -> Result<u64, u64> {
    let mut seen = std::collections::HashSet::new();
    let mut work: Vec<VertexSet> = Vec::new();
    for &f in k.maximal_faces() {
        if seen.insert(f) {
            work.push(f);
        }
    }
    let mut total: u64 = 0;
    while let Some(face) = work.pop() {
        total = total.saturating_add(1u64 << (k.m() - face.card()));
        if total > budget {
            return Err(total);
        }
        for v in face.iter() {
            let sub = face.remove(v);
            if seen.insert(sub) {
                work.push(sub);
            }
        }
    }
    Ok(total)
}

/// Builds every cell of `RZ_K` grouped by dimension, in deterministic
/// order: faces of `K` in face-list order, sign patterns in binary order
/// over the pinned coordinates (ascending).
pub fn build_cells(k: &SimplicialComplex) -> Result<CubicalComplex> {
    build_cells_with_budget(k, DEFAULT_CELL_BUDGET)
}

pub fn build_cells_with_budget(k: &SimplicialComplex, budget: u64) -> Result<CubicalComplex> {
    if let Err(required) = cell_count_within(k, budget) {
        return Err(Error::CellBudgetExceeded { required, budget });
    }
    let m = k.m();
    let faces = k.faces();
    let top = faces.max_dim();
    // Cell dimension p comes from faces of cardinality p, i.e. face
    // dimension p - 1; cell dimensions run 0..=top+1.
    let cell_top = (top + 1) as usize;
    let mut cells: Vec<Vec<CubicalCell>> = vec![Vec::new(); cell_top + 1];
    for fp in -1..=top {
        for &face in faces.of_dim(fp) {
            let pinned: Vec<u32> = face.complement_in(m).vertices();
            for pattern in 0..(1u64 << pinned.len()) {
                let mut signs = VertexSet::EMPTY;
                for (pos, &i) in pinned.iter().enumerate() {
                    if pattern >> pos & 1 == 1 {
                        signs = signs.insert(i);
                    }
                }
                cells[face.card() as usize].push(CubicalCell { free: face, signs });
            }
        }
    }

    let mut index: Vec<HashMap<CubicalCell, u32>> = Vec::with_capacity(cells.len());
    for group in &cells {
        let mut map = HashMap::with_capacity(group.len());
        for (i, &cell) in group.iter().enumerate() {
            map.insert(cell, i as u32);
        }
        index.push(map);
    }

    // The stored chain complex is augmented: a rank-one degree -1 group
    // under the vertices. That leaves Betti numbers unchanged except for
    // the +1 in degree 0 (the space is never empty), and it lets the
    // elimination start its singleton cascade at the base vertex instead
    // of fighting through the middle dimensions.
    let mut sizes: Vec<usize> = Vec::with_capacity(cells.len() + 1);
    sizes.push(1);
    sizes.extend(cells.iter().map(Vec::len));
    let mut boundaries = Vec::with_capacity(cell_top + 1);
    boundaries.push(IntMatrix::from_entries(
        1,
        cells[0].len(),
        (0..cells[0].len()).map(|j| (0, j, 1)),
    ));
    for p in 1..=cell_top {
        let mut entries = Vec::with_capacity(cells[p].len() * 2 * p);
        for (j, cell) in cells[p].iter().enumerate() {
            for (face_cell, sign) in cell.boundary() {
                let i = index[p - 1][&face_cell];
                entries.push((i as usize, j, sign));
            }
        }
        boundaries.push(IntMatrix::from_entries(
            cells[p - 1].len(),
            cells[p].len(),
            entries,
        ));
    }

    Ok(CubicalComplex {
        m,
        cells,
        chain: ChainComplex::new(-1, sizes, boundaries),
    })
}

impl CubicalComplex {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn cells_of_dim(&self, p: usize) -> &[CubicalCell] {
        self.cells.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn chain_complex(&self) -> &ChainComplex {
        &self.chain
    }

    /// Betti numbers of `RZ_K` over the rationals (unreduced).
    pub fn betti(&self) -> BettiTable {
        let reduced = self
            .chain
            .betti()
            .expect("cubical boundaries compose to zero");
        debug_assert_eq!(reduced.get(-1), 0, "RZ_K is never empty");
        let mut table = BettiTable::from_pairs(reduced.iter().filter(|&(p, _)| p >= 0));
        table.add(0, 1);
        table
    }
}

/// Betti numbers of `RZ_K` via the cubical chain complex.
pub fn betti_rzk(k: &SimplicialComplex) -> Result<BettiTable> {
    Ok(build_cells(k)?.betti())
}

pub fn betti_rzk_with_budget(k: &SimplicialComplex, budget: u64) -> Result<BettiTable> {
    Ok(build_cells_with_budget(k, budget)?.betti())
}

/// Total rational cohomology rank of `RZ_K`.
pub fn hrk_rzk(k: &SimplicialComplex) -> Result<usize> {
    Ok(betti_rzk(k)?.hrk())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(vertices: &[u32]) -> VertexSet {
        VertexSet::from_vertices(vertices).unwrap()
    }

    #[test]
    fn point_complex_cells() {
        let k = SimplicialComplex::simplex(1).unwrap();
        let cx = build_cells(&k).unwrap();
        assert_eq!(cx.cells_of_dim(0).len(), 2);
        assert_eq!(cx.cells_of_dim(1).len(), 1);
        assert_eq!(cx.cell_count(), 3);
        // ∂ of the interval: (+1) - (-1).
        let interval = cx.cells_of_dim(1)[0];
        let boundary = interval.boundary();
        assert_eq!(
            boundary,
            vec![
                (
                    CubicalCell {
                        free: VertexSet::EMPTY,
                        signs: vs(&[1])
                    },
                    1
                ),
                (
                    CubicalCell {
                        free: VertexSet::EMPTY,
                        signs: VertexSet::EMPTY
                    },
                    -1
                ),
            ]
        );
    }

    #[test]
    fn hollow_and_solid_square() {
        let two_points = SimplicialComplex::from_maximal_faces(2, &[vec![1], vec![2]]).unwrap();
        let cx = build_cells(&two_points).unwrap();
        assert_eq!((cx.cells_of_dim(0).len(), cx.cells_of_dim(1).len()), (4, 4));
        assert_eq!(cx.betti(), BettiTable::from_pairs([(0, 1), (1, 1)]));

        let edge = SimplicialComplex::simplex(2).unwrap();
        let cx = build_cells(&edge).unwrap();
        assert_eq!(cx.cell_count(), 9);
        assert_eq!(cx.betti(), BettiTable::from_pairs([(0, 1)]));
    }

    #[test]
    fn square_cell_boundary_signs() {
        let square = CubicalCell {
            free: vs(&[1, 2]),
            signs: VertexSet::EMPTY,
        };
        let signs: Vec<i64> = square.boundary().iter().map(|&(_, s)| s).collect();
        assert_eq!(signs, vec![1, -1, -1, 1]);
    }

    #[test]
    fn empty_complex_is_a_point() {
        let cx = build_cells(&SimplicialComplex::empty()).unwrap();
        assert_eq!(cx.cell_count(), 1);
        assert_eq!(cx.betti(), BettiTable::from_pairs([(0, 1)]));
    }

    #[test]
    fn sphere_from_doubled_two_points() {
        // L(∂Δ²) = ∂Δ⁴, whose real moment-angle complex is ∂I⁴ = S³.
        let two_points = SimplicialComplex::from_maximal_faces(2, &[vec![1], vec![2]]).unwrap();
        let l = crate::doubling::double(&two_points).unwrap();
        assert_eq!(
            betti_rzk(&l).unwrap(),
            BettiTable::from_pairs([(0, 1), (3, 1)])
        );
    }

    #[test]
    fn four_cycle_gives_torus() {
        let k = SimplicialComplex::from_maximal_faces(
            4,
            &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]],
        )
        .unwrap();
        assert_eq!(
            betti_rzk(&k).unwrap(),
            BettiTable::from_pairs([(0, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn hrk_examples() {
        for m in 1..=5 {
            let simplex = SimplicialComplex::simplex(m).unwrap();
            assert_eq!(hrk_rzk(&simplex).unwrap(), 1, "cube I^{m} is contractible");
        }
        let three_points =
            SimplicialComplex::from_maximal_faces(3, &[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(hrk_rzk(&three_points).unwrap(), 6);

        // ∂Δ^m: all proper subsets of [m]; RZ is the boundary of the m-cube.
        let boundary3 =
            SimplicialComplex::from_maximal_faces(3, &[vec![1, 2], vec![1, 3], vec![2, 3]])
                .unwrap();
        assert_eq!(
            betti_rzk(&boundary3).unwrap(),
            BettiTable::from_pairs([(0, 1), (2, 1)])
        );
        let boundary4 = SimplicialComplex::from_maximal_faces(
            4,
            &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
        )
        .unwrap();
        assert_eq!(
            betti_rzk(&boundary4).unwrap(),
            BettiTable::from_pairs([(0, 1), (3, 1)])
        );
    }

    #[test]
    fn cell_budget_is_enforced() {
        let k = SimplicialComplex::simplex(3).unwrap();
        assert_eq!(cell_count(&k), 27);
        let err = build_cells_with_budget(&k, 26).map(|_| ()).unwrap_err();
        assert_eq!(
            err,
            Error::CellBudgetExceeded {
                required: 27,
                budget: 26
            }
        );
    }

    #[test]
    fn boundary_condition_holds() {
        let k = SimplicialComplex::from_maximal_faces(
            4,
            &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]],
        )
        .unwrap();
        let cx = build_cells(&k).unwrap();
        cx.chain_complex().verify_boundary_condition().unwrap();
        // Cell count identity: Σ_p c_p = Σ_{ω∈K} 2^{m-|ω|}.
        assert_eq!(cx.cell_count() as u64, cell_count(&k));
    }
}
