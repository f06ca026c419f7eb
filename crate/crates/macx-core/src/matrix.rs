//! Exact integer matrices and rank computation over the rationals.
//!
//! Ranks are computed by fraction-free elimination: small matrices go
//! through dense Bareiss elimination with full pivoting, large ones through
//! a sparse column-major elimination that prefers singleton rows/columns
//! and unit pivots (those steps cause no coefficient growth and little or
//! no fill). Arithmetic runs on machine integers first and the whole
//! computation is retried with arbitrary-precision integers if anything
//! overflows, so results are exact in all cases. No floating point is used
//! anywhere.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix, column-major; each column is sorted by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        assert!(rows <= u32::MAX as usize);
        IntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for j in 0..n {
            m.columns[j].push((j as u32, 1));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicate
    /// positions are summed, zeros dropped.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        let mut triplets: Vec<(usize, usize, i64)> = entries.into_iter().collect();
        triplets.sort_by_key(|&(r, c, _)| (c, r));
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) outside {rows}x{cols}"
            );
            let col = &mut m.columns[c];
            match col.last_mut() {
                Some(last) if last.0 == r as u32 => last.1 += v,
                _ => col.push((r as u32, v)),
            }
        }
        for col in &mut m.columns {
            col.retain(|&(_, v)| v != 0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.columns[j]
            .binary_search_by_key(&(i as u32), |&(r, _)| r)
            .map(|pos| self.columns[j][pos].1)
            .unwrap_or(0)
    }

    /// Whether `self * right` is the zero matrix.
    pub fn compose_is_zero(&self, right: &IntMatrix) -> bool {
        assert_eq!(self.cols, right.rows, "composition shape mismatch");
        let mut scratch: Vec<i128> = vec![0; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        for y in 0..right.cols {
            let mut overflowed = false;
            'accumulate: for &(x, v) in &right.columns[y] {
                for &(i, w) in &self.columns[x as usize] {
                    if scratch[i as usize] == 0 {
                        touched.push(i);
                    }
                    // A single i64 product always fits i128; the running
                    // sums almost always do, with an exact retry if not.
                    match scratch[i as usize].checked_add(v as i128 * w as i128) {
                        Some(sum) => scratch[i as usize] = sum,
                        None => {
                            overflowed = true;
                            break 'accumulate;
                        }
                    }
                }
            }
            let mut ok = true;
            for &i in &touched {
                if !overflowed && scratch[i as usize] != 0 {
                    ok = false;
                }
                scratch[i as usize] = 0;
            }
            touched.clear();
            if overflowed {
                ok = self.column_product_is_zero_bigint(right, y);
            }
            if !ok {
                return false;
            }
        }
        true
    }

    fn column_product_is_zero_bigint(&self, right: &IntMatrix, y: usize) -> bool {
        let mut acc: std::collections::HashMap<u32, BigInt> = std::collections::HashMap::new();
        for &(x, v) in &right.columns[y] {
            for &(i, w) in &self.columns[x as usize] {
                *acc.entry(i).or_default() += BigInt::from(v) * BigInt::from(w);
            }
        }
        acc.values().all(Zero::is_zero)
    }
}

/// Rank of the matrix over the rationals, computed exactly.
pub fn rank_exact(m: &IntMatrix) -> usize {
    if m.rows < 64 && m.cols < 64 {
        match dense_rank::<i128>(m) {
            Ok(rank) => rank,
            Err(Overflow) => dense_rank::<BigInt>(m).expect("bigint arithmetic cannot overflow"),
        }
    } else {
        match sparse_rank::<i64>(m) {
            Ok(rank) => rank,
            Err(Overflow) => sparse_rank::<BigInt>(m).expect("bigint arithmetic cannot overflow"),
        }
    }
}

/// Ranks of all boundary matrices of one chain complex, eliminated jointly.
///
/// Callers must guarantee `boundaries[p] * boundaries[p+1] = 0`. Under that
/// identity a pivot at `(r, c)` in `D_p` makes row `c` of `D_{p+1}` a
/// rational combination of the other active rows and column `r` of
/// `D_{p-1}` a combination of the other active columns, so both can be
/// deleted without changing any rank. Those deletions are what lets the
/// singleton cascade chew through large cubical complexes; they are only
/// applied while the relevant composition identity is intact, which every
/// unit-pivot step preserves. A matrix that runs out of unit pivots falls
/// back to scaled updates and stops exchanging deletions with its
/// neighbours.
pub(crate) fn graded_ranks(boundaries: &[IntMatrix]) -> Vec<usize> {
    match graded_ranks_impl::<i64>(boundaries) {
        Ok(ranks) => ranks,
        Err(Overflow) => {
            graded_ranks_impl::<BigInt>(boundaries).expect("bigint arithmetic cannot overflow")
        }
    }
}

/// Marker for machine-integer overflow; triggers the arbitrary-precision
/// retry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

/// Integer arithmetic used by the eliminators. `checked_*` return `None`
/// on overflow; the `BigInt` implementation never does.
pub(crate) trait Scalar: Clone + PartialEq + std::fmt::Debug + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    /// Positive gcd; `None` only on machine overflow of |x|.
    fn gcd(&self, other: &Self) -> Option<Self>;
    /// Exact division; the caller guarantees divisibility.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn abs_cmp(&self, other: &Self) -> Ordering;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        let mut a = self.checked_abs()?;
        let mut b = other.checked_abs()?;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Some(a)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self % other, 0);
        self.checked_div(*other)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        let mut a = self.checked_abs()?;
        let mut b = other.checked_abs()?;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Some(a)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self % other, 0);
        self.checked_div(*other)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        Some(num_integer::Integer::gcd(self, other))
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert!(num_integer::Integer::is_multiple_of(self, other));
        Some(self / other)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
}

// ---------------------------------------------------------------------------
// Dense fraction-free elimination (Bareiss), for small matrices.
// ---------------------------------------------------------------------------

fn dense_rank<T: Scalar>(m: &IntMatrix) -> Result<usize, Overflow> {
    let (nr, nc) = (m.rows, m.cols);
    let mut a: Vec<Vec<T>> = vec![vec![T::from_i64(0); nc]; nr];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            a[i as usize][j] = T::from_i64(v);
        }
    }
    let mut prev = T::from_i64(1);
    let mut k = 0;
    while k < nr && k < nc {
        // Smallest nonzero magnitude in the remaining block keeps the
        // fraction-free growth down.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..nr {
            for j in k..nc {
                if !a[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| a[i][j].abs_cmp(&a[pi][pj]) == Ordering::Less)
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        if pj != k {
            for row in &mut a {
                row.swap(k, pj);
            }
        }
        let pivot_val = a[k][k].clone();
        for i in k + 1..nr {
            for j in k + 1..nc {
                let num = pivot_val
                    .checked_mul(&a[i][j])
                    .ok_or(Overflow)?
                    .checked_sub(&a[i][k].checked_mul(&a[k][j]).ok_or(Overflow)?)
                    .ok_or(Overflow)?;
                a[i][j] = num.div_exact(&prev).ok_or(Overflow)?;
            }
            a[i][k] = T::from_i64(0);
        }
        prev = pivot_val;
        k += 1;
    }
    Ok(k)
}

// ---------------------------------------------------------------------------
// Sparse elimination.
// ---------------------------------------------------------------------------

/// Elimination state of one sparse matrix.
///
/// Entries live only at alive rows inside `Some` columns. `row_count`
/// counts the alive columns containing each row exactly; `rows_index` is a
/// stale-tolerant superset of those columns, revalidated on use.
struct SparseElim<T> {
    cols: Vec<Option<Vec<(u32, T)>>>,
    row_alive: Vec<bool>,
    row_count: Vec<u32>,
    rows_index: Vec<Vec<u32>>,
    rank: usize,
    live_entries: usize,
    scaling_allowed: bool,
    free_rows: Vec<u32>,
    free_cols: Vec<u32>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
}

impl<T: Scalar> SparseElim<T> {
    fn new(m: &IntMatrix, scaling_allowed: bool) -> SparseElim<T> {
        let mut row_count = vec![0u32; m.rows];
        let mut rows_index: Vec<Vec<u32>> = vec![Vec::new(); m.rows];
        let mut live_entries = 0;
        let mut heap = BinaryHeap::new();
        let cols: Vec<Option<Vec<(u32, T)>>> = m
            .columns
            .iter()
            .enumerate()
            .map(|(j, col)| {
                for &(r, _) in col {
                    row_count[r as usize] += 1;
                    rows_index[r as usize].push(j as u32);
                }
                live_entries += col.len();
                if !col.is_empty() {
                    heap.push(Reverse((col.len() as u32, j as u32)));
                }
                Some(col.iter().map(|&(r, v)| (r, T::from_i64(v))).collect())
            })
            .collect();
        let free_rows = (0..m.rows as u32)
            .filter(|&r| row_count[r as usize] == 1)
            .collect();
        let free_cols = (0..m.cols as u32)
            .filter(|&c| m.columns[c as usize].len() == 1)
            .collect();
        SparseElim {
            cols,
            row_alive: vec![true; m.rows],
            row_count,
            rows_index,
            rank: 0,
            live_entries,
            scaling_allowed,
            free_rows,
            free_cols,
            heap,
        }
    }

    fn col_len(&self, c: u32) -> Option<usize> {
        self.cols[c as usize].as_ref().map(Vec::len)
    }

    /// Alive columns currently containing row `r`, deduplicated and sorted.
    fn cols_containing_row(&mut self, r: u32) -> Vec<u32> {
        let mut candidates = std::mem::take(&mut self.rows_index[r as usize]);
        candidates.sort_unstable();
        candidates.dedup();
        candidates.retain(|&j| {
            self.cols[j as usize]
                .as_ref()
                .map(|col| col.binary_search_by_key(&r, |&(i, _)| i).is_ok())
                .unwrap_or(false)
        });
        self.rows_index[r as usize] = candidates.clone();
        candidates
    }

    /// Next singleton-column or singleton-row pivot, if any.
    fn pop_free_pivot(&mut self) -> Option<(u32, u32)> {
        while let Some(c) = self.free_cols.pop() {
            if let Some(col) = &self.cols[c as usize] {
                if col.len() == 1 {
                    return Some((col[0].0, c));
                }
            }
        }
        while let Some(r) = self.free_rows.pop() {
            if self.row_alive[r as usize] && self.row_count[r as usize] == 1 {
                let cols = self.cols_containing_row(r);
                debug_assert_eq!(cols.len(), 1);
                return Some((r, cols[0]));
            }
        }
        None
    }

    /// Best entry of a column: units first, then sparsest row.
    fn best_entry_of(&self, c: u32) -> (u32, bool) {
        let col = self.cols[c as usize].as_ref().unwrap();
        let mut chosen: Option<(u32, bool)> = None;
        for (r, v) in col {
            let better = match chosen {
                None => true,
                Some((cr, cu)) => {
                    (!cu && v.is_unit())
                        || (cu == v.is_unit()
                            && self.row_count[*r as usize] < self.row_count[cr as usize])
                }
            };
            if better {
                chosen = Some((*r, v.is_unit()));
            }
        }
        let (row, unit) = chosen.expect("column is nonempty");
        (row, unit)
    }

    /// Picks a pivot from the shortest columns, preferring unit entries
    /// on sparse rows; `needs_scaling` signals that no unit entry is left
    /// anywhere in the matrix.
    fn choose_general_pivot(&mut self) -> Option<(u32, u32, bool)> {
        let mut inspected: Vec<(u32, u32)> = Vec::new();
        // (no unit, col len, row count, col, row)
        let mut best: Option<(bool, u32, u32, u32, u32)> = None;
        while inspected.len() < 32 {
            let Some(Reverse((len, c))) = self.heap.pop() else {
                break;
            };
            match self.col_len(c) {
                Some(actual) if actual as u32 == len && actual > 0 => {
                    inspected.push((len, c));
                    let (row, unit) = self.best_entry_of(c);
                    let key = (!unit, len, self.row_count[row as usize], c, row);
                    if best.map(|b| key < b).unwrap_or(true) {
                        best = Some(key);
                    }
                    if unit && len <= 2 {
                        break; // cannot do better
                    }
                }
                Some(actual) if actual > 0 => self.heap.push(Reverse((actual as u32, c))),
                _ => {}
            }
        }
        for &(len, c) in &inspected {
            self.heap.push(Reverse((len, c)));
        }
        if best.is_none() {
            // Heap exhausted while entries remain: full scan.
            for j in 0..self.cols.len() {
                if let Some(len) = self.col_len(j as u32).filter(|&l| l > 0) {
                    let (row, unit) = self.best_entry_of(j as u32);
                    let key = (
                        !unit,
                        len as u32,
                        self.row_count[row as usize],
                        j as u32,
                        row,
                    );
                    if best.map(|b| key < b).unwrap_or(true) {
                        best = Some(key);
                    }
                }
            }
        }
        let (no_unit, _, _, col, row) = best?;
        if no_unit {
            // The sampled columns are all unit-free; a unit elsewhere still
            // avoids scaled arithmetic, so scan for one before giving up.
            if let Some(c) = self.scan_for_unit_col() {
                let (r, unit) = self.best_entry_of(c);
                debug_assert!(unit);
                return Some((r, c, false));
            }
        }
        Some((row, col, no_unit))
    }

    fn scan_for_unit_col(&self) -> Option<u32> {
        let mut best: Option<(usize, u32)> = None;
        for (j, col) in self.cols.iter().enumerate() {
            if let Some(col) = col {
                if col.iter().any(|(_, v)| v.is_unit())
                    && best.map(|(bl, _)| col.len() < bl).unwrap_or(true)
                {
                    best = Some((col.len(), j as u32));
                }
            }
        }
        best.map(|(_, j)| j)
    }

    /// Performs the elimination step for pivot `(r, c)` and retires the
    /// pivot row and column.
    ///
    /// `clean` reports that no uncompensated column scaling happened, so
    /// the chain-level composition identities survive. `reduced_cols`
    /// lists columns divided by their content together with the factor;
    /// scaling column `j` here by `1/g` keeps the downward composition
    /// zero as-is, and the caller restores the upward one by scaling row
    /// `j` of the next matrix by `g` (an exact integral basis change, so
    /// no rank moves anywhere).
    fn pivot(&mut self, r: u32, c: u32) -> Result<PivotEffects<T>, Overflow> {
        let pivot_col = self.cols[c as usize].take().expect("pivot column alive");
        let pivot_pos = pivot_col
            .binary_search_by_key(&r, |&(i, _)| i)
            .expect("pivot entry present");
        let pivot_val = pivot_col[pivot_pos].1.clone();
        let mut others = self.cols_containing_row(r);
        others.retain(|&j| j != c);

        let mut effects = PivotEffects {
            clean: true,
            reduced_cols: Vec::new(),
        };
        if others.is_empty() {
            // Row r met no other column: pure retirement, no arithmetic.
        } else if pivot_col.len() == 1 {
            // Singleton pivot column: subtracting it only clears the row-r
            // entries of the other columns.
            for j in others {
                let col = self.cols[j as usize].as_mut().unwrap();
                let pos = col.binary_search_by_key(&r, |&(i, _)| i).unwrap();
                col.remove(pos);
                self.live_entries -= 1;
                self.note_col_len(j);
            }
        } else {
            let unit = pivot_val.is_unit();
            if !unit {
                assert!(
                    self.scaling_allowed,
                    "non-unit pivot chosen while scaling is disallowed"
                );
                effects.clean = false;
            }
            for j in others {
                let old = self.cols[j as usize].take().unwrap();
                let coeff = old
                    .binary_search_by_key(&r, |&(i, _)| i)
                    .map(|pos| old[pos].1.clone())
                    .expect("listed column contains pivot row");
                let mut new = if unit {
                    // col_j - (a_rj * sign(pivot)) * col_c: integral, no scaling.
                    let k = if pivot_val.is_negative() {
                        coeff.checked_neg().ok_or(Overflow)?
                    } else {
                        coeff
                    };
                    combine_cols(&old, &pivot_col, None, &k)?
                } else {
                    let g = pivot_val.gcd(&coeff).ok_or(Overflow)?;
                    let alpha = pivot_val.div_exact(&g).ok_or(Overflow)?;
                    let beta = coeff.div_exact(&g).ok_or(Overflow)?;
                    combine_cols(&old, &pivot_col, Some(&alpha), &beta)?
                };
                if let Some(g) = content_reduce(&mut new)? {
                    effects.reduced_cols.push((j, g));
                }
                debug_assert!(new.binary_search_by_key(&r, |&(i, _)| i).is_err());
                self.diff_col_rows(j, &old, &new);
                self.cols[j as usize] = Some(new);
                self.note_col_len(j);
            }
        }

        // Retire the pivot column and row.
        for &(i, _) in &pivot_col {
            if i != r {
                self.row_count[i as usize] -= 1;
                self.note_row_count(i);
            }
            self.live_entries -= 1;
        }
        self.row_alive[r as usize] = false;
        self.row_count[r as usize] = 0;
        self.rows_index[r as usize] = Vec::new();
        self.rank += 1;
        Ok(effects)
    }

    /// Multiplies every entry of row `r` by `g` (compensation for a
    /// content reduction in the matrix below).
    fn scale_row(&mut self, r: u32, g: &T) -> Result<(), Overflow> {
        if r as usize >= self.row_alive.len() || !self.row_alive[r as usize] {
            return Ok(());
        }
        for j in self.cols_containing_row(r) {
            let col = self.cols[j as usize].as_mut().unwrap();
            let pos = col.binary_search_by_key(&r, |&(i, _)| i).unwrap();
            col[pos].1 = col[pos].1.checked_mul(g).ok_or(Overflow)?;
        }
        Ok(())
    }

    /// Row bookkeeping for a column that changed from `old` to `new`.
    fn diff_col_rows(&mut self, j: u32, old: &[(u32, T)], new: &[(u32, T)]) {
        let mut oi = 0;
        let mut ni = 0;
        while oi < old.len() || ni < new.len() {
            let or = old.get(oi).map(|e| e.0);
            let nr = new.get(ni).map(|e| e.0);
            match (or, nr) {
                (Some(o), Some(n)) if o == n => {
                    oi += 1;
                    ni += 1;
                }
                (Some(o), n) if n.map(|n| o < n).unwrap_or(true) => {
                    // entry vanished
                    self.row_count[o as usize] -= 1;
                    self.live_entries -= 1;
                    self.note_row_count(o);
                    oi += 1;
                }
                (_, Some(n)) => {
                    // fill-in
                    self.row_count[n as usize] += 1;
                    self.live_entries += 1;
                    self.rows_index[n as usize].push(j);
                    ni += 1;
                }
                _ => unreachable!(),
            }
        }
    }

    fn note_col_len(&mut self, j: u32) {
        if let Some(len) = self.col_len(j) {
            if len == 1 {
                self.free_cols.push(j);
            }
            if len > 0 {
                self.heap.push(Reverse((len as u32, j)));
            }
        }
    }

    fn note_row_count(&mut self, r: u32) {
        if self.row_alive[r as usize] && self.row_count[r as usize] == 1 {
            self.free_rows.push(r);
        }
    }

    /// Structural deletion of a row known to be spanned by the other alive
    /// rows; preserves rank without counting as a pivot.
    fn delete_row(&mut self, r: u32) {
        if r as usize >= self.row_alive.len() || !self.row_alive[r as usize] {
            return;
        }
        for j in self.cols_containing_row(r) {
            let col = self.cols[j as usize].as_mut().unwrap();
            let pos = col.binary_search_by_key(&r, |&(i, _)| i).unwrap();
            col.remove(pos);
            self.live_entries -= 1;
            self.note_col_len(j);
        }
        self.row_alive[r as usize] = false;
        self.row_count[r as usize] = 0;
        self.rows_index[r as usize] = Vec::new();
    }

    /// Structural deletion of a column known to be spanned by the other
    /// alive columns.
    fn delete_col(&mut self, c: u32) {
        if c as usize >= self.cols.len() {
            return;
        }
        let Some(col) = self.cols[c as usize].take() else {
            return;
        };
        for (i, _) in col {
            self.row_count[i as usize] -= 1;
            self.live_entries -= 1;
            self.note_row_count(i);
        }
    }
}

/// `alpha * a - beta * b` of two sorted sparse columns (`alpha = None`
/// means 1); zeros are dropped.
fn combine_cols<T: Scalar>(
    a: &[(u32, T)],
    b: &[(u32, T)],
    alpha: Option<&T>,
    beta: &T,
) -> Result<Vec<(u32, T)>, Overflow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let scale = |v: &T| -> Result<T, Overflow> {
        match alpha {
            None => Ok(v.clone()),
            Some(alpha) => alpha.checked_mul(v).ok_or(Overflow),
        }
    };
    let mut ai = 0;
    let mut bi = 0;
    while ai < a.len() || bi < b.len() {
        let ar = a.get(ai).map(|e| e.0);
        let br = b.get(bi).map(|e| e.0);
        match (ar, br) {
            (Some(x), Some(y)) if x == y => {
                let v = scale(&a[ai].1)?
                    .checked_sub(&beta.checked_mul(&b[bi].1).ok_or(Overflow)?)
                    .ok_or(Overflow)?;
                if !v.is_zero() {
                    out.push((x, v));
                }
                ai += 1;
                bi += 1;
            }
            (Some(x), y) if y.map(|y| x < y).unwrap_or(true) => {
                let v = scale(&a[ai].1)?;
                if !v.is_zero() {
                    out.push((x, v));
                }
                ai += 1;
            }
            (_, Some(y)) => {
                let v = T::from_i64(0)
                    .checked_sub(&beta.checked_mul(&b[bi].1).ok_or(Overflow)?)
                    .ok_or(Overflow)?;
                if !v.is_zero() {
                    out.push((y, v));
                }
                bi += 1;
            }
            _ => unreachable!(),
        }
    }
    Ok(out)
}

/// Result of one pivot step: whether compositions survived untouched,
/// and which columns were divided by their content (with the factor).
struct PivotEffects<T> {
    clean: bool,
    reduced_cols: Vec<(u32, T)>,
}

/// Divides a column by the gcd of its entries; returns the factor when it
/// is greater than one.
fn content_reduce<T: Scalar>(col: &mut [(u32, T)]) -> Result<Option<T>, Overflow> {
    let mut g: Option<T> = None;
    for (_, v) in col.iter() {
        g = Some(match g {
            None => v.gcd(&T::from_i64(0)).ok_or(Overflow)?,
            Some(g) => g.gcd(v).ok_or(Overflow)?,
        });
        if g.as_ref().map(|g| g.is_unit()).unwrap_or(false) {
            return Ok(None);
        }
    }
    match g {
        Some(g) if !g.is_unit() && !g.is_zero() => {
            for (_, v) in col.iter_mut() {
                *v = v.div_exact(&g).ok_or(Overflow)?;
            }
            Ok(Some(g))
        }
        _ => Ok(None),
    }
}

fn sparse_rank<T: Scalar>(m: &IntMatrix) -> Result<usize, Overflow> {
    // Standalone: column scaling is always sound, neighbours do not exist.
    let mut elim = SparseElim::<T>::new(m, true);
    loop {
        while let Some((r, c)) = elim.pop_free_pivot() {
            elim.pivot(r, c)?;
        }
        if elim.live_entries == 0 {
            break;
        }
        let Some((r, c, _)) = elim.choose_general_pivot() else {
            break;
        };
        elim.pivot(r, c)?;
    }
    Ok(elim.rank)
}

fn graded_ranks_impl<T: Scalar>(boundaries: &[IntMatrix]) -> Result<Vec<usize>, Overflow> {
    let n = boundaries.len();
    let mut elims: Vec<SparseElim<T>> = boundaries
        .iter()
        .map(|m| SparseElim::new(m, false))
        .collect();
    // clean_pair[p]: the composition of matrices p and p+1 is still exact.
    let mut clean_pair = vec![true; n.saturating_sub(1)];
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for p in 0..n {
                while let Some((r, c)) = elims[p].pop_free_pivot() {
                    let effects = elims[p].pivot(r, c)?;
                    debug_assert!(effects.clean, "singleton pivots never scale");
                    settle_pivot(&mut elims, &clean_pair, p, r, c, effects)?;
                    progress = true;
                }
            }
        }
        let mut advanced = false;
        for p in 0..n {
            if elims[p].live_entries == 0 {
                continue;
            }
            let Some((r, c, needs_scaling)) = elims[p].choose_general_pivot() else {
                continue;
            };
            if needs_scaling {
                elims[p].scaling_allowed = true;
                if p > 0 {
                    clean_pair[p - 1] = false;
                }
                if p < clean_pair.len() {
                    clean_pair[p] = false;
                }
            }
            let effects = elims[p].pivot(r, c)?;
            settle_pivot(&mut elims, &clean_pair, p, r, c, effects)?;
            advanced = true;
            break;
        }
        if !advanced {
            break;
        }
    }
    Ok(elims.iter().map(|e| e.rank).collect())
}

/// Post-pivot bookkeeping across neighbouring matrices: first compensate
/// any content reductions upstairs (restoring the composition identity),
/// then apply the structural deletions the pivot justifies.
fn settle_pivot<T: Scalar>(
    elims: &mut [SparseElim<T>],
    clean_pair: &[bool],
    p: usize,
    pivot_row: u32,
    pivot_col: u32,
    effects: PivotEffects<T>,
) -> Result<(), Overflow> {
    if p + 1 < elims.len() && clean_pair[p] {
        for (j, g) in &effects.reduced_cols {
            elims[p + 1].scale_row(*j, g)?;
        }
    }
    if effects.clean {
        if p > 0 && clean_pair[p - 1] {
            elims[p - 1].delete_col(pivot_row);
        }
        if p + 1 < elims.len() && clean_pair[p] {
            elims[p + 1].delete_row(pivot_col);
        }
    }
    Ok(())
}
