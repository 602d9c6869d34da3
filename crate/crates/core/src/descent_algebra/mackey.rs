//! Solomon's Mackey formula.
//!
//! The coefficient of `B_K` in the product `B_J B_I` equals the number of
//! nonnegative integer matrices with row sums vector `comp(I)`, column sums
//! vector `comp(J)` and reduced reading word `comp(K)` (the concatenation of
//! the rows with zeros removed). Such a set is empty unless `I ⊆ K`, which
//! makes the left action triangular in the subset order.
//!
//! The enumeration is a recursive row-major fill constrained by the remaining
//! column sums, with the reading word's subset mask maintained incrementally,
//! so counting does not materialize matrices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Basis, SigmaElement};
use crate::compositions::SubsetOfRanks;
use crate::scalars::Integers;

/// A grid of nonnegative integers, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ContingencyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
}

impl ContingencyMatrix {
    pub fn from_rows(rows: &[&[usize]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ContingencyMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().copied()).collect(),
        }
    }

    pub(crate) fn from_data(rows: usize, cols: usize, data: Vec<usize>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        ContingencyMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> usize {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.entry(r, c)).sum())
            .collect()
    }

    pub fn total(&self) -> usize {
        self.data.iter().sum()
    }

    /// The reduced reading word: rows concatenated with zeros removed.
    pub fn reading_word(&self) -> Vec<usize> {
        self.data.iter().copied().filter(|&v| v != 0).collect()
    }

    /// The subset of `[n-1]` whose composition is the reading word.
    pub fn reading_word_set(&self) -> SubsetOfRanks {
        let n = self.total();
        let mut mask = 0usize;
        let mut acc = 0usize;
        for v in self.reading_word() {
            acc += v;
            if acc < n {
                mask |= 1 << (acc - 1);
            }
        }
        SubsetOfRanks::from_mask(n, mask)
    }
}

/// Runs `visit(cells, reading_word_mask)` for every nonnegative integer
/// matrix with the given margins. `cells` is row-major with `col_sums.len()`
/// columns.
pub(crate) fn for_each_matrix_with_margins<F: FnMut(&[usize], usize)>(
    row_sums: &[usize],
    col_sums: &[usize],
    mut visit: F,
) {
    let total: usize = row_sums.iter().sum();
    assert_eq!(total, col_sums.iter().sum::<usize>(), "margins disagree");
    if row_sums.is_empty() || col_sums.is_empty() {
        if total == 0 {
            visit(&[], 0);
        }
        return;
    }
    let mut state = Fill {
        row_sums,
        col_rem: col_sums.to_vec(),
        cells: vec![0; row_sums.len() * col_sums.len()],
        ncols: col_sums.len(),
        n: total,
        visit: &mut visit,
    };
    let avail = total;
    state.fill(0, 0, row_sums[0], 0, 0, avail);
}

struct Fill<'a, F> {
    row_sums: &'a [usize],
    col_rem: Vec<usize>,
    cells: Vec<usize>,
    ncols: usize,
    n: usize,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize], usize)> Fill<'_, F> {
    /// `rr` is what is left of row `r`'s sum, `placed`/`mask` track the
    /// reading word, `avail` is the sum of `col_rem[c..]`.
    fn fill(&mut self, r: usize, c: usize, rr: usize, placed: usize, mask: usize, avail: usize) {
        let last_row = r + 1 == self.row_sums.len();
        let last_col = c + 1 == self.ncols;

        // value range for this cell
        let forced = if last_row {
            Some(self.col_rem[c])
        } else if last_col {
            Some(rr)
        } else {
            None
        };
        let col_here = self.col_rem[c];
        let avail_after = avail - col_here;
        let (lo, hi) = match forced {
            Some(v) => {
                if v > rr || v > col_here || (last_col && v != rr) {
                    return;
                }
                (v, v)
            }
            None => {
                let lo = rr.saturating_sub(avail_after);
                let hi = rr.min(col_here);
                if lo > hi {
                    return;
                }
                (lo, hi)
            }
        };

        for v in lo..=hi {
            let (placed2, mask2) = if v > 0 {
                let p = placed + v;
                let m = if p < self.n { mask | (1 << (p - 1)) } else { mask };
                (p, m)
            } else {
                (placed, mask)
            };
            self.cells[r * self.ncols + c] = v;
            self.col_rem[c] = col_here - v;
            if last_col {
                if last_row {
                    (self.visit)(&self.cells, mask2);
                } else {
                    let next_avail: usize = self.col_rem.iter().sum();
                    self.fill(r + 1, 0, self.row_sums[r + 1], placed2, mask2, next_avail);
                }
            } else {
                self.fill(r, c + 1, rr - v, placed2, mask2, avail_after);
            }
        }
        self.cells[r * self.ncols + c] = 0;
        self.col_rem[c] = col_here;
    }
}

/// Every matrix with row sums `comp(I)` and column sums `comp(J)`, paired
/// with the subset `K` whose composition is its reduced reading word.
pub fn enumerate_mackey_matrices(
    i: &SubsetOfRanks,
    j: &SubsetOfRanks,
) -> Vec<(ContingencyMatrix, SubsetOfRanks)> {
    assert_eq!(i.n(), j.n(), "Mackey enumeration needs matching n");
    let n = i.n();
    let rows = i.comp_of();
    let cols = j.comp_of();
    let mut out = Vec::new();
    for_each_matrix_with_margins(rows.parts(), cols.parts(), |cells, kmask| {
        out.push((
            ContingencyMatrix::from_data(rows.len(), cols.len(), cells.to_vec()),
            SubsetOfRanks::from_mask(n, kmask),
        ));
    });
    out
}

/// Fills `scratch[kmask]` with `|N^{I,J}_K|` for every `K`; the vector is
/// resized and zeroed to `2^{n-1}` entries first.
///
/// Rows are processed one at a time; the dynamic-programming state is the
/// vector of remaining column sums (mixed-radix encoded), and each state
/// carries the distribution of reading-word masks accumulated so far. A
/// row's nonzero entries contribute bits at its internal partial sums,
/// offset by the totals of the earlier rows, so the merge is a plain
/// bitwise-or. This collapses the enumeration tree's shared subtrees: the
/// total work is states × row fillings instead of one visit per matrix.
pub(crate) fn accumulate_counts(i: &SubsetOfRanks, j: &SubsetOfRanks, scratch: &mut Vec<u64>) {
    assert_eq!(i.n(), j.n());
    let n = i.n();
    let size = if n == 0 { 1 } else { 1 << (n - 1) };
    scratch.clear();
    scratch.resize(size, 0);
    if n == 0 {
        scratch[0] = 1;
        return;
    }
    let alpha = i.comp_of();
    let beta = j.comp_of();
    let caps: Vec<usize> = beta.parts().to_vec();
    let ncols = caps.len();

    // mixed-radix encoding of the remaining column sums
    let mut stride = vec![1usize; ncols];
    for c in 1..ncols {
        stride[c] = stride[c - 1] * (caps[c - 1] + 1);
    }
    let total_states = stride[ncols - 1] * (caps[ncols - 1] + 1);
    let full_state = (0..ncols).map(|c| caps[c] * stride[c]).sum::<usize>();

    let mut dp: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); total_states];
    let mut next: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); total_states];
    let mut active: Vec<usize> = vec![full_state];
    dp[full_state].insert(0, 1);

    let mut prefix = 0usize;
    let mut row_caps = vec![0usize; ncols];
    let mut suffix = vec![0usize; ncols + 1];
    for &a in alpha.parts() {
        let mut next_active: Vec<usize> = Vec::new();
        for &state in &active {
            let src = core::mem::take(&mut dp[state]);
            if src.is_empty() {
                continue;
            }
            for (c, rc) in row_caps.iter_mut().enumerate() {
                *rc = (state / stride[c]) % (caps[c] + 1);
            }
            for c in (0..ncols).rev() {
                suffix[c] = suffix[c + 1] + row_caps[c];
            }
            fill_one_row(
                &row_caps,
                &suffix,
                &stride,
                a,
                prefix,
                n,
                &mut |consumed, row_bits| {
                    let dst = &mut next[state - consumed];
                    if dst.is_empty() {
                        next_active.push(state - consumed);
                    }
                    for (&mask, &count) in &src {
                        *dst.entry(mask | row_bits).or_insert(0) += count;
                    }
                },
            );
        }
        core::mem::swap(&mut dp, &mut next);
        active = next_active;
        active.sort_unstable();
        active.dedup();
        prefix += a;
    }
    for (&mask, &count) in &dp[0] {
        scratch[mask] += count;
    }
}

/// Enumerates the ways to place a row summing to `remaining` under the
/// per-column caps; reports the consumed mixed-radix amount and the
/// reading-word bits of the row's internal partial sums.
fn fill_one_row(
    caps: &[usize],
    suffix: &[usize],
    stride: &[usize],
    remaining: usize,
    prefix: usize,
    n: usize,
    emit: &mut impl FnMut(usize, usize),
) {
    fn rec(
        caps: &[usize],
        suffix: &[usize],
        stride: &[usize],
        c: usize,
        remaining: usize,
        consumed: usize,
        t: usize,
        bits: usize,
        prefix: usize,
        n: usize,
        emit: &mut impl FnMut(usize, usize),
    ) {
        let last = c + 1 == caps.len();
        let lo = if last {
            remaining
        } else {
            remaining.saturating_sub(suffix[c + 1])
        };
        let hi = remaining.min(caps[c]);
        if lo > hi {
            return;
        }
        for v in lo..=hi {
            let (t2, bits2) = if v > 0 {
                let t2 = t + v;
                let pos = prefix + t2;
                let bits2 = if pos < n { bits | (1 << (pos - 1)) } else { bits };
                (t2, bits2)
            } else {
                (t, bits)
            };
            let consumed2 = consumed + v * stride[c];
            if last {
                emit(consumed2, bits2);
            } else {
                rec(
                    caps,
                    suffix,
                    stride,
                    c + 1,
                    remaining - v,
                    consumed2,
                    t2,
                    bits2,
                    prefix,
                    n,
                    emit,
                );
            }
        }
    }
    rec(caps, suffix, stride, 0, remaining, 0, 0, 0, prefix, n, emit);
}

/// The product `B_J B_I` expanded in the `B` basis: `Σ_K |N^{I,J}_K| B_K`.
/// The coefficient of `B_K` vanishes unless `I ⊆ K`.
pub fn multiply_b(i: &SubsetOfRanks, j: &SubsetOfRanks) -> SigmaElement<Integers> {
    let ring = Integers;
    let n = i.n();
    let mut scratch = Vec::new();
    accumulate_counts(i, j, &mut scratch);
    SigmaElement::from_terms(
        &ring,
        n,
        Basis::B,
        scratch.iter().enumerate().filter(|(_, &v)| v > 0).map(|(kmask, &v)| {
            (
                SubsetOfRanks::from_mask(n, kmask),
                crate::scalars::Integer::from(v),
            )
        }),
    )
}
