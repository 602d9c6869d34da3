//! The left action of the q-Dynkin operator on the `B`-basis.
//!
//! Two independent routes compute the coefficient of `B_K` in `V_n^{(q)} B_I`:
//!
//! * [`prefix_action_coeff`] gives the integer coefficient of `B_K` in
//!   `D_{[k-1]} B_I` as a signed count of subsequences of the last-entry
//!   list of `comp(K)|comp(I)`; summing `(-q)^{k-1}` multiples over `k`
//!   recovers the action of the whole operator.
//! * [`dynkin_action_coeff`] is the closed product formula
//!   `(-1)^{|K|} q^{n-1} (1-q^{-1})^{|I|} ∏_{v} [v]_{q^{-1}}`, which always
//!   simplifies to a genuine polynomial in `q`.
//!
//! The combinatorial engine behind the first route is a sign-reversing
//! involution on the matrices with row sums `comp(I)` and reading word
//! `comp(K)`: a splittable column (not last, two or more nonzero entries)
//! splits by moving its top nonzero entry into a fresh column on its left;
//! the inverse merge adds a single-entry column into its right neighbour.
//! The fixed points are the survivor matrices, classified here by which rows
//! end in the last column.

use alloc::vec;
use alloc::vec::Vec;

use super::mackey::ContingencyMatrix;
use super::{Basis, SigmaElement};
use crate::compositions::{last_parts, split, SubsetOfRanks};
use crate::scalars::{neg_one_pow, q_integer, Integer, Integers, LaurentPoly, LaurentRing, Ring};

/// Coefficient of `B_K` in `D_{[k-1]} B_I`:
/// `(-1)^{k+|K|} Σ { (-1)^{|U|} : U ⊆ last-entry list, Σ U > n-k }`,
/// the sum running over all `2^{|I|+1}` position-subsequences. Zero when
/// `I ⊄ K`.
pub fn prefix_action_coeff(n: usize, k: usize, i: &SubsetOfRanks, kk: &SubsetOfRanks) -> i64 {
    assert!(k >= 1 && k <= n, "k must lie in [n]");
    assert_eq!(i.n(), n);
    assert_eq!(kk.n(), n);
    let Some(ov) = last_parts(kk, i) else {
        return 0;
    };
    let mut total: i64 = 0;
    for umask in 0..(1usize << ov.len()) {
        let mut sum = 0usize;
        for (pos, &v) in ov.iter().enumerate() {
            if umask & (1 << pos) != 0 {
                sum += v;
            }
        }
        if sum > n - k {
            total += neg_one_pow(umask.count_ones() as usize);
        }
    }
    neg_one_pow(k + kk.size()) * total
}

/// Coefficient of `B_K` in `V_n^{(q)} B_I` as a Laurent polynomial, via the
/// closed product formula. Zero when `I ⊄ K`; otherwise a polynomial in `q`
/// whose lowest exponent is `n - Σ(last entries) ≥ 0`, so specializing at
/// `q = 0` or `q = 1` is legitimate.
pub fn dynkin_action_coeff(n: usize, i: &SubsetOfRanks, kk: &SubsetOfRanks) -> LaurentPoly {
    assert!(n >= 1);
    assert_eq!(i.n(), n);
    assert_eq!(kk.n(), n);
    let Some(ov) = last_parts(kk, i) else {
        return LaurentPoly::zero();
    };
    let ring = LaurentRing;
    let qinv = LaurentPoly::monomial(-1, crate::scalars::Rational::from_integer(1.into()));
    let sign = LaurentPoly::from_int(neg_one_pow(kk.size()));
    let mut f = sign.mul(&LaurentPoly::monomial(
        (n - 1) as i64,
        crate::scalars::Rational::from_integer(1.into()),
    ));
    let one_minus_qinv = LaurentPoly::from_int(1).sub(&qinv);
    f = f.mul(&one_minus_qinv.pow(i.size() as u32));
    for &v in &ov {
        f = f.mul(&q_integer(&ring, v, &qinv));
    }
    debug_assert!(f.is_polynomial(), "action coefficient must simplify to a polynomial");
    f
}

/// The full expansion `V_n^{(q)} B_I = Σ_K c_K B_K` over any scalar ring;
/// coefficients are evaluated from the symbolic closed formula.
pub fn dynkin_action_on_b<R: Ring>(
    ring: &R,
    n: usize,
    q: &R::Elem,
    i: &SubsetOfRanks,
) -> SigmaElement<R> {
    let mut out = SigmaElement::zero(n, Basis::B);
    for kk in SubsetOfRanks::all(n) {
        if !i.is_subset_of(&kk) {
            continue;
        }
        let sym = dynkin_action_coeff(n, i, &kk);
        out.add_term(ring, kk, crate::scalars::evaluate_laurent(ring, &sym, q));
    }
    out
}

/// The q-Dynkin operator as a descent-algebra element in the `D` basis:
/// `Σ_{k=1}^n (-q)^{k-1} D_{[k-1]}`.
pub fn dynkin_sigma<R: Ring>(ring: &R, n: usize, q: &R::Elem) -> SigmaElement<R> {
    assert!(n >= 1);
    let minus_q = ring.neg(q);
    SigmaElement::from_terms(
        ring,
        n,
        Basis::D,
        (1..=n).map(|k| {
            let prefix = SubsetOfRanks::from_mask(n, (1usize << (k - 1)) - 1);
            (prefix, ring.pow(&minus_q, (k - 1) as u32))
        }),
    )
}

/// True when column `c` is splittable: not the last column, with at least
/// two nonzero entries.
pub fn is_splittable(m: &ContingencyMatrix, c: usize) -> bool {
    if c + 1 >= m.cols() {
        return false;
    }
    (0..m.rows()).filter(|&r| m.entry(r, c) != 0).count() >= 2
}

/// Splits column `c` by moving its top nonzero entry into a fresh column
/// inserted on its left. Panics unless [`is_splittable`].
pub fn split_column(m: &ContingencyMatrix, c: usize) -> ContingencyMatrix {
    assert!(is_splittable(m, c), "column {c} is not splittable");
    let top = (0..m.rows()).find(|&r| m.entry(r, c) != 0).expect("nonzero column");
    let (rows, cols) = (m.rows(), m.cols() + 1);
    let mut data = vec![0usize; rows * cols];
    for r in 0..rows {
        for old_c in 0..m.cols() {
            let v = m.entry(r, old_c);
            let new_c = if old_c < c { old_c } else { old_c + 1 };
            data[r * cols + new_c] = v;
        }
    }
    // move the top entry into the fresh column at position c
    data[top * cols + c] = m.entry(top, c);
    data[top * cols + c + 1] = 0;
    ContingencyMatrix::from_data(rows, cols, data)
}

/// True when columns `c` and `c+1` form a mergeable pair: `c+1` is not the
/// last column, column `c` has exactly one nonzero entry, and that entry
/// lies strictly above every nonzero entry of column `c+1`.
pub fn is_mergeable(m: &ContingencyMatrix, c: usize) -> bool {
    if c + 2 >= m.cols() {
        return false;
    }
    let nonzero: Vec<usize> = (0..m.rows()).filter(|&r| m.entry(r, c) != 0).collect();
    if nonzero.len() != 1 {
        return false;
    }
    let row = nonzero[0];
    (0..m.rows()).all(|r| m.entry(r, c + 1) == 0 || r > row)
}

/// Merges columns `c` and `c+1` by adding them. Panics unless [`is_mergeable`].
pub fn merge_columns(m: &ContingencyMatrix, c: usize) -> ContingencyMatrix {
    assert!(is_mergeable(m, c), "columns {c},{} are not mergeable", c + 1);
    let (rows, cols) = (m.rows(), m.cols() - 1);
    let mut data = vec![0usize; rows * cols];
    for r in 0..rows {
        for old_c in 0..m.cols() {
            let v = m.entry(r, old_c);
            let new_c = if old_c <= c { old_c } else { old_c - 1 };
            data[r * cols + new_c] += v;
        }
    }
    ContingencyMatrix::from_data(rows, cols, data)
}

/// A survivor admits neither a splittable column nor a mergeable pair.
pub fn is_survivor(m: &ContingencyMatrix) -> bool {
    (0..m.cols()).all(|c| !is_splittable(m, c) && !is_mergeable(m, c))
}

/// One step of the sign-reversing involution: act at the leftmost column
/// that is splittable or opens a mergeable pair. `None` on survivors.
pub fn involution_step(m: &ContingencyMatrix) -> Option<ContingencyMatrix> {
    for c in 0..m.cols() {
        if is_splittable(m, c) {
            return Some(split_column(m, c));
        }
        if is_mergeable(m, c) {
            return Some(merge_columns(m, c));
        }
    }
    None
}

/// Every matrix with row sums `comp(I)`, reduced reading word `comp(K)` and
/// no zero column — the set the involution acts on. Empty when `I ⊄ K`.
pub fn matrices_with_reading_word(i: &SubsetOfRanks, kk: &SubsetOfRanks) -> Vec<ContingencyMatrix> {
    let mut out = Vec::new();
    for_each_matrix_with_reading_word(i, kk, |m| out.push(m.clone()));
    out
}

/// Streaming form of [`matrices_with_reading_word`]; the sets grow like
/// ordered set partitions, so large pairs should not be materialized.
pub fn for_each_matrix_with_reading_word<F: FnMut(&ContingencyMatrix)>(
    i: &SubsetOfRanks,
    kk: &SubsetOfRanks,
    mut visit: F,
) {
    assert_eq!(i.n(), kk.n());
    let Some(blocks) = split(&kk.comp_of(), &i.comp_of()) else {
        return;
    };
    let entry_count: usize = blocks.blocks().iter().map(|b| b.len()).sum();
    let max_block = blocks.blocks().iter().map(|b| b.len()).max().unwrap_or(0);
    if entry_count == 0 {
        return;
    }
    // For each column count, place every block's entries into strictly
    // increasing columns so that all columns are hit.
    for ncols in max_block..=entry_count {
        let rows = blocks.blocks().len();
        let mut chosen: Vec<Vec<usize>> = vec![Vec::new(); rows];
        place_rows(&blocks, 0, ncols, 0, &mut chosen, &mut |chosen| {
            let mut data = vec![0usize; rows * ncols];
            for (r, cols) in chosen.iter().enumerate() {
                for (idx, &c) in cols.iter().enumerate() {
                    data[r * ncols + c] = blocks.blocks()[r].parts()[idx];
                }
            }
            visit(&ContingencyMatrix::from_data(rows, ncols, data));
        });
    }
}

fn place_rows<F: FnMut(&[Vec<usize>])>(
    blocks: &crate::compositions::SplitSequence,
    r: usize,
    ncols: usize,
    covered: usize,
    chosen: &mut Vec<Vec<usize>>,
    emit: &mut F,
) {
    let rows = blocks.blocks().len();
    if r == rows {
        if covered == (1usize << ncols) - 1 {
            emit(chosen);
        }
        return;
    }
    // columns still to cover must fit in the entries yet to be placed
    let remaining_entries: usize = (r..rows).map(|x| blocks.blocks()[x].len()).sum();
    let uncovered = ((1usize << ncols) - 1) & !covered;
    if uncovered.count_ones() as usize > remaining_entries {
        return;
    }
    let len = blocks.blocks()[r].len();
    let mut combo: Vec<usize> = (0..len).collect();
    loop {
        // use this strictly increasing column choice for row r
        let mut mask = 0usize;
        for &c in &combo {
            mask |= 1 << c;
        }
        chosen[r] = combo.clone();
        place_rows(blocks, r + 1, ncols, covered | mask, chosen, emit);

        // next k-combination of 0..ncols in lexicographic order
        let mut idx = len;
        loop {
            if idx == 0 {
                return;
            }
            idx -= 1;
            if combo[idx] < ncols - (len - idx) {
                combo[idx] += 1;
                for j in idx + 1..len {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A survivor matrix together with its defining data: the positions (rows)
/// whose block's last entry sits in the final column, and those entries'
/// values — a nonempty subsequence of the last-entry list of
/// `comp(K)|comp(I)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Survivor {
    pub matrix: ContingencyMatrix,
    pub positions: Vec<usize>,
    pub values: Vec<usize>,
}

/// All survivor matrices for the pair `I ⊆ K`, built directly from the
/// nonempty position-subsequences of the last-entry list; `None` when
/// `I ⊄ K`. Each survivor has `2 + |K| - |U|` columns.
pub fn enumerate_survivors(i: &SubsetOfRanks, kk: &SubsetOfRanks) -> Option<Vec<Survivor>> {
    assert_eq!(i.n(), kk.n());
    let blocks = split(&kk.comp_of(), &i.comp_of())?;
    let rows = blocks.blocks().len();
    let last_entries = blocks.last_entries();
    let mut out = Vec::new();
    for umask in 1usize..(1 << rows) {
        let positions: Vec<usize> = (0..rows).filter(|&r| umask & (1 << r) != 0).collect();
        let values: Vec<usize> = positions.iter().map(|&r| last_entries[r]).collect();
        // Non-final entries of row r: the whole block when r is not chosen,
        // all but the last entry when it is. They occupy one column each,
        // bottom row first, block order within a row.
        let mut nonfinal: Vec<(usize, usize)> = Vec::new(); // (row, value)
        for r in (0..rows).rev() {
            let parts = blocks.blocks()[r].parts();
            let take = if umask & (1 << r) != 0 {
                parts.len() - 1
            } else {
                parts.len()
            };
            for &v in &parts[..take] {
                nonfinal.push((r, v));
            }
        }
        let ncols = nonfinal.len() + 1;
        let mut data = vec![0usize; rows * ncols];
        for (c, &(r, v)) in nonfinal.iter().enumerate() {
            data[r * ncols + c] = v;
        }
        for (&r, &v) in positions.iter().zip(&values) {
            data[r * ncols + ncols - 1] = v;
        }
        out.push(Survivor {
            matrix: ContingencyMatrix::from_data(rows, ncols, data),
            positions,
            values,
        });
    }
    Some(out)
}

/// The action of the peak operator `V_n^{(-1)}` on `B_I`, written directly
/// from its combinatorial expansion: `2^{|I|}` times the signed sum of `B_K`
/// over the `K ⊇ I` whose last-entry list contains no even entry.
pub fn peak_action_on_b(n: usize, i: &SubsetOfRanks) -> SigmaElement<Integers> {
    assert!(n >= 1);
    assert_eq!(i.n(), n);
    let ring = Integers;
    let weight = Integer::from(1u8) << i.size();
    let mut out = SigmaElement::zero(n, Basis::B);
    for kk in SubsetOfRanks::all(n) {
        let Some(ov) = last_parts(&kk, i) else {
            continue;
        };
        if ov.iter().any(|&v| v % 2 == 0) {
            continue;
        }
        let c = if (n - 1 - kk.size()) % 2 == 0 {
            weight.clone()
        } else {
            -weight.clone()
        };
        out.add_term(&ring, kk, c);
    }
    out
}
