//! Dense matrices over an arbitrary scalar ring, with exact rank over fields.

use alloc::vec::Vec;

use crate::scalars::{Field, Ring};

/// A dense row-major matrix of ring elements.
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> Clone for DenseMatrix<E> {
    fn clone(&self) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }
}

impl<E: Clone + PartialEq + core::fmt::Debug> core::fmt::Debug for DenseMatrix<E> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "DenseMatrix({}x{}) {:?}", self.rows, self.cols, self.data)
    }
}

impl<E: Clone + PartialEq> DenseMatrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }
}

/// `size × size` identity.
pub fn identity<R: Ring>(ring: &R, size: usize) -> DenseMatrix<R::Elem> {
    DenseMatrix::from_fn(size, size, |r, c| if r == c { ring.one() } else { ring.zero() })
}

pub fn matmul<R: Ring>(
    ring: &R,
    a: &DenseMatrix<R::Elem>,
    b: &DenseMatrix<R::Elem>,
) -> DenseMatrix<R::Elem> {
    assert_eq!(a.cols(), b.rows(), "inner dimensions must agree");
    DenseMatrix::from_fn(a.rows(), b.cols(), |r, c| {
        let mut acc = ring.zero();
        for k in 0..a.cols() {
            let ak = a.get(r, k);
            if ring.is_zero(ak) {
                continue;
            }
            acc = ring.add(&acc, &ring.mul(ak, b.get(k, c)));
        }
        acc
    })
}

pub fn mat_sub<R: Ring>(
    ring: &R,
    a: &DenseMatrix<R::Elem>,
    b: &DenseMatrix<R::Elem>,
) -> DenseMatrix<R::Elem> {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    DenseMatrix::from_fn(a.rows(), a.cols(), |r, c| ring.sub(a.get(r, c), b.get(r, c)))
}

pub fn is_zero_matrix<R: Ring>(ring: &R, a: &DenseMatrix<R::Elem>) -> bool {
    (0..a.rows()).all(|r| (0..a.cols()).all(|c| ring.is_zero(a.get(r, c))))
}

/// Rank by exact Gaussian elimination. Pivots are chosen deterministically:
/// columns left to right, first row with a nonzero entry, no size
/// heuristics — exact arithmetic has no stability concern.
pub fn exact_rank<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !field.is_zero(a.get(r, col))) else {
            continue;
        };
        if pivot_row != rank {
            for c in col..cols {
                let tmp = a.get(rank, c).clone();
                a.set(rank, c, a.get(pivot_row, c).clone());
                a.set(pivot_row, c, tmp);
            }
        }
        let inv = field
            .invert(a.get(rank, col))
            .expect("pivot entry is nonzero");
        for c in col..cols {
            a.set(rank, c, field.mul(a.get(rank, c), &inv));
        }
        for r in rank + 1..rows {
            let factor = a.get(r, col).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for c in col..cols {
                let delta = field.mul(&factor, a.get(rank, c));
                a.set(r, c, field.sub(a.get(r, c), &delta));
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Rational, Rationals};

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let field = Rationals;
        for size in 1..=6 {
            assert_eq!(exact_rank(&field, &identity(&field, size)), size);
            let zero = DenseMatrix::from_fn(size, size, |_, _| rat(0));
            assert_eq!(exact_rank(&field, &zero), 0);
        }
    }

    #[test]
    fn rank_of_dependent_rows() {
        let field = Rationals;
        // second row is twice the first, third is independent
        let m = DenseMatrix::from_fn(3, 3, |r, c| match r {
            0 => rat(1 + c as i64),
            1 => rat(2 * (1 + c as i64)),
            _ => rat((c == 2) as i64),
        });
        assert_eq!(exact_rank(&field, &m), 2);
    }

    #[test]
    fn product_against_identity() {
        let ring = Rationals;
        let m = DenseMatrix::from_fn(3, 3, |r, c| rat((r * 3 + c) as i64));
        let id = identity(&ring, 3);
        let p = matmul(&ring, &m, &id);
        assert!(is_zero_matrix(&ring, &mat_sub(&ring, &p, &m)));
    }
}
