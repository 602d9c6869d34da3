//! Spectral data of the left action `u ↦ V_n^{(q)} u` on `Σ_n`.
//!
//! The action matrix is triangular in subset order (the `B_K` coefficient of
//! `V_n^{(q)} B_I` vanishes unless `I ⊆ K`), so its eigenvalues are its
//! diagonal entries `e_I`, determined by `(1-q) e_I = ∏_{v ∈ comp(I)} (1-q^v)`.
//! Over `ℚ(ζ_p)` the rank of the action drops to the number of compositions
//! of `n` without a part divisible by `p`, which is the order-`p` Fibonacci
//! number; explicit linear relations witness the upper bound.

use alloc::vec::Vec;

use super::dynkin::dynkin_action_coeff;
use super::matrix::{exact_rank, identity, is_zero_matrix, matmul, DenseMatrix};
use crate::compositions::{last_parts, Composition, SubsetOfRanks};
use crate::scalars::{
    evaluate_laurent, q_integer, CyclotomicField, Field, LaurentPoly, LaurentRing, Ring,
};

/// Number of subsets of `[n-1]`.
fn dim(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        1 << (n - 1)
    }
}

/// The full `2^{n-1} × 2^{n-1}` matrix of the left action of `V_n^{(q)}` on
/// the `B`-basis; entry `(K, I)` (row, column, bitmask order) is the `B_K`
/// coefficient of `V_n^{(q)} B_I`.
///
/// `q = 0` is rejected: the action of `V_n^{(0)}` is the identity and should
/// be built directly.
pub fn dynkin_action_matrix<R: Ring>(ring: &R, n: usize, q: &R::Elem) -> DenseMatrix<R::Elem> {
    assert!(n >= 1);
    assert!(
        !ring.is_zero(q),
        "q = 0: the action is the identity matrix; build it directly"
    );
    let size = dim(n);
    let mut out = DenseMatrix::from_fn(size, size, |_, _| ring.zero());
    for imask in 0..size {
        let i = SubsetOfRanks::from_mask(n, imask);
        for kmask in 0..size {
            if imask & !kmask != 0 {
                continue;
            }
            let kk = SubsetOfRanks::from_mask(n, kmask);
            let sym = dynkin_action_coeff(n, &i, &kk);
            out.set(kmask, imask, evaluate_laurent(ring, &sym, q));
        }
    }
    out
}

/// The symbolic eigenvalue `e_I` as a polynomial in `q`:
/// `(1-q)^{ℓ-1} ∏_{v ∈ comp(I)} [v]_q` with `ℓ = len(comp(I))`, which is the
/// exact quotient of `∏ (1-q^v)` by `(1-q)`. At `q = 1` it degenerates to
/// `n` for `I = ∅` and `0` otherwise.
pub fn eigenvalue_poly(i: &SubsetOfRanks) -> LaurentPoly {
    let ring = LaurentRing;
    let comp = i.comp_of();
    let q = LaurentPoly::variable();
    let one_minus_q = LaurentPoly::from_int(1).sub(&q);
    let mut f = one_minus_q.pow(comp.len().saturating_sub(1) as u32);
    for &v in comp.parts() {
        f = f.mul(&q_integer(&ring, v, &q));
    }
    f
}

/// The eigenvalue family `(e_I)` of `V_n^{(q)}` evaluated in a scalar ring,
/// in bitmask order.
pub fn eigenvalues<R: Ring>(ring: &R, n: usize, q: &R::Elem) -> Vec<(SubsetOfRanks, R::Elem)> {
    SubsetOfRanks::all(n)
        .map(|i| {
            let val = evaluate_laurent(ring, &eigenvalue_poly(&i), q);
            (i, val)
        })
        .collect()
}

/// The arithmetic nature of `q`, as far as vanishing of action coefficients
/// is concerned.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QKind {
    /// A primitive `p`-th root of unity, `p > 1`.
    RootOfUnity(usize),
    One,
    Zero,
    /// Nonzero and not a root of unity.
    GenericNonRoot,
}

/// Purely combinatorial classification of the vanishing of the `B_K`
/// coefficient of `V_n^{(q)} B_I`: no scalar arithmetic is performed.
pub fn zero_coeff_predicate(qkind: QKind, i: &SubsetOfRanks, kk: &SubsetOfRanks) -> bool {
    assert_eq!(i.n(), kk.n());
    match qkind {
        QKind::One => !i.is_empty_set(),
        QKind::Zero => i != kk,
        QKind::GenericNonRoot => !i.is_subset_of(kk),
        QKind::RootOfUnity(p) => {
            assert!(p > 1, "a primitive root of unity of order 1 is q = 1");
            match last_parts(kk, i) {
                None => true,
                Some(ov) => ov.iter().any(|&v| v % p == 0),
            }
        }
    }
}

/// `dim(V_n^{(q)} Σ_n)` for `q = ζ_p`: the exact rank of the action matrix
/// over `ℚ(ζ_p)`.
pub fn image_dimension(n: usize, p: usize) -> usize {
    assert!(n >= 1);
    assert!(p >= 2, "image_dimension wants a root of unity of order p >= 2");
    let field = CyclotomicField::new(p);
    let zeta = field.zeta();
    let m = dynkin_action_matrix(&field, n, &zeta);
    exact_rank(&field, &m)
}

/// A linear relation satisfied by the `B`-coefficients of every element of
/// the image `V_n^{(q)} Σ_n` at `q = ζ_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ImageRelation {
    /// `[B_K] f = 0`.
    Vanishes { k: SubsetOfRanks },
    /// `[B_K'] f = -[B_K] f`, where `comp(K')` merges the last
    /// multiple-of-`p` part of `comp(K)` with its right neighbour.
    PairSum { k_merged: SubsetOfRanks, k: SubsetOfRanks },
}

impl ImageRelation {
    /// The relation as a coefficient row over the `B`-basis: the dot product
    /// with any image element's coefficient vector is zero.
    pub fn row<R: Ring>(&self, ring: &R, n: usize) -> Vec<R::Elem> {
        let mut row = alloc::vec![ring.zero(); dim(n)];
        match self {
            ImageRelation::Vanishes { k } => row[k.mask()] = ring.one(),
            ImageRelation::PairSum { k_merged, k } => {
                row[k_merged.mask()] = ring.one();
                row[k.mask()] = ring.one();
            }
        }
        row
    }

    /// The subset the relation is keyed by (distinct across the family).
    pub fn key(&self) -> SubsetOfRanks {
        match self {
            ImageRelation::Vanishes { k } => *k,
            ImageRelation::PairSum { k, .. } => *k,
        }
    }
}

/// One relation for each `K` whose composition contains a part divisible by
/// `p`: if the last such part is final, its coefficient vanishes; otherwise
/// merging it into its right neighbour flips the sign. Exactly
/// `2^{n-1} - s_n^{(p)}` relations are emitted.
pub fn image_relations(n: usize, p: usize) -> Vec<ImageRelation> {
    assert!(n >= 1);
    assert!(p >= 2);
    let mut out = Vec::new();
    for kk in SubsetOfRanks::all(n) {
        let comp = kk.comp_of();
        let parts = comp.parts();
        let Some(m_idx) = parts.iter().rposition(|&v| v % p == 0) else {
            continue;
        };
        if m_idx + 1 == parts.len() {
            out.push(ImageRelation::Vanishes { k: kk });
        } else {
            let mut merged: Vec<usize> = parts.to_vec();
            let right = merged.remove(m_idx + 1);
            merged[m_idx] += right;
            let k_merged = Composition::new(merged).set_of();
            out.push(ImageRelation::PairSum { k_merged, k: kk });
        }
    }
    out
}

/// Diagonalizability probe: with `M` the action matrix and `E` its distinct
/// diagonal values, tests whether `∏_{e ∈ E} (M - e·Id) = 0`. For a
/// triangular matrix the minimal polynomial divides this product, so the
/// product vanishes exactly when the action is diagonalizable.
pub fn is_diagonalizable<F: Field>(field: &F, n: usize, q: &F::Elem) -> bool {
    let m = if field.is_zero(q) {
        identity(field, dim(n))
    } else {
        dynkin_action_matrix(field, n, q)
    };
    let size = m.rows();
    let mut distinct: Vec<F::Elem> = Vec::new();
    for d in 0..size {
        let v = m.get(d, d).clone();
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    let mut product = identity(field, size);
    for e in &distinct {
        let mut shifted = m.clone();
        for d in 0..size {
            shifted.set(d, d, field.sub(m.get(d, d), e));
        }
        product = matmul(field, &product, &shifted);
        if is_zero_matrix(field, &product) {
            return true;
        }
    }
    is_zero_matrix(field, &product)
}
