//! The descent algebra `Σ_n` in its `B` and `D` bases.
//!
//! Elements are sparse maps from subsets of `[n-1]` to scalars, tagged with
//! the basis they are expressed in. Multiplication goes through Solomon's
//! Mackey formula ([`mackey`]); the action of the q-Dynkin operator and its
//! combinatorial apparatus live in [`dynkin`]; eigenvalues, exact ranks and
//! the diagonalizability probe in [`spectrum`].

pub mod dynkin;
pub mod mackey;
pub mod matrix;
pub mod spectrum;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::compositions::SubsetOfRanks;
use crate::scalars::Ring;

/// Which basis a [`SigmaElement`]'s coefficients refer to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// `B_I`: sum of permutations with descent set contained in `I`.
    B,
    /// `D_I`: sum of permutations with descent set exactly `I`.
    D,
}

/// A sparse element of `Σ_n`: subset → nonzero scalar, in a fixed basis.
pub struct SigmaElement<R: Ring> {
    n: usize,
    basis: Basis,
    coeffs: BTreeMap<SubsetOfRanks, R::Elem>,
}

impl<R: Ring> Clone for SigmaElement<R> {
    fn clone(&self) -> Self {
        SigmaElement {
            n: self.n,
            basis: self.basis,
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<R: Ring> PartialEq for SigmaElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis && self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for SigmaElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SigmaElement")
            .field("n", &self.n)
            .field("basis", &self.basis)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<R: Ring> SigmaElement<R> {
    pub fn zero(n: usize, basis: Basis) -> Self {
        SigmaElement {
            n,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis element `B_I` (or `D_I`) with coefficient one.
    pub fn generator(ring: &R, basis: Basis, set: SubsetOfRanks) -> Self {
        let mut out = Self::zero(set.n(), basis);
        out.coeffs.insert(set, ring.one());
        out
    }

    pub fn from_terms<I>(ring: &R, n: usize, basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (SubsetOfRanks, R::Elem)>,
    {
        let mut out = Self::zero(n, basis);
        for (set, c) in terms {
            out.add_term(ring, set, c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, set: &SubsetOfRanks) -> Option<&R::Elem> {
        self.coeffs.get(set)
    }

    /// Terms in bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (&SubsetOfRanks, &R::Elem)> {
        self.coeffs.iter()
    }

    /// Accumulates `c` onto the coefficient of `set`, dropping zeros.
    pub fn add_term(&mut self, ring: &R, set: SubsetOfRanks, c: R::Elem) {
        assert_eq!(set.n(), self.n, "term for a different n");
        if ring.is_zero(&c) {
            return;
        }
        match self.coeffs.get_mut(&set) {
            Some(existing) => {
                *existing = ring.add(existing, &c);
                if ring.is_zero(existing) {
                    self.coeffs.remove(&set);
                }
            }
            None => {
                self.coeffs.insert(set, c);
            }
        }
    }

    pub fn add(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        assert_eq!(self.basis, other.basis, "basis mismatch in addition");
        let mut out = self.clone();
        for (set, c) in &other.coeffs {
            out.add_term(ring, *set, c.clone());
        }
        out
    }

    pub fn neg(&self, ring: &R) -> Self {
        SigmaElement {
            n: self.n,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, c)| (*s, ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.n, self.basis);
        for (set, v) in &self.coeffs {
            out.add_term(ring, *set, ring.mul(v, c));
        }
        out
    }
}

/// Change of basis `D → B`: `D_I = Σ_{J ⊆ I} (-1)^{|I∖J|} B_J`.
pub fn d_to_b<R: Ring>(ring: &R, f: &SigmaElement<R>) -> SigmaElement<R> {
    assert_eq!(f.basis(), Basis::D, "d_to_b expects a D-basis element");
    let mut out = SigmaElement::zero(f.n(), Basis::B);
    for (set, c) in f.terms() {
        let mask = set.mask();
        let mut sub = mask;
        loop {
            let sign = (mask.count_ones() - sub.count_ones()) % 2;
            let term = if sign == 0 { c.clone() } else { ring.neg(c) };
            out.add_term(ring, SubsetOfRanks::from_mask(f.n(), sub), term);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    out
}

/// Change of basis `B → D`: `B_I = Σ_{J ⊆ I} D_J`.
pub fn b_to_d<R: Ring>(ring: &R, f: &SigmaElement<R>) -> SigmaElement<R> {
    assert_eq!(f.basis(), Basis::B, "b_to_d expects a B-basis element");
    let mut out = SigmaElement::zero(f.n(), Basis::D);
    for (set, c) in f.terms() {
        let mask = set.mask();
        let mut sub = mask;
        loop {
            out.add_term(ring, SubsetOfRanks::from_mask(f.n(), sub), c.clone());
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    out
}

/// Coerces to the `B` basis, converting if needed.
pub fn to_b_basis<R: Ring>(ring: &R, f: &SigmaElement<R>) -> SigmaElement<R> {
    match f.basis() {
        Basis::B => f.clone(),
        Basis::D => d_to_b(ring, f),
    }
}

/// Product in `Σ_n`, in the same operand order as the group algebra:
/// `multiply_sigma(f, g)` is `f·g`. Bilinear extension of Solomon's Mackey
/// formula over the `B`-supports; the result is in the `B` basis.
pub fn multiply_sigma<R: Ring>(
    ring: &R,
    f: &SigmaElement<R>,
    g: &SigmaElement<R>,
) -> SigmaElement<R> {
    assert_eq!(f.n(), g.n(), "product needs matching n");
    let n = f.n();
    let fb = to_b_basis(ring, f);
    let gb = to_b_basis(ring, g);
    let mut out = SigmaElement::zero(n, Basis::B);
    let mut scratch: Vec<u64> = Vec::new();
    for (j, cj) in fb.terms() {
        for (i, ci) in gb.terms() {
            let c = ring.mul(cj, ci);
            if ring.is_zero(&c) {
                continue;
            }
            // In the product B_J B_I the left factor fixes the column sums
            // and the right factor the row sums; see `mackey`.
            mackey::accumulate_counts(i, j, &mut scratch);
            for (kmask, &count) in scratch.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let term = ring.mul(&c, &ring.from_int(count as i64));
                out.add_term(ring, SubsetOfRanks::from_mask(n, kmask), term);
            }
        }
    }
    out
}
