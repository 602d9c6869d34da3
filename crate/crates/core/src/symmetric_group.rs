//! Permutations, descent sets, and the group algebra `kS_n`.
//!
//! This module is the brute-force side of the library: elements of `kS_n`
//! are sparse maps from permutations to scalars, products are plain
//! convolutions, and [`expand_in_sigma`] reads a descent-algebra element's
//! `B`-basis coordinates off the permutation coefficients. Everything here is
//! exponential in `n` by design and is used to cross-check the closed
//! formulas in [`descent_algebra`](crate::descent_algebra).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::compositions::SubsetOfRanks;
use crate::descent_algebra::{Basis, SigmaElement};
use crate::scalars::Ring;

/// A permutation of `[n]` in one-line notation: `images[i-1] = w(i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Panics unless `images` is a rearrangement of `1..=n`.
    pub fn from_one_line(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v >= 1 && v <= n && !seen[v - 1], "not a permutation of 1..={n}");
            seen[v - 1] = true;
        }
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composition needs matching n");
        Permutation {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descent_set(&self) -> SubsetOfRanks {
        let n = self.n();
        let mut mask = 0usize;
        for i in 1..n {
            if self.images[i - 1] > self.images[i] {
                mask |= 1 << (i - 1);
            }
        }
        SubsetOfRanks::from_mask(n, mask)
    }

    /// True when the one-line word is strictly decreasing then strictly
    /// increasing; the turning point necessarily carries the value 1.
    pub fn is_v_permutation(&self) -> bool {
        let w = &self.images;
        let n = w.len();
        if n == 0 {
            return true;
        }
        let k = w.iter().position(|&v| v == 1).expect("1 occurs") + 1;
        (1..k).all(|i| w[i - 1] > w[i]) && (k..n).all(|i| w[i - 1] < w[i])
    }
}

/// Lexicographic iterator over all of `S_n`.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            next: Some((1..=n).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut w = current.clone();
        // standard next-permutation step
        let advanced = (|| {
            if w.len() < 2 {
                return false;
            }
            let mut i = w.len() - 1;
            while i > 0 && w[i - 1] >= w[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = w.len() - 1;
            while w[j] <= w[i - 1] {
                j -= 1;
            }
            w.swap(i - 1, j);
            w[i..].reverse();
            true
        })();
        self.next = advanced.then_some(w);
        Some(Permutation { images: current })
    }
}

pub fn all_permutations(n: usize) -> Permutations {
    Permutations::new(n)
}

/// The `2^{n-1}` V-permutations of `S_n`, one per choice of the values
/// placed in the decreasing run before the 1.
pub fn v_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    assert!(n >= 1);
    let top = 1usize << (n - 1);
    (0..top).map(move |mask| {
        let mut word = Vec::with_capacity(n);
        for v in (2..=n).rev() {
            if mask & (1 << (v - 2)) != 0 {
                word.push(v);
            }
        }
        word.push(1);
        for v in 2..=n {
            if mask & (1 << (v - 2)) == 0 {
                word.push(v);
            }
        }
        Permutation { images: word }
    })
}

/// The cycle sending `i, i-1, …, 2, 1` to `i-1, i-2, …, 1, i` and fixing
/// everything above `i`.
pub fn cycle_down(i: usize, n: usize) -> Permutation {
    assert!(i >= 1 && i <= n);
    let mut images: Vec<usize> = (1..=n).collect();
    images[0] = i;
    for j in 2..=i {
        images[j - 1] = j - 1;
    }
    Permutation { images }
}

/// A sparse element of the group algebra `kS_n`.
pub struct GroupAlgebraElement<R: Ring> {
    n: usize,
    terms: BTreeMap<Permutation, R::Elem>,
}

impl<R: Ring> Clone for GroupAlgebraElement<R> {
    fn clone(&self) -> Self {
        GroupAlgebraElement {
            n: self.n,
            terms: self.terms.clone(),
        }
    }
}

impl<R: Ring> PartialEq for GroupAlgebraElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl<R: Ring> fmt::Debug for GroupAlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupAlgebraElement")
            .field("n", &self.n)
            .field("terms", &self.terms)
            .finish()
    }
}

impl<R: Ring> GroupAlgebraElement<R> {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut out = Self::zero(n);
        out.add_term(ring, Permutation::identity(n), ring.one());
        out
    }

    pub fn from_terms<I>(ring: &R, n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Permutation, R::Elem)>,
    {
        let mut out = Self::zero(n);
        for (w, c) in terms {
            out.add_term(ring, w, c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Permutation) -> Option<&R::Elem> {
        self.terms.get(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &R::Elem)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, ring: &R, w: Permutation, c: R::Elem) {
        assert_eq!(w.n(), self.n, "term for a different n");
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing = ring.add(existing, &c);
                if ring.is_zero(existing) {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(ring, w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, ring: &R) -> Self {
        GroupAlgebraElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(ring, w.clone(), ring.mul(v, c));
        }
        out
    }
}

/// Convolution product `f·g = Σ f_σ g_π (σ ∘ π)`; `π` acts first.
pub fn multiply<R: Ring>(
    ring: &R,
    f: &GroupAlgebraElement<R>,
    g: &GroupAlgebraElement<R>,
) -> GroupAlgebraElement<R> {
    assert_eq!(f.n(), g.n(), "product needs matching n");
    let mut out = GroupAlgebraElement::zero(f.n());
    for (sigma, cf) in f.terms() {
        for (pi, cg) in g.terms() {
            out.add_term(ring, sigma.compose(pi), ring.mul(cf, cg));
        }
    }
    out
}

/// `D_I`: the sum of all permutations with descent set exactly `I`.
pub fn d_element<R: Ring>(ring: &R, i: &SubsetOfRanks) -> GroupAlgebraElement<R> {
    let n = i.n();
    GroupAlgebraElement::from_terms(
        ring,
        n,
        all_permutations(n)
            .filter(|w| w.descent_set() == *i)
            .map(|w| (w, ring.one())),
    )
}

/// `B_I`: the sum of all permutations with descent set contained in `I`.
pub fn b_element<R: Ring>(ring: &R, i: &SubsetOfRanks) -> GroupAlgebraElement<R> {
    let n = i.n();
    GroupAlgebraElement::from_terms(
        ring,
        n,
        all_permutations(n)
            .filter(|w| w.descent_set().is_subset_of(i))
            .map(|w| (w, ring.one())),
    )
}

/// The q-deformed Dynkin operator: the sum over V-permutations `w` of
/// `(-q)^{w^{-1}(1)-1} w`. At `q = 1` this is the classical Dynkin operator;
/// at `q = 0` the identity; at `q = -1` the sum of all V-permutations.
pub fn dynkin_element<R: Ring>(ring: &R, n: usize, q: &R::Elem) -> GroupAlgebraElement<R> {
    let minus_q = ring.neg(q);
    GroupAlgebraElement::from_terms(
        ring,
        n,
        v_permutations(n).map(|w| {
            let k = w.one_line().iter().position(|&v| v == 1).expect("1 occurs") + 1;
            let c = ring.pow(&minus_q, (k - 1) as u32);
            (w, c)
        }),
    )
}

/// The same operator as the product
/// `(1 - q·cyc_{2,1})(1 - q·cyc_{3,2,1}) ⋯ (1 - q·cyc_{n,…,1})`.
pub fn dynkin_element_product_form<R: Ring>(
    ring: &R,
    n: usize,
    q: &R::Elem,
) -> GroupAlgebraElement<R> {
    let mut acc = GroupAlgebraElement::identity(ring, n);
    for i in 2..=n {
        let mut factor = GroupAlgebraElement::identity(ring, n);
        factor.add_term(ring, cycle_down(i, n), ring.neg(q));
        acc = multiply(ring, &acc, &factor);
    }
    acc
}

/// Error from [`expand_in_sigma`]: the input is not constant on some descent
/// class, hence lies outside the descent algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NotInDescentAlgebra {
    pub descent_set: SubsetOfRanks,
}

impl fmt::Display for NotInDescentAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "element is not constant on the descent class of {:?}",
            self.descent_set.members()
        )
    }
}

/// Reads the `B`-basis coordinates of `f ∈ Σ_n` off its permutation
/// coefficients. Every one of the `n!` permutations is inspected; if two
/// permutations with the same descent set carry different coefficients the
/// input is outside `Σ_n` and an error is returned.
pub fn expand_in_sigma<R: Ring>(
    ring: &R,
    f: &GroupAlgebraElement<R>,
) -> Result<SigmaElement<R>, NotInDescentAlgebra> {
    let n = f.n();
    let size = if n == 0 { 1 } else { 1usize << (n - 1) };
    let mut class_coeff: Vec<Option<R::Elem>> = vec![None; size];
    for w in all_permutations(n) {
        let c = f.coeff(&w).cloned().unwrap_or_else(|| ring.zero());
        let mask = w.descent_set().mask();
        match &class_coeff[mask] {
            None => class_coeff[mask] = Some(c),
            Some(existing) => {
                if *existing != c {
                    return Err(NotInDescentAlgebra {
                        descent_set: SubsetOfRanks::from_mask(n, mask),
                    });
                }
            }
        }
    }
    // Möbius inversion over the boolean lattice: c_K = Σ_{J ⊇ K} (-1)^{|J∖K|} d_J
    let mut out = SigmaElement::zero(n, Basis::B);
    for kmask in 0..size {
        let mut acc = ring.zero();
        let free = !kmask & (size - 1);
        let mut extra = free;
        loop {
            let jmask = kmask | extra;
            if let Some(d) = &class_coeff[jmask] {
                let term = if extra.count_ones() % 2 == 0 {
                    d.clone()
                } else {
                    ring.neg(d)
                };
                acc = ring.add(&acc, &term);
            }
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
        out.add_term(ring, SubsetOfRanks::from_mask(n, kmask), acc);
    }
    Ok(out)
}

/// Materializes a descent-algebra element back into the group algebra,
/// `Σ c_I B_I` or `Σ c_I D_I` depending on the basis tag.
pub fn materialize_sigma<R: Ring>(ring: &R, f: &SigmaElement<R>) -> GroupAlgebraElement<R> {
    let mut out = GroupAlgebraElement::zero(f.n());
    for (set, c) in f.terms() {
        let basis_elem = match f.basis() {
            Basis::B => b_element(ring, set),
            Basis::D => d_element(ring, set),
        };
        out = out.add(ring, &basis_elem.scale(ring, c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Integer, Integers, LaurentPoly, LaurentRing};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_one_line(images.to_vec())
    }

    fn set(n: usize, members: &[usize]) -> SubsetOfRanks {
        SubsetOfRanks::from_members(n, members)
    }

    #[test]
    fn composition_examples() {
        let id = Permutation::identity(3);
        let s = perm(&[2, 1, 3]);
        assert_eq!(id.compose(&s), s);
        assert_eq!(perm(&[2, 1]).compose(&perm(&[2, 1])), Permutation::identity(2));
        assert_eq!(perm(&[2, 3, 1]).compose(&perm(&[2, 1, 3])), perm(&[3, 2, 1]));
        assert_eq!(perm(&[2, 3, 1]).inverse(), perm(&[3, 1, 2]));
    }

    #[test]
    fn descent_set_examples() {
        assert!(Permutation::identity(5).descent_set().is_empty_set());
        assert_eq!(perm(&[5, 4, 3, 2, 1]).descent_set(), SubsetOfRanks::full(5));
        assert_eq!(perm(&[3, 1, 4, 2, 5]).descent_set(), set(5, &[1, 3]));
    }

    #[test]
    fn v_permutation_examples() {
        assert!(Permutation::identity(4).is_v_permutation());
        assert!(!perm(&[2, 3, 1]).is_v_permutation());
        let vs: Vec<Permutation> = all_permutations(3).filter(|w| w.is_v_permutation()).collect();
        assert_eq!(
            vs,
            vec![perm(&[1, 2, 3]), perm(&[2, 1, 3]), perm(&[3, 1, 2]), perm(&[3, 2, 1])]
        );
        // generator agrees with the filter and yields 2^{n-1} permutations
        for n in 1..=7 {
            let mut built: Vec<_> = v_permutations(n).collect();
            let mut filtered: Vec<_> =
                all_permutations(n).filter(|w| w.is_v_permutation()).collect();
            built.sort();
            filtered.sort();
            assert_eq!(built, filtered);
            assert_eq!(built.len(), 1 << (n - 1));
        }
    }

    #[test]
    fn descent_classes_partition_the_group() {
        for n in 1..=7 {
            let total: usize = SubsetOfRanks::all(n)
                .map(|i| d_element::<Integers>(&Integers, &i).num_terms())
                .sum();
            let factorial: usize = (1..=n).product();
            assert_eq!(total, factorial);
        }
    }

    #[test]
    fn d_and_b_examples() {
        let ring = Integers;
        // B_∅ is the identity permutation alone
        let b0 = b_element(&ring, &set(4, &[]));
        assert_eq!(b0.num_terms(), 1);
        assert_eq!(b0.coeff(&Permutation::identity(4)), Some(&Integer::from(1)));

        // D_{1} at n = 3
        let d1 = d_element(&ring, &set(3, &[1]));
        assert_eq!(d1.num_terms(), 2);
        assert!(d1.coeff(&perm(&[2, 1, 3])).is_some());
        assert!(d1.coeff(&perm(&[3, 1, 2])).is_some());

        // B_I = Σ_{J ⊆ I} D_J
        for i in SubsetOfRanks::all(4) {
            let mut acc = GroupAlgebraElement::zero(4);
            for j in SubsetOfRanks::all(4) {
                if j.is_subset_of(&i) {
                    acc = acc.add(&ring, &d_element(&ring, &j));
                }
            }
            assert_eq!(acc, b_element(&ring, &i));
        }
    }

    #[test]
    fn dynkin_small_cases() {
        let ring = LaurentRing;
        let q = LaurentPoly::variable();

        let v1 = dynkin_element(&ring, 1, &q);
        assert_eq!(v1.num_terms(), 1);
        assert_eq!(v1.coeff(&Permutation::identity(1)), Some(&LaurentPoly::from_int(1)));

        // V_2 = (1,2) - q (2,1)
        let v2 = dynkin_element(&ring, 2, &q);
        assert_eq!(v2.coeff(&perm(&[1, 2])), Some(&LaurentPoly::from_int(1)));
        assert_eq!(v2.coeff(&perm(&[2, 1])), Some(&q.neg()));

        // V_3 = (1,2,3) - q(2,1,3) - q(3,1,2) + q^2 (3,2,1)
        let v3 = dynkin_element(&ring, 3, &q);
        assert_eq!(v3.num_terms(), 4);
        assert_eq!(v3.coeff(&perm(&[1, 2, 3])), Some(&LaurentPoly::from_int(1)));
        assert_eq!(v3.coeff(&perm(&[2, 1, 3])), Some(&q.neg()));
        assert_eq!(v3.coeff(&perm(&[3, 1, 2])), Some(&q.neg()));
        assert_eq!(v3.coeff(&perm(&[3, 2, 1])), Some(&q.mul(&q)));
    }

    #[test]
    fn product_form_matches_sum_form() {
        let ring = LaurentRing;
        let q = LaurentPoly::variable();
        for n in 1..=6 {
            assert_eq!(
                dynkin_element_product_form(&ring, n, &q),
                dynkin_element(&ring, n, &q),
                "n = {n}"
            );
        }
    }

    #[test]
    fn multiply_examples() {
        let ring = Integers;
        // f · identity = f
        let f = d_element(&ring, &set(3, &[1]));
        let id = GroupAlgebraElement::identity(&ring, 3);
        assert_eq!(multiply(&ring, &f, &id), f);

        // (B_{1})² = 2 B_{1} at n = 2
        let b1 = b_element(&ring, &set(2, &[1]));
        let sq = multiply(&ring, &b1, &b1);
        assert_eq!(sq, b1.scale(&ring, &Integer::from(2)));

        // V_3² = 3 V_3 at q = 1
        let v3 = dynkin_element(&ring, 3, &Integer::from(1));
        let sq = multiply(&ring, &v3, &v3);
        assert_eq!(sq, v3.scale(&ring, &Integer::from(3)));
    }

    #[test]
    fn expand_in_sigma_examples() {
        let ring = Integers;
        // identity -> B_∅ with coefficient 1
        let id = GroupAlgebraElement::identity(&ring, 3);
        let s = expand_in_sigma(&ring, &id).unwrap();
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s.coeff(&set(3, &[])), Some(&Integer::from(1)));

        // D_{1} at n = 3 -> -B_∅ + B_{1}
        let d1 = d_element(&ring, &set(3, &[1]));
        let s = expand_in_sigma(&ring, &d1).unwrap();
        assert_eq!(s.coeff(&set(3, &[])), Some(&Integer::from(-1)));
        assert_eq!(s.coeff(&set(3, &[1])), Some(&Integer::from(1)));
        assert_eq!(s.num_terms(), 2);

        // a single permutation is not in Σ_n for n ≥ 2
        let mut f = GroupAlgebraElement::zero(3);
        f.add_term(&ring, perm(&[2, 1, 3]), Integer::from(1));
        assert!(expand_in_sigma(&ring, &f).is_err());
    }

    #[test]
    fn dynkin_expands_with_laurent_coefficients() {
        let ring = LaurentRing;
        let q = LaurentPoly::variable();
        // V_2 = (1+q) B_∅ - q B_{1}
        let v2 = dynkin_element(&ring, 2, &q);
        let s = expand_in_sigma(&ring, &v2).unwrap();
        let one_plus_q = LaurentPoly::from_int(1).add(&q);
        assert_eq!(s.coeff(&set(2, &[])), Some(&one_plus_q));
        assert_eq!(s.coeff(&set(2, &[1])), Some(&q.neg()));
    }

    #[test]
    fn materialize_round_trip() {
        let ring = Integers;
        for n in 1..=5 {
            let f = SigmaElement::from_terms(
                &ring,
                n,
                Basis::B,
                SubsetOfRanks::all(n)
                    .enumerate()
                    .map(|(idx, s)| (s, Integer::from((idx as i64 % 5) - 2))),
            );
            let g = materialize_sigma(&ring, &f);
            let back = expand_in_sigma(&ring, &g).unwrap();
            assert_eq!(back, f);
        }
    }
}
