//! Integer compositions, subsets of `[n-1]`, and the bijection between them.
//!
//! A composition `α = (α_1, …, α_p)` of `n` corresponds to the subset of its
//! partial sums `{α_1, α_1+α_2, …}` (excluding `n`); subsets are stored as
//! bitmasks, bit `i-1` meaning `i` is a member. Enumeration and all matrix
//! indexing downstream follow increasing bitmask order.

use alloc::vec;
use alloc::vec::Vec;

/// A finite sequence of positive integers with cached sum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Composition {
    parts: Vec<usize>,
    n: usize,
}

impl Composition {
    /// Panics if any part is zero. The empty composition (of `n = 0`) is allowed.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "composition parts must be positive");
        let n = parts.iter().sum();
        Composition { parts, n }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new(), n: 0 }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The subset of partial sums `{α_1, α_1+α_2, …}` of `[n-1]`.
    pub fn set_of(&self) -> SubsetOfRanks {
        let mut mask = 0usize;
        let mut acc = 0usize;
        for &p in &self.parts {
            acc += p;
            if acc < self.n {
                mask |= 1 << (acc - 1);
            }
        }
        SubsetOfRanks { n: self.n, mask }
    }
}

/// A subset of `[n-1] = {1, …, n-1}` in bitmask form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubsetOfRanks {
    n: usize,
    mask: usize,
}

impl SubsetOfRanks {
    pub fn empty(n: usize) -> Self {
        SubsetOfRanks { n, mask: 0 }
    }

    /// The full set `[n-1]`.
    pub fn full(n: usize) -> Self {
        SubsetOfRanks { n, mask: full_mask(n) }
    }

    pub fn from_mask(n: usize, mask: usize) -> Self {
        assert!(mask & !full_mask(n) == 0, "mask {mask:#b} exceeds [n-1] for n={n}");
        SubsetOfRanks { n, mask }
    }

    pub fn from_members(n: usize, members: &[usize]) -> Self {
        let mut mask = 0usize;
        for &i in members {
            assert!((1..n).contains(&i), "member {i} outside [n-1] for n={n}");
            mask |= 1 << (i - 1);
        }
        SubsetOfRanks { n, mask }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> usize {
        self.mask
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty_set(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n && self.mask & (1 << (i - 1)) != 0
    }

    /// Members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        (1..self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_subset_of(&self, other: &SubsetOfRanks) -> bool {
        assert_eq!(self.n, other.n, "subset comparison across different n");
        self.mask & !other.mask == 0
    }

    /// The composition of consecutive differences `(i_1, i_2-i_1, …, n-i_p)`.
    pub fn comp_of(&self) -> Composition {
        if self.n == 0 {
            return Composition::empty();
        }
        let mut parts = Vec::with_capacity(self.size() + 1);
        let mut prev = 0usize;
        for i in 1..self.n {
            if self.mask & (1 << (i - 1)) != 0 {
                parts.push(i - prev);
                prev = i;
            }
        }
        parts.push(self.n - prev);
        Composition { parts, n: self.n }
    }

    /// All subsets of `[n-1]` in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetOfRanks> {
        (0..=full_mask(n)).map(move |mask| SubsetOfRanks { n, mask })
    }
}

fn full_mask(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (1 << (n - 1)) - 1
    }
}

/// True when `a` splits into consecutive blocks summing to the parts of `b`
/// (equivalently `Set(b) ⊆ Set(a)`). Panics when `a` and `b` compose
/// different integers.
pub fn refines(a: &Composition, b: &Composition) -> bool {
    assert_eq!(a.n(), b.n(), "refinement compares compositions of the same n");
    b.set_of().is_subset_of(&a.set_of())
}

/// The block decomposition of a refinement: blocks concatenate to `a` and
/// block `i` sums to `b`'s part `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitSequence {
    blocks: Vec<Composition>,
}

impl SplitSequence {
    pub fn blocks(&self) -> &[Composition] {
        &self.blocks
    }

    /// Rightmost entry of each block.
    pub fn last_entries(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .map(|b| *b.parts().last().expect("blocks are nonempty"))
            .collect()
    }
}

/// Splits `a` into the unique block sequence summing to `b`'s parts, or
/// `None` when `a` does not refine `b`.
pub fn split(a: &Composition, b: &Composition) -> Option<SplitSequence> {
    assert_eq!(a.n(), b.n(), "split needs compositions of the same n");
    let mut blocks = Vec::with_capacity(b.len());
    let mut it = a.parts().iter().copied();
    for &target in b.parts() {
        let mut block = Vec::new();
        let mut acc = 0usize;
        while acc < target {
            let part = it.next()?;
            acc += part;
            block.push(part);
        }
        if acc != target {
            return None;
        }
        blocks.push(Composition::new(block));
    }
    Some(SplitSequence { blocks })
}

/// The sequence of rightmost block entries of `comp(K)|comp(I)`, or `None`
/// (the distinguished "undefined" marker) when `I ⊄ K`.
pub fn last_parts(k: &SubsetOfRanks, i: &SubsetOfRanks) -> Option<Vec<usize>> {
    assert_eq!(k.n(), i.n(), "last_parts needs subsets of the same n");
    if !i.is_subset_of(k) {
        return None;
    }
    let blocks = split(&k.comp_of(), &i.comp_of()).expect("I ⊆ K forces a refinement");
    Some(blocks.last_entries())
}

/// All `2^{n-1}` compositions of `n` (one empty composition for `n = 0`),
/// each exactly once, in subset-bitmask order.
pub fn all_compositions(n: usize) -> impl Iterator<Item = Composition> {
    SubsetOfRanks::all(n).map(|s| s.comp_of())
}

/// Compositions of `n` with no part divisible by `p`.
pub fn comps_avoiding_multiples(n: usize, p: usize) -> impl Iterator<Item = Composition> {
    assert!(p >= 2, "avoidance needs p >= 2");
    all_compositions(n).filter(move |c| c.parts().iter().all(|&v| v % p != 0))
}

/// The `n`-th Fibonacci number of order `p`: `s_0 = 0`, `s_n = 2^{n-1}` for
/// `1 ≤ n < p`, and `s_n = s_{n-1} + … + s_{n-p}` from `n ≥ p` on. Counts
/// the compositions of `n` with no part divisible by `p` (for `n ≥ 1`).
pub fn fibonacci_order(n: usize, p: usize) -> u64 {
    assert!(p >= 2, "order-p Fibonacci needs p >= 2");
    assert!(n <= 63, "result would overflow u64");
    let mut s = vec![0u64; n + 1];
    for m in 1..=n {
        s[m] = if m < p {
            1 << (m - 1)
        } else {
            (m - p..m).map(|j| s[j]).sum()
        };
    }
    s[n]
}
