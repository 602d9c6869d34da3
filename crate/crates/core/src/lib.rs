//! Exact computations in the descent algebra `Σ_n` of the symmetric group.
//!
//! The crate provides four layers, each usable on its own:
//!
//! * [`scalars`] — exact scalar arithmetic: arbitrary-precision rationals,
//!   Laurent polynomials in a parameter `q`, and cyclotomic field elements
//!   `ℚ(ζ_p) = ℚ[x]/Φ_p(x)`, all behind a common [`scalars::Ring`] /
//!   [`scalars::Field`] interface.
//! * [`compositions`] — integer compositions of `n`, subsets of `[n-1]`, the
//!   bijection between them, refinement, block splitting, and the order-`p`
//!   Fibonacci numbers counting compositions with no part divisible by `p`.
//! * [`symmetric_group`] — permutations, descent sets, the group algebra
//!   `kS_n` as a sparse structure over any scalar ring, and the q-deformed
//!   Dynkin operator in its two group-algebra forms. This layer is the
//!   brute-force oracle everything else is checked against.
//! * [`descent_algebra`] — `Σ_n` in its `B` and `D` bases: multiplication by
//!   contingency-matrix enumeration (Solomon's Mackey formula), the closed
//!   formula for the action of the q-Dynkin operator on the `B`-basis,
//!   survivor matrices and the split/merge involution behind it, eigenvalues,
//!   exact ranks over cyclotomic fields, and the diagonalizability probe.
//!
//! All arithmetic is exact; there are no floating-point code paths. The crate
//! is `no_std` (with `alloc`); IO, serialization and the command-line
//! interface live in the companion `descent-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod compositions;
pub mod descent_algebra;
pub mod scalars;
pub mod symmetric_group;

pub use compositions::{Composition, SubsetOfRanks};
pub use descent_algebra::{Basis, SigmaElement};
pub use scalars::{Field, Integer, Rational, Ring};
pub use symmetric_group::{GroupAlgebraElement, Permutation};
