//! Exact scalar arithmetic.
//!
//! The scalar tower is: arbitrary-precision integers and rationals (backed by
//! `num-bigint` / `num-rational`), Laurent polynomials in `q` over the
//! rationals, and cyclotomic field elements `ℚ[x]/Φ_p(x)` for `q` a primitive
//! `p`-th root of unity.
//!
//! Rings are passed around as explicit ring objects implementing [`Ring`]
//! (and [`Field`] where inversion exists), because the cyclotomic field
//! carries the runtime parameter `p` that a bare element type cannot supply
//! for `zero`/`one`. All values are immutable after construction and all
//! operations are pure functions.

mod cyclotomic;
mod laurent;

pub use cyclotomic::{
    cyclotomic_polynomial, specialize_at_root, CyclotomicField, CyclotomicNumber,
};
pub use laurent::{laurent_term_strings, LaurentPoly, LaurentRing};

use alloc::string::{String, ToString};
use core::fmt;

use num_traits::{One, Zero};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Renders a rational as `"a/b"`, or just `"a"` when the denominator is one.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// A commutative ring, presented as a ring object over its element type.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Canonical image of a machine integer.
    fn from_int(&self, v: i64) -> Self::Elem;

    /// Image of an exact rational, or `None` when the ring does not contain it.
    fn from_rational(&self, r: &Rational) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn invert(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.invert(b).map(|bi| self.mul(a, &bi))
    }
}

/// The ring of arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = Integer;

    fn zero(&self) -> Integer {
        Integer::zero()
    }
    fn one(&self) -> Integer {
        Integer::one()
    }
    fn add(&self, a: &Integer, b: &Integer) -> Integer {
        a + b
    }
    fn neg(&self, a: &Integer) -> Integer {
        -a
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        a * b
    }
    fn is_zero(&self, a: &Integer) -> bool {
        a.is_zero()
    }
    fn from_int(&self, v: i64) -> Integer {
        Integer::from(v)
    }
    fn from_rational(&self, r: &Rational) -> Option<Integer> {
        if r.denom().is_one() {
            Some(r.numer().clone())
        } else {
            None
        }
    }
}

/// The field of arbitrary-precision rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, v: i64) -> Rational {
        Rational::from_integer(Integer::from(v))
    }
    fn from_rational(&self, r: &Rational) -> Option<Rational> {
        Some(r.clone())
    }
}

impl Field for Rationals {
    fn invert(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// The `r`-integer `[v]_r = r^0 + r^1 + … + r^{v-1}` (zero when `v = 0`).
pub fn q_integer<R: Ring>(ring: &R, v: usize, r: &R::Elem) -> R::Elem {
    let mut acc = ring.zero();
    let mut power = ring.one();
    for _ in 0..v {
        acc = ring.add(&acc, &power);
        power = ring.mul(&power, r);
    }
    acc
}

/// Evaluates a Laurent polynomial with no negative exponents at `q` in an
/// arbitrary ring. Panics if `f` has negative exponents or a coefficient
/// outside the target ring.
pub fn evaluate_laurent<R: Ring>(ring: &R, f: &LaurentPoly, q: &R::Elem) -> R::Elem {
    let mut acc = ring.zero();
    for (&e, c) in f.terms() {
        assert!(e >= 0, "negative exponent {e}: value is not a polynomial in q");
        let c = ring
            .from_rational(c)
            .expect("coefficient does not embed into the target ring");
        acc = ring.add(&acc, &ring.mul(&c, &ring.pow(q, e as u32)));
    }
    acc
}

/// Parses the decimal forms `"a"` and `"a/b"` used in serialized output.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<Integer>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = n.parse::<Integer>().ok()?;
            let d = d.parse::<Integer>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

/// Sign helper: `(-1)^k` as a machine integer.
pub(crate) fn neg_one_pow(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}
