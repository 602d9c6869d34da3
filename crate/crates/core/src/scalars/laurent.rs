//! Laurent polynomials in one variable `q` over the rationals.
//!
//! `q` is treated as an invertible parameter: exponents may be negative.
//! Equality is term-wise; zero coefficients are never stored, so structural
//! equality coincides with mathematical equality.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use num_traits::Zero;

use super::{rational_to_string, Rational, Ring};

/// Sparse Laurent polynomial: map from exponent to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// The variable `q` itself.
    pub fn variable() -> Self {
        Self::monomial(1, Rational::from_integer(1.into()))
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(Rational::from_integer(v.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term iterator in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when no exponent is negative (the zero polynomial qualifies).
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }

    fn insert_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                out.insert_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at a rational point. `None` when a negative exponent
    /// meets `q = 0`.
    pub fn eval_rational(&self, q: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                pow_rational(q, e as u32)
            } else {
                if q.is_zero() {
                    return None;
                }
                pow_rational(&q.recip(), (-e) as u32)
            };
            acc += c * p;
        }
        Some(acc)
    }
}

fn pow_rational(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for _ in 0..e {
        acc *= q;
    }
    acc
}

/// Renders the sorted term-list form used in CSV cells, e.g. `q^0:1,q^3:-2`;
/// the zero polynomial renders as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "q^{}:{}", e, rational_to_string(c))?;
        }
        Ok(())
    }
}

/// The ring of Laurent polynomials with rational coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LaurentRing;

impl Ring for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::from_int(1)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add(b)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.neg()
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn from_int(&self, v: i64) -> LaurentPoly {
        LaurentPoly::from_int(v)
    }
    fn from_rational(&self, r: &Rational) -> Option<LaurentPoly> {
        Some(LaurentPoly::constant(r.clone()))
    }
}

/// Serialization-friendly view: sorted `(exponent, "a/b")` pairs.
pub fn laurent_term_strings(f: &LaurentPoly) -> alloc::vec::Vec<(i64, String)> {
    f.terms().map(|(&e, c)| (e, rational_to_string(c))).collect()
}
