//! Cyclotomic polynomials and the fields `ℚ(ζ_p) = ℚ[x]/Φ_p(x)`.
//!
//! `Φ_m` is computed by exact division, `Φ_m(x) = (x^m − 1) / ∏_{d|m, d<m} Φ_d(x)`.
//! Field elements are residues mod `Φ_p` with rational coefficients; inverses
//! come from the extended Euclidean algorithm in `ℚ[x]`. Arithmetic between
//! elements of distinct `p` is a contract violation and panics.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{rational_to_string, Field, Integer, LaurentPoly, Rational, Ring};

/// `Φ_m(x)` as dense little-endian integer coefficients (monic).
pub fn cyclotomic_polynomial(m: usize) -> Vec<Integer> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    // Compute Φ_d for every divisor d of m in increasing order.
    let mut table: Vec<(usize, Vec<Integer>)> = Vec::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        // x^d - 1
        let mut num = vec![Integer::zero(); d + 1];
        num[0] = -Integer::one();
        num[d] = Integer::one();
        // divide by the product of Φ_e over proper divisors e of d
        let mut den = vec![Integer::one()];
        for (e, phi) in &table {
            if d % e == 0 {
                den = int_poly_mul(&den, phi);
            }
        }
        let phi_d = int_poly_div_exact(&num, &den);
        table.push((d, phi_d));
    }
    table.pop().expect("m divides m").1
}

fn int_poly_mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let mut out = vec![Integer::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials; panics on a nonzero remainder.
fn int_poly_div_exact(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let dn = degree_of(num);
    let dd = degree_of(den);
    assert!(dd <= dn, "division would not be exact");
    let mut rem: Vec<Integer> = num.to_vec();
    let mut quot = vec![Integer::zero(); dn - dd + 1];
    let lead = &den[dd];
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd] / lead;
        assert!(
            (&c * lead) == rem[k + dd],
            "leading coefficient does not divide exactly"
        );
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            let delta = &c * dj;
            rem[k + j] -= delta;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Integer::is_zero), "division left a remainder");
    quot
}

fn degree_of(p: &[Integer]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).expect("zero polynomial")
}

/// An element of `ℚ(ζ_p)`, stored as a residue mod `Φ_p` of degree `< φ(p)`.
///
/// The coefficient vector always has length `deg Φ_p`; two numbers with
/// different `p` are never equal and must not be mixed in arithmetic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicNumber {
    p: usize,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn order(&self) -> usize {
        self.p
    }

    /// Coefficients of `1, ζ, ζ², …` up to degree `φ(p) − 1`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value of a degree-zero element, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Sorted term list in the root-of-unity variable `z`, e.g. `z^0:2,z^1:-2`;
    /// zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "z^{}:{}", i, rational_to_string(c))?;
        }
        Ok(())
    }
}

/// The field `ℚ[x]/Φ_p(x)`; for `p = 1` this is `ℚ` itself (`ζ_1 = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    p: usize,
    modulus: Vec<Rational>,
}

impl CyclotomicField {
    pub fn new(p: usize) -> Self {
        let modulus: Vec<Rational> = cyclotomic_polynomial(p)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        CyclotomicField { p, modulus }
    }

    pub fn order(&self) -> usize {
        self.p
    }

    /// `φ(p)`, the degree of the extension.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The chosen primitive `p`-th root of unity, `x mod Φ_p`.
    pub fn zeta(&self) -> CyclotomicNumber {
        self.from_poly(&[Rational::zero(), Rational::one()])
    }

    /// Reduces an arbitrary-degree rational polynomial mod `Φ_p`.
    pub fn from_poly(&self, coeffs: &[Rational]) -> CyclotomicNumber {
        let deg = self.degree();
        let mut rem: Vec<Rational> = coeffs.to_vec();
        if rem.len() < deg {
            rem.resize(deg, Rational::zero());
        }
        // long division by the monic modulus
        while rem.len() > deg {
            let k = rem.len() - 1;
            let c = rem.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let shift = k - deg;
            for (j, mj) in self.modulus.iter().take(deg).enumerate() {
                let delta = &c * mj;
                rem[shift + j] -= delta;
            }
        }
        rem.resize(deg, Rational::zero());
        CyclotomicNumber {
            p: self.p,
            coeffs: rem,
        }
    }

    /// `ζ^k` for any signed exponent (`ζ^{-1} = ζ^{p-1}`).
    pub fn zeta_pow(&self, e: i64) -> CyclotomicNumber {
        let e = e.rem_euclid(self.p as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        self.from_poly(&coeffs)
    }

    fn check(&self, a: &CyclotomicNumber) {
        assert_eq!(
            a.p, self.p,
            "cyclotomic order mismatch: element has p={}, field has p={}",
            a.p, self.p
        );
    }
}

impl Ring for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            p: self.p,
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    fn one(&self) -> CyclotomicNumber {
        self.from_poly(&[Rational::one()])
    }

    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        CyclotomicNumber {
            p: self.p,
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        CyclotomicNumber {
            p: self.p,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        let mut prod = vec![Rational::zero(); 2 * self.degree().max(1)];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                prod[i + j] += ai * bj;
            }
        }
        self.from_poly(&prod)
    }

    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        self.check(a);
        a.is_zero()
    }

    fn from_int(&self, v: i64) -> CyclotomicNumber {
        self.from_poly(&[Rational::from_integer(v.into())])
    }

    fn from_rational(&self, r: &Rational) -> Option<CyclotomicNumber> {
        Some(self.from_poly(&[r.clone()]))
    }
}

impl Field for CyclotomicField {
    fn invert(&self, a: &CyclotomicNumber) -> Option<CyclotomicNumber> {
        self.check(a);
        if a.is_zero() {
            return None;
        }
        // extended Euclid in Q[x]: s·a + t·Φ_p = gcd = 1 (Φ_p irreducible)
        let (g, s) = ext_gcd_mod(&a.coeffs, &self.modulus);
        // g is a nonzero constant; divide s by it
        debug_assert_eq!(rat_degree(&g), Some(0));
        let ginv = g[0].recip();
        let coeffs: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        Some(self.from_poly(&coeffs))
    }
}

fn rat_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn rat_poly_sub_scaled(a: &mut Vec<Rational>, b: &[Rational], c: &Rational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Rational::zero());
    }
    for (j, bj) in b.iter().enumerate() {
        if !bj.is_zero() {
            let delta = c * bj;
            a[j + shift] -= delta;
        }
    }
}

/// Returns `(gcd, s)` with `s·a ≡ gcd (mod m)`.
fn ext_gcd_mod(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    let mut s0: Vec<Rational> = vec![Rational::zero()];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while let Some(d1) = rat_degree(&r1) {
        let d0 = match rat_degree(&r0) {
            Some(d) => d,
            None => break,
        };
        if d0 < d1 {
            core::mem::swap(&mut r0, &mut r1);
            core::mem::swap(&mut s0, &mut s1);
            continue;
        }
        // one division step: kill the leading term of r0
        let c = &r0[d0] / &r1[d1];
        let shift = d0 - d1;
        rat_poly_sub_scaled(&mut r0, &r1.clone(), &c, shift);
        let mut scaled: Vec<Rational> = vec![Rational::zero(); shift];
        scaled.extend(s1.iter().map(|x| x * &c));
        // s0 -= q * s1 for the single-term quotient q = c x^shift
        if s0.len() < scaled.len() {
            s0.resize(scaled.len(), Rational::zero());
        }
        for (j, v) in scaled.into_iter().enumerate() {
            s0[j] -= v;
        }
        if rat_degree(&r0).map_or(true, |d| d < d1) {
            core::mem::swap(&mut r0, &mut r1);
            core::mem::swap(&mut s0, &mut s1);
        }
    }
    (r0, s0)
}

/// Image of a Laurent polynomial under `q ↦ ζ_p`; negative exponents are
/// cleared through `ζ^{-1} = ζ^{p-1}`.
pub fn specialize_at_root(f: &LaurentPoly, p: usize) -> CyclotomicNumber {
    let field = CyclotomicField::new(p);
    let mut acc = field.zero();
    for (&e, c) in f.terms() {
        let term = field.mul(&field.zeta_pow(e), &field.from_rational(c).expect("rational"));
        acc = field.add(&acc, &term);
    }
    acc
}
