//! Arithmetic in GF(p^n) with a polynomial basis.
//!
//! A field is fixed by its characteristic `p`, degree `n` and a monic
//! irreducible modulus of degree `n` over GF(p). [`make_field`] picks the
//! lexicographically smallest such modulus, comparing coefficients from the
//! constant term upward, so the same `(p, n)` always yields the same field.
//!
//! Elements are coefficient vectors of length `n` in ascending degree. Each
//! element also has an integer *code* `sum c_i p^i`, which is what the matrix
//! groups use as entry encoding.
//!
//! Construction cost grows with `p^(n/2)` because irreducibility is checked by
//! trial division; the degree is capped at 8, but a large prime with a high
//! degree is still slow.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;

pub const MAX_DEGREE: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree unsupported: {0} (expected 1..={MAX_DEGREE})")]
    DegreeUnsupported(u32),
    #[error("field order {p}^{n} is too large")]
    TooLarge { p: u64, n: u32 },
    #[error("modulus {0:?} is not a monic irreducible polynomial of the stated degree")]
    BadModulus(Vec<u32>),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("field mismatch")]
    FieldMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec")]
pub struct FieldSpec {
    p: u32,
    n: u32,
    /// Coefficients `c_0..=c_n`, ascending, with `c_n = 1`.
    modulus: Vec<u32>,
    #[serde(skip)]
    q: u64,
}

#[derive(Deserialize)]
struct RawFieldSpec {
    p: u32,
    n: u32,
    modulus: Vec<u32>,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = FieldError;

    fn try_from(raw: RawFieldSpec) -> Result<Self, Self::Error> {
        if raw.modulus.len() != raw.n as usize + 1 {
            return Err(FieldError::BadModulus(raw.modulus));
        }
        FieldSpec::with_modulus(raw.p, raw.modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElem {
    p: u32,
    coeffs: Vec<u32>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElem {
    /// Prime-field elements print as integers; others as polynomials in `x`,
    /// highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut terms = Vec::new();
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && deg > 0 { String::new() } else { c.to_string() };
            terms.push(match deg {
                0 => c.to_string(),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{deg}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Builds GF(p^n) with the lexicographically smallest monic irreducible modulus.
pub fn make_field(p: u64, n: u32) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(FieldError::DegreeUnsupported(n));
    }
    let q = checked_order(p, n)?;
    let p32 = p as u32;
    // Candidate k encodes (c_0, .., c_{n-1}) with c_0 most significant, so
    // ascending k is lexicographic order starting at the constant term.
    for k in 0..q {
        let mut modulus = vec![0u32; n as usize + 1];
        let mut rest = k;
        for i in (0..n as usize).rev() {
            modulus[i] = (rest % p) as u32;
            rest /= p;
        }
        modulus[n as usize] = 1;
        if is_irreducible(p32, &modulus) {
            return Ok(FieldSpec { p: p32, n, modulus, q });
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

fn checked_order(p: u64, n: u32) -> Result<u64, FieldError> {
    p.checked_pow(n)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or(FieldError::TooLarge { p, n })
}

impl FieldSpec {
    /// A field over an explicit modulus, validated as monic and irreducible.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        let n = modulus.len().saturating_sub(1) as u32;
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(FieldError::DegreeUnsupported(n));
        }
        let q = checked_order(p as u64, n)?;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) || !is_irreducible(p, &modulus) {
            return Err(FieldError::BadModulus(modulus));
        }
        Ok(Self { p, n, modulus, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `"GF(p^n)"`.
    pub fn name(&self) -> String {
        format!("GF({}^{})", self.p, self.n)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { p: self.p, coeffs: vec![0; self.n as usize] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_code(1)
    }

    /// The class of `x` (equal to the integer 0 when n = 1 and the modulus is `x`).
    pub fn x(&self) -> FieldElem {
        let mut poly = vec![0, 1];
        poly_reduce(self.p, &mut poly, &self.modulus);
        self.reduced_elem(poly)
    }

    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem, FieldError> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(FieldElem { p: self.p, coeffs: coeffs.to_vec() })
    }

    /// Element with code `sum c_i p^i`; panics if `code >= q`.
    pub fn from_code(&self, code: u64) -> FieldElem {
        assert!(code < self.q, "code {code} out of range for {}", self.name());
        let mut coeffs = Vec::with_capacity(self.n as usize);
        let mut rest = code;
        for _ in 0..self.n {
            coeffs.push((rest % self.p as u64) as u32);
            rest /= self.p as u64;
        }
        FieldElem { p: self.p, coeffs }
    }

    pub fn code(&self, a: &FieldElem) -> u64 {
        a.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(|c| self.from_code(c))
    }

    fn check(&self, a: &FieldElem) -> Result<(), FieldError> {
        if a.p != self.p || a.coeffs.len() != self.n as usize {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }

    fn reduced_elem(&self, mut poly: Vec<u32>) -> FieldElem {
        poly.resize(self.n as usize, 0);
        FieldElem { p: self.p, coeffs: poly }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % self.p).collect();
        Ok(FieldElem { p: self.p, coeffs })
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(FieldElem { p: self.p, coeffs })
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let mut prod = poly_mul(self.p, &a.coeffs, &b.coeffs);
        poly_reduce(self.p, &mut prod, &self.modulus);
        Ok(self.reduced_elem(prod))
    }

    pub fn pow(&self, a: &FieldElem, mut k: u64) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let p = self.p;
        // Invariant: s_i * a = r_i (mod modulus).
        let (mut r0, mut r1) = (self.modulus.clone(), trimmed(a.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![1u32]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(p, &r0, &r1);
            let s2 = poly_sub(p, &s0, &poly_mul(p, &quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let scale = inv_mod(r0[0], p);
        let mut s: Vec<u32> = s0.iter().map(|&c| (c as u64 * scale as u64 % p as u64) as u32).collect();
        poly_reduce(p, &mut s, &self.modulus);
        Ok(self.reduced_elem(s))
    }

    /// Inverse as `a^(q-2)`; the independent route used to cross-check [`Self::inv`].
    pub fn inv_by_pow(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        self.pow(a, self.q - 2)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElem) -> Result<u64, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let one = self.one();
        let mut acc = a.clone();
        let mut k = 1;
        while acc != one {
            acc = self.mul(&acc, a)?;
            k += 1;
        }
        Ok(k)
    }

    /// Smallest-code element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElem {
        self.elements()
            .skip(1)
            .find(|a| self.multiplicative_order(a).ok() == Some(self.q - 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Operation tables over element codes.
    pub fn tables(&self) -> FieldTables {
        FieldTables::new(self)
    }
}

/// Add/mul/neg/inv tables indexed by element code, for hot loops.
#[derive(Clone, Debug)]
pub struct FieldTables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FieldTables {
    fn new(field: &FieldSpec) -> Self {
        let q = field.q as usize;
        let elems: Vec<FieldElem> = field.elements().collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = field.code(&field.add(a, b).unwrap()) as u32;
                mul[i * q + j] = field.code(&field.mul(a, b).unwrap()) as u32;
            }
        }
        let neg = elems.iter().map(|a| field.code(&field.neg(a).unwrap()) as u32).collect();
        // inv[0] is unused.
        let inv = elems
            .iter()
            .map(|a| field.inv(a).map(|b| field.code(&b) as u32).unwrap_or(0))
            .collect();
        Self { q, add, mul, neg, inv }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (a, p) = (a as u64, p as u64);
    let mut acc = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

fn trimmed(mut poly: Vec<u32>) -> Vec<u32> {
    while poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trimmed(out.into_iter().map(|c| c as u32).collect())
}

fn poly_sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trimmed(out)
}

/// Quotient and remainder; `divisor` must be nonzero after trimming.
fn poly_divmod(p: u32, dividend: &[u32], divisor: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let divisor = trimmed(divisor.to_vec());
    let mut rem = trimmed(dividend.to_vec());
    let lead_inv = inv_mod(*divisor.last().expect("nonzero divisor"), p) as u64;
    if rem.len() < divisor.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u32; rem.len() - divisor.len() + 1];
    while rem.len() >= divisor.len() {
        let shift = rem.len() - divisor.len();
        let factor = (*rem.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        quot[shift] = factor;
        for (i, &d) in divisor.iter().enumerate() {
            let sub = (factor as u64 * d as u64 % p as u64) as u32;
            rem[shift + i] = (rem[shift + i] + p - sub) % p;
        }
        rem = trimmed(rem);
    }
    (trimmed(quot), rem)
}

fn poly_reduce(p: u32, poly: &mut Vec<u32>, modulus: &[u32]) {
    let (_, rem) = poly_divmod(p, poly, modulus);
    *poly = rem;
}

fn has_root(p: u32, poly: &[u32]) -> bool {
    (0..p).any(|x| {
        poly.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
            == 0
    })
}

/// Root test, then trial division by every monic polynomial of degree `2..=deg/2`.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let poly = trimmed(poly.to_vec());
    let deg = poly.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    if has_root(p, &poly) {
        return false;
    }
    for d in 2..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut rest = k;
            for c in divisor.iter_mut().take(d) {
                *c = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            divisor[d] = 1;
            if poly_divmod(p, &poly, &divisor).1.is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1), Err(FieldError::NotPrime(4)));
        assert_eq!(make_field(2, 0), Err(FieldError::DegreeUnsupported(0)));
        assert_eq!(make_field(2, 9), Err(FieldError::DegreeUnsupported(9)));
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn zero_inverse_and_mismatch() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(&f.zero()), Err(FieldError::ZeroInverse));
        let g = make_field(2, 2).unwrap();
        assert_eq!(f.add(&f.one(), &g.one()), Err(FieldError::FieldMismatch));
        assert_eq!(f.elem(&[7]), Err(FieldError::FieldMismatch));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(FieldSpec::with_modulus(2, vec![1, 0, 1]), Err(FieldError::BadModulus(_))));
    }

    #[test]
    fn display_forms() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.elem(&[1, 2]).unwrap().to_string(), "2x+1");
        assert_eq!(f.elem(&[0, 1]).unwrap().to_string(), "x");
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(make_field(7, 1).unwrap().from_code(5).to_string(), "5");
    }

    #[test]
    fn json_shape() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":2,"n":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(r#"{"p":2,"n":2,"modulus":[1,1,1]}"#).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"n":2,"modulus":[1,0,1]}"#).is_err());
    }
}
