//! Exact arithmetic in GF(p^n), represented as GF(p)[x] modulo a fixed
//! irreducible monic polynomial.
//!
//! The modulus is the lexicographically smallest monic irreducible of degree n
//! (lexicographic on the coefficient tuple (c_{n-1}, ..., c_0)), found by
//! exhaustive search with trial division, so two constructions with the same
//! (p, n) always agree. No cross-field embeddings are performed anywhere, so
//! nothing stronger (e.g. Conway polynomials) is needed.

use crate::arith::{self, is_prime};
use crate::error::{Error, Result};

/// Cap on q = p^n for pure arithmetic.
pub const ARITHMETIC_CAP: u64 = 1 << 62;
/// Cap on q for element-enumeration paths.
pub const ENUMERATION_CAP: u64 = 1 << 20;
/// Cap on the irreducibility-search workload: p^ceil(n/2) trial divisors.
const MODULUS_SEARCH_CAP: u64 = 1 << 16;

/// A concrete finite field GF(p^n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u64,
    n: usize,
    q: u64,
    /// Monic modulus, little-endian: modulus[i] is the coefficient of x^i,
    /// modulus[n] == 1.
    modulus: Vec<u64>,
}

/// An element of a [`Field`], as its coefficient tuple (x^0 ... x^{n-1}).
/// Elements are equal iff their tuples are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl Field {
    /// Constructs GF(p^n) with the deterministic modulus.
    pub fn new(p: u64, n: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        let q = (0..n).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&v| v <= ARITHMETIC_CAP)
        });
        let q = q.ok_or_else(|| {
            Error::Capacity(format!("{p}^{n} exceeds the arithmetic cap 2^62"))
        })?;
        let modulus = smallest_irreducible(p, n)?;
        Ok(Field { p, n, q, modulus })
    }

    /// Constructs the field with q elements, for q a prime power.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, k) = arith::prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Field::new(p, k as usize)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_scalar(1)
    }

    /// Constant-polynomial element c mod p.
    pub fn from_scalar(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    /// Element from explicit coefficients (reduced mod p); the slice length
    /// must not exceed n.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for an extension of degree {}",
                coeffs.len(),
                self.n
            )));
        }
        let mut c = vec![0; self.n];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.p;
        }
        Ok(FieldElement { coeffs: c })
    }

    pub fn is_member(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.n && a.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, a: &FieldElement) {
        assert!(self.is_member(a), "element does not belong to this field");
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        self.check(a);
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let red = poly_rem(&prod, &self.modulus, self.p);
        FieldElement { coeffs: pad(red, self.n) }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        self.check(a);
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(q-2).
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (self.q - 2) as u128))
    }

    /// a^(p^k). Additive in characteristic p, bijective, and of order
    /// dividing n, so k is reduced mod n first.
    pub fn frobenius(&self, a: &FieldElement, k: u32) -> FieldElement {
        let k = (k as usize % self.n) as u32;
        let e = (self.p as u128).pow(k);
        self.pow(a, e)
    }

    /// Index <-> element bijection: index = sum of coeffs[i] * p^i.
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        debug_assert!(idx < self.q);
        let mut coeffs = vec![0; self.n];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        FieldElement { coeffs }
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        self.check(a);
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All q elements in index order; capped at [`ENUMERATION_CAP`].
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        if self.q > ENUMERATION_CAP {
            return Err(Error::Capacity(format!(
                "enumerating GF({}) exceeds the cap 2^20",
                self.q
            )));
        }
        Ok((0..self.q).map(|i| self.element_from_index(i)))
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.n == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.n)
        }
    }
}

fn pad(mut v: Vec<u64>, n: usize) -> Vec<u64> {
    v.resize(n, 0);
    v
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + arith::mod_mul(x, y, p)) % p;
        }
    }
    out
}

/// Remainder of a by a monic divisor, little-endian coefficients.
fn poly_rem(a: &[u64], divisor: &[u64], p: u64) -> Vec<u64> {
    let d = divisor.len() - 1;
    debug_assert_eq!(divisor[d], 1, "divisor must be monic");
    let mut rem: Vec<u64> = a.to_vec();
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let deg = rem.len() - 1;
        if lead != 0 {
            for (i, &dc) in divisor[..d].iter().enumerate() {
                let sub = arith::mod_mul(lead, dc, p);
                let idx = deg - d + i;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
    }
    rem
}

/// Lexicographically smallest monic irreducible of degree n over GF(p),
/// by exhaustive trial division against all monic divisors of degree <= n/2.
fn smallest_irreducible(p: u64, n: usize) -> Result<Vec<u64>> {
    if n == 1 {
        return Ok(vec![0, 1]); // x
    }
    let half = n / 2;
    // workload guard: p^(n/2) candidate divisors per irreducibility test
    let mut divisor_space = 1u64;
    for _ in 0..half {
        divisor_space = divisor_space.saturating_mul(p);
    }
    if divisor_space > MODULUS_SEARCH_CAP {
        return Err(Error::Capacity(format!(
            "irreducibility search for GF({p}^{n}) exceeds the trial-division budget"
        )));
    }

    let count = p.checked_pow(n as u32).expect("q fits u64 after cap check");
    'candidate: for idx in 0..count {
        // idx digits, least significant first, give (c_0, ..., c_{n-1});
        // ascending idx is ascending lex order on (c_{n-1}, ..., c_0)
        let mut candidate = vec![0u64; n + 1];
        let mut v = idx;
        for c in candidate.iter_mut().take(n) {
            *c = v % p;
            v /= p;
        }
        candidate[n] = 1;
        for d in 1..=half {
            let divisors = p.pow(d as u32);
            for didx in 0..divisors {
                let mut divisor = vec![0u64; d + 1];
                let mut w = didx;
                for c in divisor.iter_mut().take(d) {
                    *c = w % p;
                    w /= p;
                }
                divisor[d] = 1;
                let rem = poly_rem(&candidate, &divisor, p);
                if rem.iter().all(|&c| c == 0) {
                    continue 'candidate;
                }
            }
        }
        return Ok(candidate);
    }
    Err(Error::Inconsistency(format!(
        "no irreducible polynomial of degree {n} over GF({p})"
    )))
}
