//! Exact arithmetic in F_q with q = p^m, the trace map down to F_p, and
//! exact sums of p-th roots of unity.
//!
//! Elements are canonical integers in `[0, q)`, read as base-p digit
//! vectors in the polynomial basis: element `e` has constant coefficient
//! `e % p`, then `x`-coefficient `(e / p) % p`, and so on. The additive
//! character is fixed once and for all as `chi(a) = zeta_p^{Tr(a)}`; all
//! quantities exposed downstream are character-independent integers, so
//! any nontrivial character would give the same results.
//!
//! No floating point is used anywhere. Character sums are carried as
//! [`CycSum`] values, integer coefficient vectors over the powers of
//! `zeta_p`, normalized modulo the all-ones vector (since
//! `1 + zeta + ... + zeta^{p-1} = 0`).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Built-in irreducible moduli (little-endian coefficients, constant term
/// first) for the small extension fields the CLI accepts without an
/// explicit modulus argument.
const BUILTIN_MODULI: &[(u64, &[u64])] = &[
    (4, &[1, 1, 1]),        // x^2 + x + 1 over F_2
    (8, &[1, 1, 0, 1]),     // x^3 + x + 1 over F_2
    (9, &[2, 2, 1]),        // x^2 + 2x + 2 over F_3
    (16, &[1, 1, 0, 0, 1]), // x^4 + x + 1 over F_2
    (25, &[2, 4, 1]),       // x^2 + 4x + 2 over F_5
    (27, &[1, 2, 0, 1]),    // x^3 + 2x + 1 over F_3
];

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A concrete finite field F_{p^m}, immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Little-endian coefficients of the monic modulus, length m + 1.
    /// Empty for prime fields (m = 1), where no modulus is needed.
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Builds F_{p^m}. A modulus (little-endian, monic, degree m over F_p)
    /// is required when m > 1 and q is not in the built-in table.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::OutOfRange("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(m)
            .ok_or_else(|| Error::TooLarge(format!("field size {p}^{m}")))?;
        if m == 1 {
            return Ok(FieldSpec {
                p,
                m,
                q,
                modulus: Vec::new(),
            });
        }
        let modulus: Vec<u64> = match modulus {
            Some(c) => c.iter().map(|&x| x % p).collect(),
            None => BUILTIN_MODULI
                .iter()
                .find(|(size, _)| *size == q)
                .map(|(_, c)| c.to_vec())
                .ok_or_else(|| {
                    Error::OutOfRange(format!("no built-in modulus for q = {q}; supply one"))
                })?,
        };
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::OutOfRange(
                "modulus must be monic of degree m".into(),
            ));
        }
        let field = FieldSpec { p, m, q, modulus };
        if !field.modulus_irreducible() {
            return Err(Error::ReducibleModulus);
        }
        Ok(field)
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        FieldSpec::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Little-endian modulus coefficients; empty for m = 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn check_element(&self, a: u64) -> Result<()> {
        if a < self.q {
            Ok(())
        } else {
            Err(Error::OutOfRangeElement {
                value: a,
                q: self.q,
            })
        }
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut d = vec![0; self.m as usize];
        let mut a = a;
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack_digits(&self, d: &[u64]) -> u64 {
        let mut v = 0;
        for &c in d.iter().rev() {
            v = v * self.p + c % self.p;
        }
        v
    }

    /// Trial division by every monic polynomial of degree 1..=m/2 over F_p.
    fn modulus_irreducible(&self) -> bool {
        let m = self.m as usize;
        for deg in 1..=m / 2 {
            // Monic candidates of this degree, low coefficients counted in base p.
            let count = self.p.pow(deg as u32);
            for idx in 0..count {
                let mut cand = vec![0u64; deg + 1];
                let mut t = idx;
                for c in cand.iter_mut().take(deg) {
                    *c = t % self.p;
                    t /= self.p;
                }
                cand[deg] = 1;
                if poly_rem_is_zero(&self.modulus, &cand, self.p) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, a: u64, b: u64) -> Result<u64> {
        self.check_element(a)?;
        self.check_element(b)?;
        if self.m == 1 {
            return Ok((a + b) % self.p);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        Ok(self.pack_digits(&sum))
    }

    pub fn neg(&self, a: u64) -> Result<u64> {
        self.check_element(a)?;
        if self.m == 1 {
            return Ok((self.p - a % self.p) % self.p);
        }
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        Ok(self.pack_digits(&d))
    }

    pub fn sub(&self, a: u64, b: u64) -> Result<u64> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn mul(&self, a: u64, b: u64) -> Result<u64> {
        self.check_element(a)?;
        self.check_element(b)?;
        if self.m == 1 {
            return Ok(a * b % self.p);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce modulo the monic modulus, high degree first.
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mc) in self.modulus.iter().enumerate().take(m) {
                let idx = i - m + j;
                prod[idx] = (prod[idx] + c * ((self.p - mc) % self.p)) % self.p;
            }
        }
        Ok(self.pack_digits(&prod[..m]))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> Result<u64> {
        self.check_element(a)?;
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        self.check_element(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        self.pow(a, self.q - 2)
    }

    /// The absolute trace Tr(a) = a + a^p + ... + a^{p^{m-1}}, returned as
    /// an integer in [0, p). For m = 1 this is the identity.
    pub fn trace(&self, a: u64) -> Result<u64> {
        self.check_element(a)?;
        if self.m == 1 {
            return Ok(a);
        }
        let mut acc = a;
        let mut term = a;
        for _ in 1..self.m {
            term = self.pow(term, self.p)?;
            acc = self.add(acc, term)?;
        }
        // The trace lands in the prime subfield, whose elements are the
        // canonical integers 0..p.
        debug_assert!(acc < self.p, "trace left the prime subfield");
        Ok(acc)
    }

    /// Dot product of two vectors over the field.
    pub fn dot(&self, u: &[u64], v: &[u64]) -> Result<u64> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        let mut acc = 0;
        for (&a, &b) in u.iter().zip(v) {
            acc = self.add(acc, self.mul(a, b)?)?;
        }
        Ok(acc)
    }
}

/// Remainder test: does `divisor` divide `poly` over F_p? Both little-endian.
fn poly_rem_is_zero(poly: &[u64], divisor: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let d = divisor.len() - 1;
    // Divisor is monic, so plain synthetic division works.
    while rem.len() > d {
        let lead = *rem.last().unwrap() % p;
        let top = rem.len() - 1;
        if lead != 0 {
            for (j, &dc) in divisor.iter().enumerate().take(d) {
                let idx = top - d + j;
                rem[idx] = (rem[idx] + lead * ((p - dc % p) % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

/// An exact integer combination of p-th roots of unity,
/// `sum_c coeffs[c] * zeta_p^c`. Two sums are equal iff their coefficient
/// vectors differ by an integer multiple of the all-ones vector.
#[derive(Debug, Clone)]
pub struct CycSum {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl CycSum {
    pub fn zero(p: u64) -> Self {
        CycSum {
            p,
            coeffs: vec![BigInt::zero(); p as usize],
        }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != p as usize {
            return Err(Error::LengthMismatch {
                left: coeffs.len(),
                right: p as usize,
            });
        }
        Ok(CycSum { p, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Adds one root `zeta_p^c` to the sum.
    pub fn add_root(&mut self, c: u64) {
        let idx = (c % self.p) as usize;
        self.coeffs[idx] += 1;
    }

    pub fn add_assign(&mut self, other: &CycSum) {
        assert_eq!(self.p, other.p, "mixed root orders");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Canonical form: shift so the minimum coefficient is zero.
    pub fn normalized(&self) -> CycSum {
        let min = self
            .coeffs
            .iter()
            .min()
            .cloned()
            .unwrap_or_else(BigInt::zero);
        CycSum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c - &min).collect(),
        }
    }

    /// The integer value, if the sum is a rational integer — that is, if
    /// after normalization all coefficients past index 0 coincide. The
    /// value is then coeffs[0] - coeffs[1].
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.p == 2 {
            return Some(&self.coeffs[0] - &self.coeffs[1]);
        }
        let tail = &self.coeffs[1];
        if self.coeffs[2..].iter().all(|c| c == tail) {
            Some(&self.coeffs[0] - tail)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_integer().map(|v| v.is_zero()).unwrap_or(false)
    }
}

impl PartialEq for CycSum {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        self.normalized().coeffs == other.normalized().coeffs
    }
}

impl Eq for CycSum {}

/// Sums `chi(a)` over the given multiset of field elements, as an exact
/// cyclotomic integer. `chi(a) = zeta_p^{Tr(a)}`.
pub fn char_sum(field: &FieldSpec, values: impl IntoIterator<Item = u64>) -> Result<CycSum> {
    let mut sum = CycSum::zero(field.p());
    for a in values {
        sum.add_root(field.trace(a)?);
    }
    Ok(sum)
}
