//! Scalars of `Z/p^r` and its residue field `F_p`.

use alloc::format;
use core::fmt;

use crate::{Error, Result};

/// The ring `Z/p^r`, identified by the prime `p` and the exponent `r`.
///
/// Values attached to a context are always stored reduced into `[0, p^r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    p: u64,
    r: u32,
    modulus: u64,
}

/// Largest modulus accepted; keeps every product inside `u128` with room to spare.
const MAX_MODULUS: u64 = 1 << 62;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as u64)
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

impl RingContext {
    /// Builds `Z/p^r`; `p` is checked for primality by trial division.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::BadRing("exponent r must be positive".into()));
        }
        let modulus = p
            .checked_pow(r)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::BadRing(format!("{p}^{r} is too large")))?;
        Ok(Self { p, r, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^r`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p^(r-1)`, the generator of the minimal ideal.
    pub fn top_power(&self) -> u64 {
        self.modulus / self.p
    }

    /// The ring `Z/p^j` for `1 <= j <= r`.
    pub fn with_exponent(&self, j: u32) -> Self {
        assert!(j >= 1 && j <= self.r, "exponent {j} outside 1..={}", self.r);
        Self { p: self.p, r: j, modulus: self.p.pow(j) }
    }

    /// The residue field as a ring context (`r = 1`).
    pub fn residue(&self) -> Self {
        self.with_exponent(1)
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.modulus
    }

    /// Reduces a signed integer into `[0, p^r)`.
    #[inline]
    pub fn reduce_signed(&self, v: i64) -> u64 {
        i128::from(v).rem_euclid(i128::from(self.modulus)) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((u128::from(a) + u128::from(b)) % u128::from(self.modulus)) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let a = a % self.modulus;
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, a: u64) -> Option<u64> {
        inv_mod(a, self.modulus)
    }

    /// Largest `j <= r` with `p^j | a` (`r` for zero).
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.modulus;
        if a == 0 {
            return self.r;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn scalar(&self, value: u64) -> ZprScalar {
        ZprScalar { value: self.reduce(value), ctx: *self }
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.r)
    }
}

/// An element of `Z/p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZprScalar {
    value: u64,
    ctx: RingContext,
}

impl ZprScalar {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn is_unit(&self) -> bool {
        self.ctx.is_unit(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Reduction modulo `p`.
    pub fn project(&self) -> FpScalar {
        FpScalar { value: self.value % self.ctx.p, p: self.ctx.p }
    }
}

impl fmt::Display for ZprScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An element of the residue field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u64,
    p: u64,
}

impl FpScalar {
    pub fn new(value: u64, p: u64) -> Self {
        Self { value: value % p, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
