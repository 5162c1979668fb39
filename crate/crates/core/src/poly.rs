//! Dense polynomials over `Z/p^r`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::fp::{FpPoly, MonicIter};
use crate::ring::RingContext;
use crate::{Error, Result};

/// Degree of a polynomial. The zero polynomial has degree `NegInf`, which
/// orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

pub(crate) fn write_coeffs(f: &mut fmt::Formatter<'_>, coeffs: &[u64]) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// Polynomial over `Z/p^r` with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZprPoly {
    ctx: RingContext,
    coeffs: Vec<u64>,
}

impl ZprPoly {
    /// Builds a polynomial, reducing every coefficient modulo `p^r`.
    pub fn new(ctx: RingContext, coeffs: Vec<u64>) -> Self {
        let mut f = Self { ctx, coeffs };
        for c in &mut f.coeffs {
            *c = ctx.reduce(*c);
        }
        f.trim();
        f
    }

    pub fn from_coeffs(ctx: RingContext, coeffs: &[u64]) -> Self {
        Self::new(ctx, coeffs.to_vec())
    }

    /// Signed coefficients, e.g. `-1` for `p^r - 1`.
    pub fn from_signed(ctx: RingContext, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.reduce_signed(c)).collect())
    }

    pub fn zero(ctx: RingContext) -> Self {
        Self { ctx, coeffs: Vec::new() }
    }

    pub fn one(ctx: RingContext) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: RingContext, c: u64) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `c * D^k`.
    pub fn monomial(ctx: RingContext, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(ctx, coeffs)
    }

    /// Coefficientwise lift of an `F_p` polynomial (residues taken in `[0, p)`).
    pub fn lift(ctx: RingContext, f: &FpPoly) -> Self {
        assert_eq!(ctx.p(), f.prime(), "lifting across different primes");
        Self::new(ctx, f.coeffs().to_vec())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Reduction modulo `p`.
    pub fn project(&self) -> FpPoly {
        FpPoly::new(self.ctx.p(), self.coeffs.clone())
    }

    /// Not a zero divisor. Over `Z/p^r[D]` a polynomial is a zero divisor iff
    /// `p^(r-1)` annihilates it, i.e. iff its projection vanishes.
    pub fn is_regular(&self) -> bool {
        self.coeffs.iter().any(|&c| self.ctx.is_unit(c))
    }

    /// Invertible in `Z/p^r[D]`: unit constant term, every other coefficient in `(p)`.
    pub fn is_unit_poly(&self) -> bool {
        match self.coeffs.split_first() {
            None => false,
            Some((&c0, rest)) => self.ctx.is_unit(c0) && rest.iter().all(|&c| !self.ctx.is_unit(c)),
        }
    }

    /// Reduction into `Z/p^j` for a smaller exponent `j`.
    pub fn reduce_to(&self, ctx: RingContext) -> Self {
        assert_eq!(ctx.p(), self.ctx.p());
        assert!(ctx.r() <= self.ctx.r());
        Self::new(ctx, self.coeffs.clone())
    }

    /// Divides every coefficient by `p^j`, returning the quotient modulo `p`.
    /// All coefficients must be divisible by `p^j`.
    pub(crate) fn div_p_pow_mod_p(&self, j: u32) -> FpPoly {
        let pj = self.ctx.p().pow(j);
        debug_assert!(self.coeffs.iter().all(|c| c % pj == 0));
        FpPoly::new(self.ctx.p(), self.coeffs.iter().map(|c| c / pj).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect())
    }

    /// Multiplication by `D^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { ctx: self.ctx, coeffs }
    }

    /// Lowest exponent with a nonzero coefficient (`None` for zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Division by `D^k`, assuming the low `k` coefficients vanish.
    pub(crate) fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|&c| c == 0));
        Self::new(self.ctx, self.coeffs.iter().skip(k).copied().collect())
    }

    /// Truncation modulo `D^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.ctx, self.coeffs.iter().take(n).copied().collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder by a monic polynomial: `self = q*m + rem`, `deg rem < deg m`.
    pub fn divrem_monic(&self, m: &Self) -> Result<(Self, Self)> {
        self.check_ctx(m)?;
        if !m.is_monic() {
            return Err(Error::NotMonic);
        }
        let dm = m.coeffs.len() - 1;
        if self.coeffs.len() <= dm {
            return Ok((Self::zero(self.ctx), self.clone()));
        }
        let ctx = self.ctx;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dm];
        for i in (dm..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - dm] = c;
            for (j, &b) in m.coeffs.iter().enumerate() {
                let idx = i - dm + j;
                rem[idx] = ctx.sub(rem[idx], ctx.mul(c, b));
            }
        }
        Ok((Self::new(ctx, quot), Self::new(ctx, rem)))
    }

    /// `true` iff the monic `self` divides `f`.
    pub fn divides_monic(&self, f: &Self) -> Result<bool> {
        Ok(f.divrem_monic(self)?.1.is_zero())
    }

    /// Exact quotient by a monic divisor, `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, m: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divrem_monic(m)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Splits a regular polynomial as `monic * unit`.
    ///
    /// The monic factor has the degree of the projection and projects onto the
    /// monic associate of `project(self)`. Both factors are refined one `p`-adic
    /// layer at a time: writing the current error as `p^j e`, dividing `e` by the
    /// monic factor modulo `p` yields the corrections for the unit and monic parts.
    pub fn monic_unit_split(&self) -> Result<(Self, Self)> {
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        let ctx = self.ctx;
        let p = ctx.p();
        let bar = self.project();
        let lc = bar.leading().expect("regular");
        let lc_inv = crate::ring::inv_mod(lc, p).expect("field");
        let mut monic = Self::lift(ctx, &bar.monic());
        let mut unit = Self::constant(ctx, lc);
        for j in 1..ctx.r() {
            let err = self - &(&monic * &unit);
            if err.is_zero() {
                break;
            }
            let e = err.div_p_pow_mod_p(j);
            let (q, rem) = e.divrem(&monic.project()).expect("monic divisor");
            let pj = p.pow(j);
            unit = &unit + &Self::lift(ctx, &q).scale(pj);
            monic = &monic + &Self::lift(ctx, &rem.scale(lc_inv)).scale(pj);
        }
        if &monic * &unit != *self {
            return Err(Error::VerificationFailed(alloc::format!(
                "monic x unit split of {self} did not reconstruct"
            )));
        }
        Ok((monic, unit))
    }

    /// Inverse of a unit polynomial. Writing `u = c (1 + e)` with `e` having
    /// coefficients in `(p)`, the inverse is `c^-1 * sum_{i<r} (-e)^i`.
    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit_poly() {
            return Err(Error::NotUnit);
        }
        let ctx = self.ctx;
        let c_inv = ctx.inv(self.coeffs[0]).expect("unit");
        let mut e = self.scale(c_inv);
        e.coeffs[0] = 0;
        e.trim();
        let neg_e = -&e;
        let mut term = Self::one(ctx);
        let mut acc = Self::one(ctx);
        for _ in 1..ctx.r() {
            term = &term * &neg_e;
            acc = &acc + &term;
        }
        Ok(acc.scale(c_inv))
    }

    /// All monic polynomials of degree exactly `d` over `Z/p^r`, canonical order:
    /// coefficient tuples `(c_0, ..., c_{d-1})` lexicographic from the constant term.
    pub fn enumerate_monic(ctx: RingContext, d: usize) -> impl Iterator<Item = ZprPoly> {
        MonicIter::new(ctx.modulus(), d).map(move |c| ZprPoly::new(ctx, c))
    }

    /// Canonical order used by all search routines (degree, then coefficient tuple).
    pub fn canonical_cmp(&self, other: &Self) -> core::cmp::Ordering {
        crate::fp::canonical_cmp(&self.coeffs, &other.coeffs)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl fmt::Display for ZprPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coeffs(f, &self.coeffs)
    }
}

impl Add for &ZprPoly {
    type Output = ZprPoly;

    fn add(self, rhs: &ZprPoly) -> ZprPoly {
        assert_eq!(self.ctx, rhs.ctx, "adding polynomials over different rings");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.ctx.add(self.coeff(i), rhs.coeff(i))).collect();
        ZprPoly::new(self.ctx, coeffs)
    }
}

impl Sub for &ZprPoly {
    type Output = ZprPoly;

    fn sub(self, rhs: &ZprPoly) -> ZprPoly {
        assert_eq!(self.ctx, rhs.ctx, "subtracting polynomials over different rings");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.ctx.sub(self.coeff(i), rhs.coeff(i))).collect();
        ZprPoly::new(self.ctx, coeffs)
    }
}

impl Neg for &ZprPoly {
    type Output = ZprPoly;

    fn neg(self) -> ZprPoly {
        ZprPoly::new(self.ctx, self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }
}

impl Mul for &ZprPoly {
    type Output = ZprPoly;

    fn mul(self, rhs: &ZprPoly) -> ZprPoly {
        assert_eq!(self.ctx, rhs.ctx, "multiplying polynomials over different rings");
        if self.is_zero() || rhs.is_zero() {
            return ZprPoly::zero(self.ctx);
        }
        let m = u128::from(self.ctx.modulus());
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u128::from(a) * u128::from(b)) % m;
            }
        }
        ZprPoly::new(self.ctx, acc.into_iter().map(|c| c as u64).collect())
    }
}
