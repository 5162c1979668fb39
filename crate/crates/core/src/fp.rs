//! Dense polynomials over the prime field `F_p`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::Degree;
use crate::linalg::left_kernel_zpr;
use crate::ring::{inv_mod, mul_mod, RingContext};
use crate::{Error, Result};

/// Polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = Self { p, coeffs };
        for c in &mut f.coeffs {
            *c %= p;
        }
        f.trim();
        f
    }

    pub fn from_coeffs(p: u64, coeffs: &[u64]) -> Self {
        Self::new(p, coeffs.to_vec())
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// `c * D^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
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

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    /// Multiplicity of `D` as a factor.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    /// `Some(s)` when the polynomial is exactly `D^s`.
    pub fn monomial_exponent(&self) -> Option<usize> {
        let s = self.deg()?;
        (self.coeffs[s] == 1 && self.trailing_zeros() == s).then_some(s)
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_mod(lc, self.p).expect("nonzero in a field")),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixing F_p polynomials over different primes");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.p).collect();
        Self::new(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| (self.p - a) % self.p).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixing F_p polynomials over different primes");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    /// Multiplication by `D^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { p: self.p, coeffs }
    }

    /// Euclidean division by a nonzero divisor.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.deg().ok_or(Error::ZeroInput)?;
        let lc_inv = inv_mod(divisor.coeffs[dd], self.p).expect("nonzero in a field");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], lc_inv, self.p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + self.p - mul_mod(c, b, self.p)) % self.p;
            }
        }
        Ok((Self::new(self.p, quot), Self::new(self.p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).expect("nonzero divisor").1
    }

    /// `true` iff `self` divides `f` (zero divides only zero).
    pub fn divides(&self, f: &Self) -> bool {
        if self.is_zero() {
            return f.is_zero();
        }
        f.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = inv_mod(lc, p).expect("field");
                (r0.scale(inv), s0.scale(inv), t0.scale(inv))
            }
        }
    }

    /// All monic polynomials of degree exactly `d` over `F_p`, canonical order.
    pub fn enumerate_monic(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
        MonicIter::new(p, d).map(move |c| FpPoly::new(p, c))
    }

    /// Irreducible factors with multiplicity, in canonical order: squarefree
    /// decomposition followed by Berlekamp splitting.
    pub fn factor(&self) -> Result<Vec<FpPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut out = Vec::new();
        for (g, m) in self.monic().squarefree_parts() {
            for h in g.berlekamp() {
                out.extend(core::iter::repeat_n(h, m));
            }
        }
        out.sort_by(|a, b| canonical_cmp(a.coeffs(), b.coeffs()));
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.deg() {
            None | Some(0) => false,
            Some(_) => self.factor().is_ok_and(|f| f.len() == 1),
        }
    }

    fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p));
        Self::new(self.p, coeffs.collect())
    }

    /// `g` with `g(D)^p = self`, for `self` a polynomial in `D^p`.
    fn pth_root(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().step_by(self.p as usize).copied().collect())
    }

    fn exact_div(&self, d: &Self) -> Self {
        self.divrem(d).expect("nonzero").0
    }

    /// Pairs `(g, m)` of squarefree, pairwise coprime monic `g` with
    /// `self = prod g^m`, for monic `self`.
    fn squarefree_parts(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        if self.deg().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let mut c = if d.is_zero() { self.clone() } else { self.gcd(&d) };
        if !d.is_zero() {
            let mut w = self.exact_div(&c);
            let mut i = 1;
            while !w.is_one() {
                let y = w.gcd(&c);
                let z = w.exact_div(&y);
                if !z.is_one() {
                    out.push((z, i));
                }
                i += 1;
                w = y;
                c = c.exact_div(&w);
            }
        }
        if !c.is_one() {
            let p = self.p as usize;
            out.extend(c.pth_root().squarefree_parts().into_iter().map(|(g, m)| (g, m * p)));
        }
        out
    }

    /// Irreducible factors of a squarefree monic polynomial.
    fn berlekamp(&self) -> Vec<FpPoly> {
        let n = self.deg().expect("nonzero");
        if n <= 1 {
            return vec![self.clone()];
        }
        let p = self.p;
        let field = RingContext::new(p, 1).expect("prime");
        let xp = Self::monomial(p, 1, 1).pow_mod(p, self);
        let mut row = Self::one(p);
        let mut a = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<u64> = (0..n).map(|j| row.coeff(j)).collect();
            v[i] = (v[i] + p - 1) % p;
            a.push(v);
            row = row.mul(&xp).rem(self);
        }
        let basis: Vec<FpPoly> = left_kernel_zpr(field, a).into_iter().map(|v| Self::new(p, v)).collect();
        let count = basis.len();
        let mut factors = vec![self.clone()];
        for v in basis.iter().filter(|v| !v.is_constant()) {
            if factors.len() == count {
                break;
            }
            let mut next = Vec::new();
            for h in factors {
                if h.deg() == Some(1) {
                    next.push(h);
                    continue;
                }
                let mut rest = h;
                for s in 0..p {
                    if rest.is_one() {
                        break;
                    }
                    let g = rest.gcd(&v.sub(&Self::constant(p, s)));
                    if !g.is_one() {
                        rest = rest.exact_div(&g);
                        next.push(g);
                    }
                }
            }
            factors = next;
        }
        factors
    }

    /// `self^e mod m`.
    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Canonical order on monic coefficient vectors: degree first, then the
/// coefficient tuple `(c_0, ..., c_{d-1})` lexicographically.
pub(crate) fn canonical_cmp(a: &[u64], b: &[u64]) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Monic `F_p` gcd of a list; zero entries are ignored.
pub fn gcd_fp(fs: &[FpPoly]) -> Result<FpPoly> {
    let mut nonzero = fs.iter().filter(|f| !f.is_zero());
    let first = nonzero.next().ok_or(Error::AllZero)?;
    let mut g = first.monic();
    for f in nonzero {
        if g.is_one() {
            break;
        }
        g = g.gcd(f);
    }
    Ok(g)
}

/// Odometer over coefficient tuples `(c_0, ..., c_{d-1})` in `[0, base)`,
/// constant term most significant, with a leading 1 appended.
pub(crate) struct MonicIter {
    base: u64,
    digits: Vec<u64>,
    done: bool,
}

impl MonicIter {
    pub(crate) fn new(base: u64, d: usize) -> Self {
        Self { base, digits: vec![0; d], done: false }
    }
}

impl Iterator for MonicIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let mut out = self.digits.clone();
        out.push(1);
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.base {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::poly::write_coeffs(f, &self.coeffs)
    }
}
