//! Laurent expansion of fractions in `Z/p^r((D))` and Hamming-weight
//! classification of the resulting series.
//!
//! Every regular `b` splits as `b = D^v u + y` where `u(0)` is a unit and
//! `y` has all coefficients in `(p)` and degree `< v`. Since `y^r = 0`,
//!
//! ```text
//! 1/b = (sum_{j<r} (-y)^j (D^v u)^(r-1-j)) / (D^(rv) u^r)
//! ```
//!
//! so every fraction is `D^(-rv) a / w` with `a` a polynomial and `w = u^r`
//! having a unit constant term. The power series `a / w` follows a forward
//! linear recurrence, which gives both windowed coefficients and the eventual
//! period of the expansion.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::ZprPoly;
use crate::rational::ZprRational;
use crate::ring::RingContext;
use crate::{Error, Result};

/// Cap on recurrence steps spent looking for a period.
const PERIOD_SEARCH_LIMIT: u64 = 50_000_000;

/// `D^start * poly`, normalized so `poly(0) != 0` (or `poly = 0`, `start = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    start: i64,
    poly: ZprPoly,
}

impl LaurentPoly {
    pub fn new(start: i64, poly: ZprPoly) -> Self {
        match poly.order() {
            None => Self { start: 0, poly },
            Some(k) => Self { start: start + k as i64, poly: poly.unshift(k) },
        }
    }

    pub fn from_poly(poly: ZprPoly) -> Self {
        Self::new(0, poly)
    }

    pub fn context(&self) -> RingContext {
        self.poly.context()
    }

    /// Lowest exponent carrying a nonzero coefficient (0 for the zero polynomial).
    pub fn start(&self) -> i64 {
        self.start
    }

    /// The polynomial part, `self = D^start * poly()`.
    pub fn poly(&self) -> &ZprPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, e: i64) -> u64 {
        let i = e - self.start;
        if i < 0 {
            0
        } else {
            self.poly.coeff(i as usize)
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.poly.weight()
    }

    /// `(exponent, coefficient)` for every nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.start + i as i64, c))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "D^{e}: {c}")?;
        }
        Ok(())
    }
}

/// Coefficients of a series on `[start_exponent, start_exponent + len)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentWindow {
    start_exponent: i64,
    coeffs: Vec<u64>,
    source: ZprRational,
}

impl LaurentWindow {
    pub fn start_exponent(&self) -> i64 {
        self.start_exponent
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn source(&self) -> &ZprRational {
        &self.source
    }

    pub fn coeff(&self, e: i64) -> Option<u64> {
        let i = e - self.start_exponent;
        (i >= 0).then(|| self.coeffs.get(i as usize).copied()).flatten()
    }

    /// Nonzero coefficients inside the window.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

impl fmt::Display for LaurentWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "D^{}: {}", self.start_exponent + i as i64, c)?;
        }
        Ok(())
    }
}

/// Finite or infinite Hamming weight of a rational series, with a certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightClassification {
    /// The series is the Laurent polynomial `poly`.
    Finite { poly: LaurentPoly, weight: usize },
    /// The series equals `head + D^preperiod * block / (1 - D^period)`,
    /// with `block` (length `period`) not identically zero.
    Infinite { preperiod: i64, period: usize, block: Vec<u64>, head: LaurentPoly },
}

impl WeightClassification {
    pub fn is_finite(&self) -> bool {
        matches!(self, WeightClassification::Finite { .. })
    }

    pub fn finite_weight(&self) -> Option<usize> {
        match self {
            WeightClassification::Finite { weight, .. } => Some(*weight),
            WeightClassification::Infinite { .. } => None,
        }
    }
}

/// `num / den = D^(-shift) * a / w` with `w(0)` a unit.
struct SeriesForm {
    shift: usize,
    a: ZprPoly,
    w: ZprPoly,
    w0_inv: u64,
}

fn series_form(num: &ZprPoly, den: &ZprPoly) -> Result<SeriesForm> {
    if !den.is_regular() {
        return Err(Error::NotRegular);
    }
    let ctx = den.context();
    let v = den.coeffs().iter().position(|&c| ctx.is_unit(c)).expect("regular");
    let y = den.truncate(v);
    let u = ZprPoly::new(ctx, den.coeffs()[v..].to_vec());
    let x = u.shift(v);
    let r = ctx.r();
    let neg_y = -&y;
    let mut acc = ZprPoly::zero(ctx);
    let mut y_pow = ZprPoly::one(ctx);
    for j in 0..r {
        acc = &acc + &(&y_pow * &x.pow(r - 1 - j));
        y_pow = &y_pow * &neg_y;
    }
    let w = u.pow(r);
    let w0_inv = ctx.inv(w.coeff(0)).expect("unit constant term");
    Ok(SeriesForm { shift: r as usize * v, a: num * &acc, w, w0_inv })
}

impl SeriesForm {
    /// First `n` coefficients of the power series `a / w`.
    fn coeffs(&self, n: usize) -> Vec<u64> {
        let ctx = self.w.context();
        let wc = self.w.coeffs();
        let mut s = vec![0u64; n];
        for e in 0..n {
            let mut acc = self.a.coeff(e);
            for (i, &wi) in wc.iter().enumerate().skip(1) {
                if i > e {
                    break;
                }
                acc = ctx.sub(acc, ctx.mul(wi, s[e - i]));
            }
            s[e] = ctx.mul(acc, self.w0_inv);
        }
        s
    }
}

/// Checks `den * D^(-shift) S = num` on all exponents below the truncation point.
fn verify_truncated(num: &ZprPoly, den: &ZprPoly, shift: usize, s: &[u64]) -> Result<()> {
    let ctx = den.context();
    let n = s.len();
    let lhs = (den * &ZprPoly::new(ctx, s.to_vec())).truncate(n);
    let rhs = num.shift(shift).truncate(n);
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::VerificationFailed(format!("expansion of {num} / {den} fails multiply-back")))
    }
}

fn window_from(shift: usize, s: &[u64], lo: i64, hi: i64) -> Vec<u64> {
    (lo..hi)
        .map(|e| {
            let i = e + shift as i64;
            if i < 0 {
                0
            } else {
                s[i as usize]
            }
        })
        .collect()
}

/// Coefficients of `1/b` in `Z/p^r((D))` on `[lo, hi)`, verified by multiplying back.
pub fn invert_in_laurent(b: &ZprPoly, lo: i64, hi: i64) -> Result<LaurentWindow> {
    let one = ZprPoly::one(b.context());
    expand_parts(&one, b, lo, hi, ZprRational::new(one.clone(), b.clone())?)
}

/// Coefficients of `u` on `[lo, hi)`.
pub fn expand(u: &ZprRational, lo: i64, hi: i64) -> Result<LaurentWindow> {
    expand_parts(u.num(), u.den(), lo, hi, u.clone())
}

fn expand_parts(num: &ZprPoly, den: &ZprPoly, lo: i64, hi: i64, source: ZprRational) -> Result<LaurentWindow> {
    if lo >= hi {
        return Err(Error::WindowTooSmall { lo, hi });
    }
    let form = series_form(num, den)?;
    // Always expand past exponent 0 so the multiply-back check sees the constant term.
    let top = hi.max(1) + form.shift as i64 + num.deg().unwrap_or(0) as i64;
    let s = form.coeffs(top as usize);
    verify_truncated(num, den, form.shift, &s)?;
    Ok(LaurentWindow { start_exponent: lo, coeffs: window_from(form.shift, &s, lo, hi), source })
}

/// Decides whether the series of `u` has finitely many nonzero coefficients.
///
/// Both outcomes are checked algebraically before being returned: a finite
/// series `h` must satisfy `den * h = num`, and an infinite one must satisfy
/// `(num - den*head) (1 - D^T) = den * block * D^m`.
pub fn classify_weight(u: &ZprRational) -> Result<WeightClassification> {
    let ctx = u.context();
    let (num, den) = (u.num(), u.den());
    if num.is_zero() {
        return Ok(WeightClassification::Finite { poly: LaurentPoly::from_poly(num.clone()), weight: 0 });
    }
    let form = series_form(num, den)?;
    let shifted_num = num.shift(form.shift);
    if let Some(g) = shifted_num.div_exact_monic(den)? {
        let poly = LaurentPoly::new(-(form.shift as i64), g);
        let weight = poly.weight();
        return Ok(WeightClassification::Finite { poly, weight });
    }

    let dw = form.w.deg().expect("nonzero");
    if dw == 0 {
        return Err(Error::VerificationFailed(format!("{u} has a constant recurrence but is not finite")));
    }
    let e0 = form.a.deg().map_or(0, |d| d + 1);
    let (mu, lambda) = find_cycle(&form, e0, dw)?;
    let mut start = (e0 + mu).saturating_sub(dw);
    let s = form.coeffs(start + 2 * lambda + 1);
    while start > 0 && s[start - 1] == s[start - 1 + lambda] {
        start -= 1;
    }
    let block = s[start..start + lambda].to_vec();
    if block.iter().all(|&c| c == 0) {
        return Err(Error::VerificationFailed(format!("{u} has a zero periodic block")));
    }
    let head = ZprPoly::new(ctx, s[..start].to_vec());

    let lhs = &(&shifted_num - &(den * &head)) * &(&ZprPoly::one(ctx) - &ZprPoly::monomial(ctx, 1, lambda));
    let rhs = (den * &ZprPoly::new(ctx, block.clone())).shift(start);
    if lhs != rhs {
        return Err(Error::VerificationFailed(format!("period certificate for {u} does not verify")));
    }
    Ok(WeightClassification::Infinite {
        preperiod: start as i64 - form.shift as i64,
        period: lambda,
        block,
        head: LaurentPoly::new(-(form.shift as i64), head),
    })
}

/// Brent's cycle detection on the recurrence state `(s_{e-1}, ..., s_{e-dw})`
/// starting at `e = e0`. Returns `(mu, lambda)` in steps.
fn find_cycle(form: &SeriesForm, e0: usize, dw: usize) -> Result<(usize, usize)> {
    let ctx = form.w.context();
    let prefix = form.coeffs(e0);
    let initial: Vec<u64> = (1..=dw).map(|i| if e0 >= i { prefix[e0 - i] } else { 0 }).collect();
    let wc = form.w.coeffs();
    let step = |state: &mut Vec<u64>| {
        let mut acc = 0u64;
        for i in 1..=dw {
            acc = ctx.sub(acc, ctx.mul(wc[i], state[i - 1]));
        }
        let next = ctx.mul(acc, form.w0_inv);
        state.rotate_right(1);
        state[0] = next;
    };

    let mut steps = 0u64;
    let mut power = 1usize;
    let mut lambda = 1usize;
    let mut tortoise = initial.clone();
    let mut hare = initial.clone();
    step(&mut hare);
    while tortoise != hare {
        if power == lambda {
            tortoise.clone_from(&hare);
            power *= 2;
            lambda = 0;
        }
        step(&mut hare);
        lambda += 1;
        steps += 1;
        if steps > PERIOD_SEARCH_LIMIT {
            return Err(Error::SearchBudgetExceeded(steps));
        }
    }
    let mut tortoise = initial.clone();
    let mut hare = initial;
    for _ in 0..lambda {
        step(&mut hare);
    }
    let mut mu = 0;
    while tortoise != hare {
        step(&mut tortoise);
        step(&mut hare);
        mu += 1;
    }
    Ok((mu, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> RingContext {
        RingContext::new(2, 2).unwrap()
    }

    fn p4(c: &[u64]) -> ZprPoly {
        ZprPoly::from_coeffs(z4(), c)
    }

    #[test]
    fn inverse_with_nilpotent_low_terms() {
        let w = invert_in_laurent(&p4(&[2, 0, 1]), -6, 4).unwrap();
        let mut want = [0u64; 10];
        want[2] = 2; // D^-4
        want[4] = 1; // D^-2
        assert_eq!(w.coeffs(), &want[..]);
        assert_eq!(w.coeff(-4), Some(2));
    }

    #[test]
    fn simple_inverses() {
        let w = invert_in_laurent(&p4(&[1]), 0, 3).unwrap();
        assert_eq!(w.coeffs(), &[1, 0, 0]);
        let f2 = RingContext::new(2, 1).unwrap();
        let w = invert_in_laurent(&ZprPoly::from_coeffs(f2, &[1, 1]), 0, 4).unwrap();
        assert_eq!(w.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(invert_in_laurent(&p4(&[2]), 0, 4), Err(Error::NotRegular));
        assert_eq!(invert_in_laurent(&p4(&[1]), 3, 3), Err(Error::WindowTooSmall { lo: 3, hi: 3 }));
    }

    #[test]
    fn expand_examples() {
        let u = ZprRational::new(p4(&[2]), p4(&[1, 1])).unwrap();
        assert_eq!(expand(&u, 0, 5).unwrap().coeffs(), &[2, 2, 2, 2, 2]);
        let u = ZprRational::new(p4(&[1, 1]), p4(&[1, 1])).unwrap();
        assert_eq!(expand(&u, 0, 3).unwrap().coeffs(), &[1, 0, 0]);
        let u = ZprRational::from_poly(p4(&[0, 0, 1]));
        assert_eq!(expand(&u, 0, 4).unwrap().coeffs(), &[0, 0, 1, 0]);
    }

    #[test]
    fn classify_examples() {
        let u = ZprRational::new(p4(&[2]), p4(&[2, 0, 1])).unwrap();
        let c = classify_weight(&u).unwrap();
        assert_eq!(
            c,
            WeightClassification::Finite { poly: LaurentPoly::new(-2, p4(&[2])), weight: 1 }
        );

        let f2 = RingContext::new(2, 1).unwrap();
        let u = ZprRational::new(ZprPoly::one(f2), ZprPoly::from_coeffs(f2, &[1, 1])).unwrap();
        match classify_weight(&u).unwrap() {
            WeightClassification::Infinite { preperiod, period, block, head } => {
                assert_eq!((preperiod, period, block), (0, 1, vec![1]));
                assert!(head.is_zero());
            }
            other => panic!("expected infinite, got {other:?}"),
        }

        let u = ZprRational::from_poly(p4(&[1, 1]));
        assert_eq!(classify_weight(&u).unwrap().finite_weight(), Some(2));
    }

    #[test]
    fn infinite_with_preperiod() {
        // 5D^2 / (1 + D) over Z/9 alternates 5, 4, 5, 4, ...
        let z9 = RingContext::new(3, 2).unwrap();
        let u = ZprRational::new(ZprPoly::from_coeffs(z9, &[0, 0, 5]), ZprPoly::from_coeffs(z9, &[1, 1])).unwrap();
        match classify_weight(&u).unwrap() {
            WeightClassification::Infinite { period, .. } => assert_eq!(period, 2),
            other => panic!("expected infinite, got {other:?}"),
        }
    }
}
