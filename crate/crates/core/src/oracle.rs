//! Naive reference implementations for cross-checking the main algorithms.
//!
//! Nothing here shares code with the routines it checks: divisors are found
//! by trial division over full enumerations, kernels by enumeration or by
//! linear algebra over `Z/p^r` on coefficient vectors (the parity check itself
//! uses adjugates), determinants by the permutation expansion.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::fp::FpPoly;
use crate::matrix::{combinations, FpMatrix, Matrix, MinorSet, PolyMatrix, Ring};
use crate::poly::ZprPoly;
use crate::linalg::left_kernel_zpr;
use crate::{Error, Result};

/// Limits for exhaustive searches; exceeding them is an error, never a guess.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_degree: usize,
    pub max_states: u64,
}

impl SearchBudget {
    pub fn new(max_degree: usize, max_states: u64) -> Result<Self> {
        if max_degree == 0 || max_states == 0 {
            return Err(Error::BadShape(format!("budget must be positive, got {max_degree}/{max_states}")));
        }
        Ok(Self { max_degree, max_states })
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_degree: 16, max_states: 20_000_000 }
    }
}

struct Counter {
    used: u64,
    cap: u64,
}

impl Counter {
    fn tick(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            Err(Error::SearchBudgetExceeded(self.cap))
        } else {
            Ok(())
        }
    }
}

/// All coefficient tuples of length `len` over `[0, base)`, constant term first.
fn tuples(base: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut cur = vec![0u64; len];
    let mut done = false;
    core::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        let mut i = len;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < base {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    })
}

fn fp_divides(d: &FpPoly, f: &FpPoly) -> bool {
    f.is_zero() || f.divrem(d).map(|(_, r)| r.is_zero()).unwrap_or(false)
}

fn zpr_divides(q: &ZprPoly, f: &ZprPoly) -> bool {
    let (_, r) = f.divrem_monic(q).expect("monic candidate");
    r.is_zero()
}

/// Least monic common divisor of positive degree by (degree, coefficients).
///
/// A monic divisor of a regular minor cannot exceed its projected degree, so
/// degrees run up to the smallest projected degree of a nonzero projected
/// minor. Candidates are split into a projection (checked over `F_p`) and the
/// higher `p`-adic digits, which are enumerated in full.
pub fn brute_common_divisor(minors: &MinorSet<ZprPoly>, budget: SearchBudget) -> Result<Option<ZprPoly>> {
    let Some(ctx) = minors.values().next().map(ZprPoly::context) else { return Ok(None) };
    let (p, r) = (ctx.p(), ctx.r());
    let projected: Vec<FpPoly> = minors.values().map(ZprPoly::project).collect();
    let Some(top) = projected.iter().filter_map(FpPoly::deg).min() else {
        return Err(Error::NoRegularMinor);
    };
    if top > budget.max_degree {
        return Err(Error::SearchBudgetExceeded(budget.max_degree as u64));
    }
    let mut counter = Counter { used: 0, cap: budget.max_states };
    for d in 1..=top {
        let mut best: Option<ZprPoly> = None;
        for low in tuples(p, d) {
            counter.tick(1)?;
            let mut qbar = low.clone();
            qbar.push(1);
            let qbar = FpPoly::new(p, qbar);
            if !projected.iter().all(|m| fp_divides(&qbar, m)) {
                continue;
            }
            for high in tuples(p, d * (r as usize - 1)) {
                counter.tick(1)?;
                let mut coeffs: Vec<u64> = low.clone();
                for (i, c) in coeffs.iter_mut().enumerate() {
                    let mut pj = p;
                    for j in 0..(r as usize - 1) {
                        *c += pj * high[j * d + i];
                        pj *= p;
                    }
                }
                coeffs.push(1);
                let q = ZprPoly::new(ctx, coeffs);
                if minors.values().all(|m| zpr_divides(&q, m))
                    && best.as_ref().is_none_or(|b| q.coeffs() < b.coeffs())
                {
                    best = Some(q);
                }
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

fn dot_is_zero(v: &[ZprPoly], g: &PolyMatrix) -> bool {
    (0..g.rows()).all(|i| {
        let mut acc = ZprPoly::zero(g.context());
        for (j, x) in v.iter().enumerate() {
            acc = &acc + &(x * g.get(i, j));
        }
        acc.is_zero()
    })
}

/// Every vector with entries of degree at most `bound` orthogonal to all rows
/// of `g`, in canonical order.
pub fn brute_kernel(g: &PolyMatrix, bound: usize, budget: SearchBudget) -> Result<Vec<Vec<ZprPoly>>> {
    let ctx = g.context();
    let n = g.cols();
    let len = n * (bound + 1);
    let total = (0..len).try_fold(1u64, |acc, _| acc.checked_mul(ctx.modulus()));
    match total {
        Some(t) if t <= budget.max_states => {}
        _ => return Err(Error::SearchBudgetExceeded(budget.max_states)),
    }
    let mut out = Vec::new();
    for c in tuples(ctx.modulus(), len) {
        let v: Vec<ZprPoly> =
            (0..n).map(|j| ZprPoly::new(ctx, c[j * (bound + 1)..(j + 1) * (bound + 1)].to_vec())).collect();
        if dot_is_zero(&v, g) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Generators (over `Z/p^r`) of the module of vectors with entries of degree
/// at most `bound` orthogonal to all rows of `g`, via a Smith form of the
/// coefficient map.
pub fn kernel_generators(g: &PolyMatrix, bound: usize) -> Vec<Vec<ZprPoly>> {
    let ctx = g.context();
    let (k, n) = (g.rows(), g.cols());
    let width = bound + 1 + g.max_degree().finite().unwrap_or(0);
    // Row (j, a) is the image of D^a e_j: the coefficients of D^a g_{i,j} for all i.
    let unknowns = n * (bound + 1);
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(unknowns);
    for j in 0..n {
        for s in 0..=bound {
            let mut row = vec![0u64; k * width];
            for i in 0..k {
                for (e, &c) in g.get(i, j).coeffs().iter().enumerate() {
                    row[i * width + e + s] = c;
                }
            }
            a.push(row);
        }
    }
    left_kernel_zpr(ctx, a)
        .into_iter()
        .map(|x| (0..n).map(|j| ZprPoly::new(ctx, x[j * (bound + 1)..(j + 1) * (bound + 1)].to_vec())).collect())
        .filter(|v: &Vec<ZprPoly>| v.iter().any(|e| !e.is_zero()))
        .collect()
}

fn heap_permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut out = vec![(perm.clone(), false)];
    let mut c = vec![0usize; k];
    let mut odd = false;
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            out.push((perm.clone(), odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Leibniz expansion of the determinant.
pub fn det_perm<T: Ring>(m: &Matrix<T>) -> Result<T> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() > 7 {
        return Err(Error::BadShape(format!("{}x{} is too large for the permutation expansion", m.rows(), m.cols())));
    }
    let mut acc = T::zero(m.context());
    for (perm, odd) in heap_permutations(m.rows()) {
        let mut term = T::one(m.context());
        for (i, &j) in perm.iter().enumerate() {
            term = term.times(m.get(i, j));
        }
        acc = if odd { acc.minus(&term) } else { acc.plus(&term) };
    }
    Ok(acc)
}

/// Irreducible factors of `f` (without multiplicity) by plain trial division.
pub fn trial_factors(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.prime();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg().unwrap_or(0) >= 2 * d {
        for low in tuples(p, d) {
            let mut c = low;
            c.push(1);
            let cand = FpPoly::new(p, c);
            if fp_divides(&cand, &rest) {
                out.push(cand.clone());
                while fp_divides(&cand, &rest) {
                    rest = rest.divrem(&cand).expect("nonzero").0;
                }
            }
        }
        d += 1;
    }
    if rest.deg().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

/// Rank of `m` over the field `F_p[D]/(q)`.
fn rank_mod(m: &FpMatrix, q: &FpPoly) -> usize {
    let mut rows: Vec<Vec<FpPoly>> = m.row_vecs().into_iter().map(|r| r.iter().map(|x| x.rem(q)).collect()).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let (_, inv, _) = rows[rank][col].ext_gcd(q);
        let inv = inv.rem(q);
        let pivot: Vec<FpPoly> = rows[rank].iter().map(|x| x.mul(&inv).rem(q)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = x.sub(&f.mul(y)).rem(q);
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Catastrophicity of an encoder over `F_p`: some irreducible `q != D` makes
/// the encoder lose rank modulo `q`.
pub fn massey_sain_fp(g: &FpMatrix) -> Result<bool> {
    let k = g.rows();
    let p = g.context();
    let mut witness_minor = None;
    for cols in combinations(g.cols(), k) {
        let mut sub = FpMatrix::zeros(p, k, k);
        for i in 0..k {
            for (a, &c) in cols.iter().enumerate() {
                sub.set(i, a, g.get(i, c).clone());
            }
        }
        let d = det_perm(&sub)?;
        if !d.is_zero() {
            witness_minor = Some(d);
            break;
        }
    }
    let m = witness_minor.ok_or(Error::NotFullRank)?;
    Ok(trial_factors(&m)
        .into_iter()
        .filter(|q| q.monomial_exponent() != Some(1))
        .any(|q| rank_mod(g, &q) < k))
}
