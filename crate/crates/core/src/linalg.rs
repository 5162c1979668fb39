//! Small dense linear algebra over `F_p` and over `F_p[D]/(q)` for irreducible `q`.

use alloc::vec;
use alloc::vec::Vec;

use crate::fp::FpPoly;
use crate::matrix::FpMatrix;
use crate::ring::RingContext;

/// Returns invertible `U` and the valuations of the diagonal of `U A V`
/// (`None` for zero rows), so that `x A = 0` iff `(x U^{-1})_i p^{e_i} = 0`.
fn smith_left(ctx: RingContext, mut a: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<Option<u32>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut u: Vec<Vec<u64>> = (0..rows).map(|i| (0..rows).map(|j| u64::from(i == j)).collect()).collect();
    let mut diag = vec![None; rows];
    let mut col_used = vec![false; cols];
    for t in 0..rows.min(cols) {
        // Pivot of least valuation in the remaining block.
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate() {
                if col_used[j] || x == 0 {
                    continue;
                }
                let v = ctx.valuation(x);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        col_used[pj] = true;
        let pv = ctx.p().pow(v);
        let unit_inv = ctx.inv(a[t][pj] / pv).expect("unit part");
        for i in 0..rows {
            if i == t || a[i][pj] == 0 {
                continue;
            }
            // a[i][pj] is divisible by p^v because v is minimal.
            let f = ctx.mul(a[i][pj] / pv, unit_inv);
            for c in 0..cols {
                let sub = ctx.mul(f, a[t][c]);
                a[i][c] = ctx.sub(a[i][c], sub);
            }
            for c in 0..rows {
                let sub = ctx.mul(f, u[t][c]);
                u[i][c] = ctx.sub(u[i][c], sub);
            }
        }
        // Column operations clear the rest of row t without touching U.
        diag[t] = Some(v);
        for c in 0..cols {
            if c != pj {
                a[t][c] = 0;
            }
        }
    }
    (u, diag)
}

/// Generators over `Z/p^r` of `{x : x a = 0}`, where `a` has one row per unknown.
pub(crate) fn left_kernel_zpr(ctx: RingContext, a: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let (u, diag) = smith_left(ctx, a);
    let (p, r) = (ctx.p(), ctx.r());
    u.into_iter()
        .zip(diag)
        .filter_map(|(row, e)| {
            let scale = match e {
                None => 1,
                Some(e) if e > 0 => p.pow(r - e.min(r)),
                Some(_) => return None,
            };
            let v: Vec<u64> = row.iter().map(|&x| ctx.mul(x, scale)).collect();
            v.iter().any(|&x| x != 0).then_some(v)
        })
        .collect()
}

/// Every `x` over `F_p` with `x a = b`, where `a` has one row per unknown.
pub(crate) fn solve_affine_fp(field: RingContext, a: &[Vec<u64>], b: &[u64]) -> Vec<Vec<u64>> {
    let p = field.p();
    let unknowns = a.len();
    let mut aug = a.to_vec();
    aug.push(b.iter().map(|&x| field.neg(x)).collect());
    let mut basis = left_kernel_zpr(field, aug);
    let Some(pos) = basis.iter().position(|v| v[unknowns] != 0) else { return Vec::new() };
    let mut particular = basis.swap_remove(pos);
    let s = field.inv(particular[unknowns]).expect("field");
    particular.iter_mut().for_each(|x| *x = field.mul(*x, s));
    for v in basis.iter_mut() {
        let f = v[unknowns];
        for (x, &y) in v.iter_mut().zip(&particular) {
            *x = field.sub(*x, field.mul(f, y));
        }
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; basis.len()];
    loop {
        let mut x = particular[..unknowns].to_vec();
        for (v, &c) in basis.iter().zip(&digits) {
            for (xi, &vi) in x.iter_mut().zip(v) {
                *xi = field.add(*xi, field.mul(c, vi));
            }
        }
        out.push(x);
        let Some(i) = digits.iter().position(|&c| c + 1 < p) else { return out };
        digits[i] += 1;
        digits[..i].iter_mut().for_each(|c| *c = 0);
    }
}

/// Arithmetic in the field `F_p[D]/(q)`.
pub(crate) struct ResidueField<'a> {
    q: &'a FpPoly,
}

impl<'a> ResidueField<'a> {
    pub fn new(q: &'a FpPoly) -> Self {
        Self { q }
    }

    pub fn reduce(&self, f: &FpPoly) -> FpPoly {
        f.rem(self.q)
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b).rem(self.q)
    }

    pub fn inv(&self, a: &FpPoly) -> FpPoly {
        let (g, s, _) = a.ext_gcd(self.q);
        debug_assert!(g.is_one(), "inverting a non-unit in F_p[D]/(q)");
        s.rem(self.q)
    }

    /// Nonzero vectors `w` (a basis) with `w * g = 0` modulo `q`.
    pub fn left_kernel(&self, g: &FpMatrix) -> Vec<Vec<FpPoly>> {
        let p = g.context();
        let (k, n) = (g.rows(), g.cols());
        // Eliminate on g^T (n x k): unknown i is row i of g.
        let mut m: Vec<Vec<FpPoly>> =
            (0..n).map(|j| (0..k).map(|i| self.reduce(g.get(i, j))).collect()).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..k {
            let Some(piv) = (rank..n).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, piv);
            let inv = self.inv(&m[rank][col]);
            for x in m[rank].iter_mut() {
                *x = self.mul(x, &inv);
            }
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..k {
                        let sub = self.mul(&f, &m[rank][c]);
                        m[r][c] = m[r][c].sub(&sub).rem(self.q);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (0..k)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![FpPoly::zero(p); k];
                v[free] = FpPoly::one(p);
                for (r, &col) in pivots.iter().enumerate() {
                    v[col] = m[r][free].neg();
                }
                v
            })
            .collect()
    }
}
