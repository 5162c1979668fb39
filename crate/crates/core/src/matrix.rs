//! Dense matrices over commutative rings of polynomials and fractions.
//!
//! Determinants and minors are computed by cofactor expansion only, so they
//! stay exact over `Z/p^r[D]` where division-based elimination breaks down.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fp::{gcd_fp, FpPoly};
use crate::poly::{Degree, ZprPoly};
use crate::rational::ZprRational;
use crate::ring::RingContext;
use crate::{Error, Result};

/// Minimal commutative-ring interface needed by the matrix routines.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Ctx: Copy + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Ring for ZprPoly {
    type Ctx = RingContext;

    fn ctx(&self) -> RingContext {
        self.context()
    }
    fn zero(ctx: RingContext) -> Self {
        ZprPoly::zero(ctx)
    }
    fn one(ctx: RingContext) -> Self {
        ZprPoly::one(ctx)
    }
    fn is_zero(&self) -> bool {
        ZprPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Ring for FpPoly {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.prime()
    }
    fn zero(p: u64) -> Self {
        FpPoly::zero(p)
    }
    fn one(p: u64) -> Self {
        FpPoly::one(p)
    }
    fn is_zero(&self) -> bool {
        FpPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

impl Ring for ZprRational {
    type Ctx = RingContext;

    fn ctx(&self) -> RingContext {
        self.context()
    }
    fn zero(ctx: RingContext) -> Self {
        ZprRational::zero(ctx)
    }
    fn one(ctx: RingContext) -> Self {
        ZprRational::one(ctx)
    }
    fn is_zero(&self) -> bool {
        ZprRational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.rat_add(other).expect("same ring")
    }
    fn minus(&self, other: &Self) -> Self {
        self.rat_sub(other).expect("same ring")
    }
    fn times(&self, other: &Self) -> Self {
        self.rat_mul(other).expect("same ring")
    }
    fn negated(&self) -> Self {
        self.rat_neg()
    }
}

/// Row-major `rows x cols` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Ring> {
    ctx: T::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Polynomial matrix over `Z/p^r[D]` (an encoder or a parity-check matrix).
pub type PolyMatrix = Matrix<ZprPoly>;
/// Polynomial matrix over `F_p[D]`.
pub type FpMatrix = Matrix<FpPoly>;

/// All maximal minors, keyed by column subsets in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorSet<T> {
    entries: Vec<(Vec<usize>, T)>,
}

impl<T> MinorSet<T> {
    pub fn entries(&self) -> &[(Vec<usize>, T)] {
        &self.entries
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|(_, m)| m)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, cols: &[usize]) -> Option<&T> {
        self.entries.iter().find(|(c, _)| c == cols).map(|(_, m)| m)
    }
}

impl MinorSet<ZprPoly> {
    pub fn project(&self) -> MinorSet<FpPoly> {
        MinorSet { entries: self.entries.iter().map(|(c, m)| (c.clone(), m.project())).collect() }
    }

    /// Builds a minor set from raw values (column subsets are left empty).
    pub fn from_values(values: Vec<ZprPoly>) -> Self {
        Self { entries: values.into_iter().map(|m| (Vec::new(), m)).collect() }
    }
}

/// Lexicographic `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

impl<T: Ring> Matrix<T> {
    pub fn new(ctx: T::Ctx, rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|e| e.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self { ctx, rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is needed to describe a matrix with no rows.
    pub fn from_rows(ctx: T::Ctx, cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadShape(format!("ragged rows, expected {cols} columns")));
        }
        Self::new(ctx, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ctx: T::Ctx, rows: usize, cols: usize) -> Self {
        Self { ctx, rows, cols, data: vec![T::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: T::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one(ctx);
        }
        m
    }

    pub fn context(&self) -> T::Ctx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(v.ctx() == self.ctx, "entry from a different ring");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn map<U: Ring>(&self, ctx: U::Ctx, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self { ctx: self.ctx, rows: self.cols, cols: self.rows, data }
    }

    /// Columns `cols` (in the given order) as a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self { ctx: self.ctx, rows: self.rows, cols: cols.len(), data }
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::BadShape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero(self.ctx);
                for t in 0..self.cols {
                    let a = self.get(i, t);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.plus(&a.times(other.get(t, j)));
                }
                out.data[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::BadShape(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(T::zero(self.ctx), |acc, (i, x)| acc.plus(&x.times(self.get(i, j))))
            })
            .collect())
    }

    pub fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] += multiplier * row[source]`.
    pub fn row_axpy(&mut self, target: usize, source: usize, multiplier: &T) -> Result<()> {
        if multiplier.ctx() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        assert_ne!(target, source, "row_axpy needs distinct rows");
        for j in 0..self.cols {
            let add = multiplier.times(self.get(source, j));
            let idx = target * self.cols + j;
            self.data[idx] = self.data[idx].plus(&add);
        }
        Ok(())
    }

    /// Multiplies a row by an arbitrary ring element (no unit check).
    pub fn row_mul(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = self.data[idx].times(c);
        }
    }

    pub fn set_row(&mut self, i: usize, row: Vec<T>) {
        assert_eq!(row.len(), self.cols);
        for (j, v) in row.into_iter().enumerate() {
            self.set(i, j, v);
        }
    }

    /// Determinant by cofactor expansion (no division).
    pub fn det(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let minors = self.minor_table(self.rows);
        Ok(minors[(1usize << self.cols) - 1].clone().unwrap_or_else(|| T::one(self.ctx)))
    }

    /// All `k x k` minors of an `k x n` matrix, lexicographic by column subset.
    pub fn maximal_minors(&self) -> Result<MinorSet<T>> {
        if self.rows > self.cols {
            return Err(Error::BadShape(format!(
                "{}x{} has no maximal minors (more rows than columns)",
                self.rows, self.cols
            )));
        }
        let table = self.minor_table(self.rows);
        let entries = combinations(self.cols, self.rows)
            .into_iter()
            .map(|cols| {
                let mask = cols.iter().fold(0usize, |m, &c| m | (1 << c));
                let v = table[mask].clone().expect("filled");
                (cols, v)
            })
            .collect();
        Ok(MinorSet { entries })
    }

    /// Laplace expansion table: entry `mask` (with `popcount(mask) <= depth`)
    /// holds the minor on the first `popcount(mask)` rows and columns `mask`.
    fn minor_table(&self, depth: usize) -> Vec<Option<T>> {
        assert!(self.cols < usize::BITS as usize - 1, "too many columns for minor expansion");
        let n = self.cols;
        let mut table: Vec<Option<T>> = vec![None; 1 << n];
        table[0] = Some(T::one(self.ctx));
        for size in 1..=depth {
            let row = size - 1;
            for mask in 0usize..(1 << n) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let mut acc = T::zero(self.ctx);
                let mut above = 0;
                for c in (0..n).rev() {
                    if mask & (1 << c) == 0 {
                        continue;
                    }
                    let a = self.get(row, c);
                    if !a.is_zero() {
                        let sub = table[mask & !(1 << c)].as_ref().expect("smaller minor");
                        if !sub.is_zero() {
                            let term = a.times(sub);
                            acc = if above % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
                        }
                    }
                    above += 1;
                }
                table[mask] = Some(acc);
            }
        }
        table
    }

    /// Adjugate of a square matrix, `adj(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut out = Self::zeros(self.ctx, n, n);
        if n == 1 {
            out.data[0] = T::one(self.ctx);
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let mut sub = Self::zeros(self.ctx, n - 1, n - 1);
                for (a, &r) in rows.iter().enumerate() {
                    for (b, &c) in cols.iter().enumerate() {
                        sub.data[a * (n - 1) + b] = self.get(r, c).clone();
                    }
                }
                let m = sub.det()?;
                out.data[i * n + j] = if (i + j) % 2 == 0 { m } else { m.negated() };
            }
        }
        Ok(out)
    }
}

impl PolyMatrix {
    /// Rows of ascending coefficient slices, mostly for tests.
    pub fn from_coeff_rows(ctx: RingContext, rows: &[&[&[u64]]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| ZprPoly::from_coeffs(ctx, c)).collect())
            .collect();
        Self::from_rows(ctx, cols, rows)
    }

    /// Entrywise reduction modulo `p`.
    pub fn project_matrix(&self) -> FpMatrix {
        self.map(self.ctx.p(), ZprPoly::project)
    }

    /// Coefficientwise lift of an `F_p` matrix.
    pub fn lift(ctx: RingContext, m: &FpMatrix) -> Self {
        m.map(ctx, |f| ZprPoly::lift(ctx, f))
    }

    /// Rows generate a free module of rank `k`: the projected matrix has rank
    /// `k` over `F_p(D)`. Cross-checked against the existence of a regular
    /// maximal minor.
    pub fn is_full_row_rank(&self) -> bool {
        if self.rows > self.cols {
            return false;
        }
        let by_rank = self.project_matrix().rank() == self.rows;
        let by_minor = self
            .maximal_minors()
            .map(|ms| ms.values().any(ZprPoly::is_regular))
            .unwrap_or(false);
        assert_eq!(by_rank, by_minor, "rank and regular-minor criteria disagree on\n{self}");
        by_rank
    }

    /// Determinant is a unit polynomial.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det()?.is_unit_poly())
    }

    /// Scales a row by a unit polynomial.
    pub fn row_scale_by_unit(&mut self, i: usize, unit: &ZprPoly) -> Result<()> {
        if unit.context() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        if !unit.is_unit_poly() {
            return Err(Error::NotUnit);
        }
        self.row_mul(i, unit);
        Ok(())
    }

    /// Largest entry degree.
    pub fn max_degree(&self) -> Degree {
        self.data.iter().map(ZprPoly::degree).max().unwrap_or(Degree::NegInf)
    }
}

impl FpMatrix {
    /// Rank over `F_p(D)` by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<FpPoly>> = self.row_vecs();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(rank, piv);
            let pivot_row = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = x.mul(&pivot_row[col]).sub(&y.mul(&factor));
                }
                if let Ok(g) = gcd_fp(row) {
                    if !g.is_one() {
                        for x in row.iter_mut() {
                            *x = x.divrem(&g).expect("nonzero").0;
                        }
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
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

    fn two_row_g() -> PolyMatrix {
        PolyMatrix::from_coeff_rows(z4(), &[&[&[1, 1], &[1, 1], &[2]], &[&[2, 1], &[1], &[1, 1]]]).unwrap()
    }

    #[test]
    fn det_examples() {
        let m = PolyMatrix::from_coeff_rows(z4(), &[&[&[1, 1], &[2]], &[&[2, 1], &[1, 1]]]).unwrap();
        assert_eq!(m.det().unwrap(), p4(&[1, 0, 1]));
        assert!(PolyMatrix::identity(z4(), 3).det().unwrap().is_one());
        let z = PolyMatrix::from_coeff_rows(z4(), &[&[&[1], &[2]], &[&[], &[]]]).unwrap();
        assert!(z.det().unwrap().is_zero());
        assert_eq!(two_row_g().det(), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn minors_of_two_row_example() {
        let ms = two_row_g().maximal_minors().unwrap();
        let cols: Vec<_> = ms.entries().iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(cols, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let vals: Vec<_> = ms.values().cloned().collect();
        assert_eq!(vals, vec![p4(&[3, 2, 3]), p4(&[1, 0, 1]), p4(&[3, 2, 1])]);

        let one_row = PolyMatrix::from_coeff_rows(z4(), &[&[&[1, 1], &[3, 1]]]).unwrap();
        let vals: Vec<_> = one_row.maximal_minors().unwrap().values().cloned().collect();
        assert_eq!(vals, vec![p4(&[1, 1]), p4(&[3, 1])]);

        let id = PolyMatrix::identity(z4(), 3);
        let vals: Vec<_> = id.maximal_minors().unwrap().values().cloned().collect();
        assert_eq!(vals, vec![p4(&[1])]);

        let tall = PolyMatrix::from_coeff_rows(z4(), &[&[&[1]], &[&[1]]]).unwrap();
        assert!(matches!(tall.maximal_minors(), Err(Error::BadShape(_))));
    }

    #[test]
    fn projection_and_rank() {
        let h = PolyMatrix::from_coeff_rows(z4(), &[&[&[3, 2, 1], &[3, 0, 3], &[3, 2, 3]]]).unwrap();
        let f = FpPoly::from_coeffs(2, &[1, 0, 1]);
        assert_eq!(h.project_matrix().row(0), &[f.clone(), f.clone(), f]);
        let g = two_row_g().project_matrix();
        let expect = [[&[1u64, 1][..], &[1, 1], &[]], [&[0, 1], &[1], &[1, 1]]];
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(g.get(i, j), &FpPoly::from_coeffs(2, expect[i][j]));
            }
        }
        assert!(PolyMatrix::zeros(z4(), 2, 2).project_matrix().is_zero());

        assert!(two_row_g().is_full_row_rank());
        let tall = PolyMatrix::from_coeff_rows(z4(), &[&[&[1]], &[&[1]]]).unwrap();
        assert!(!tall.is_full_row_rank());
        let nil = PolyMatrix::from_coeff_rows(z4(), &[&[&[2], &[2]]]).unwrap();
        assert!(!nil.is_full_row_rank());
    }

    #[test]
    fn unimodularity() {
        assert!(PolyMatrix::identity(z4(), 2).is_unimodular().unwrap());
        let d = PolyMatrix::from_coeff_rows(z4(), &[&[&[1], &[]], &[&[], &[1, 2]]]).unwrap();
        assert!(d.is_unimodular().unwrap());
        let d = PolyMatrix::from_coeff_rows(z4(), &[&[&[1], &[]], &[&[], &[0, 1]]]).unwrap();
        assert!(!d.is_unimodular().unwrap());
    }

    #[test]
    fn row_operations() {
        let g = two_row_g();
        let mut m = g.clone();
        m.row_swap(0, 1);
        m.row_swap(0, 1);
        assert_eq!(m, g);
        assert_eq!(PolyMatrix::identity(z4(), 2).mat_mul(&g).unwrap(), g);
        let mult = p4(&[1, 3, 2]);
        m.row_axpy(1, 0, &mult).unwrap();
        m.row_axpy(1, 0, &-&mult).unwrap();
        assert_eq!(m, g);
        assert_eq!(m.row_scale_by_unit(0, &p4(&[0, 1])), Err(Error::NotUnit));
        m.row_scale_by_unit(0, &p4(&[1, 2])).unwrap();
        m.row_scale_by_unit(0, &p4(&[1, 2])).unwrap();
        assert_eq!(m, g);
    }

    #[test]
    fn adjugate_identity() {
        let m = PolyMatrix::from_coeff_rows(
            z4(),
            &[&[&[1, 1], &[2], &[0, 3]], &[&[2, 1], &[1, 1], &[1]], &[&[3], &[0, 0, 1], &[1, 2]]],
        )
        .unwrap();
        let adj = m.adjugate().unwrap();
        let det = m.det().unwrap();
        let prod = adj.mat_mul(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { det.clone() } else { ZprPoly::zero(z4()) };
                assert_eq!(prod.get(i, j), &want);
            }
        }
    }

    #[test]
    fn combinations_lexicographic() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
