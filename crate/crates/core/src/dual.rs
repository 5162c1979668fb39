//! Parity-check matrices and the comparison of a code with its dual.
//!
//! A kernel basis comes from the adjugate of a square block of the encoder with
//! regular determinant: with pivot block `G_P`, column `f` gives the vector
//! `det(G_P) e_f - adj(G_P) G_f` on the pivot columns. Span tests eliminate over
//! the total quotient ring with regular, hence invertible, pivots.

use alloc::format;
use alloc::vec::Vec;

use crate::fp::FpPoly;
use crate::invariant::{delta_of_code, DeltaPolynomial};
use crate::matrix::{combinations, Matrix, PolyMatrix};
use crate::poly::ZprPoly;
use crate::rational::ZprRational;
use crate::ridm::ridm_reduce;
use crate::{Error, Result};

/// An encoder and a parity-check matrix for it, both RIDM.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPair {
    pub g: PolyMatrix,
    pub h: PolyMatrix,
}

/// Proportionality of complementary projected minors.
///
/// For each column set `S` with both minors nonzero the entry holds
/// `(-1)^(sum S) * minor_S(G) / minor_{S^c}(H)` as a reduced fraction over
/// `F_p` with monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorRatioReport {
    pub ratios: Vec<(Vec<usize>, FpPoly, FpPoly)>,
    /// Column sets where exactly one of the two minors vanishes.
    pub mismatched_zeros: Vec<Vec<usize>>,
    /// All ratios coincide and no zero pattern mismatches.
    pub proportional: bool,
    /// The common ratio is a nonzero element of `F_p`.
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub delta_code: DeltaPolynomial,
    pub delta_dual: DeltaPolynomial,
    pub equal: bool,
    pub ratios: MinorRatioReport,
    pub pair: DualPair,
}

fn to_rational(m: &PolyMatrix) -> Matrix<ZprRational> {
    m.map(m.context(), |f| ZprRational::from_poly(f.clone()))
}

/// Reduced row echelon form with regular pivots; returns the pivot column of
/// each row.
fn rref(m: &mut Matrix<ZprRational>) -> Result<Vec<usize>> {
    let mut pivots = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let c = (0..m.cols())
            .find(|&c| !pivots.contains(&c) && m.get(i, c).is_regular())
            .ok_or(Error::NotFullRank)?;
        let inv = m.get(i, c).inverse()?;
        m.row_mul(i, &inv);
        for r in 0..m.rows() {
            if r != i && !m.get(r, c).is_zero() {
                let f = m.get(r, c).rat_neg();
                m.row_axpy(r, i, &f)?;
            }
        }
        pivots.push(c);
    }
    Ok(pivots)
}

/// Scales so that the first entry with nonzero projection has coefficient 1
/// at the degree of that projection.
fn canonicalize_row(row: &mut [ZprPoly]) {
    let Some(entry) = row.iter().find(|e| e.is_regular()) else { return };
    let d = entry.project().deg().expect("regular");
    let ctx = entry.context();
    let c = ctx.inv(entry.coeff(d)).expect("unit coefficient");
    for e in row.iter_mut() {
        *e = e.scale(c);
    }
}

/// A RIDM parity-check matrix `H` with `G H^T = 0`, of size `(n-k) x n`.
pub fn parity_check(g: &PolyMatrix) -> Result<PolyMatrix> {
    if !g.is_full_row_rank() {
        return Err(Error::NotFullRank);
    }
    let ctx = g.context();
    let (k, n) = (g.rows(), g.cols());
    let minors = g.maximal_minors()?;
    let (pivots, det) = minors
        .entries()
        .iter()
        .filter(|(_, m)| m.is_regular())
        .min_by_key(|(_, m)| m.deg())
        .ok_or(Error::NotFullRank)?;
    let adj_t = g.select_columns(pivots).adjugate()?.transpose();
    let mut rows = Vec::with_capacity(n - k);
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let column: Vec<ZprPoly> = (0..k).map(|i| g.get(i, free).clone()).collect();
        let x = adj_t.vec_mul(&column)?;
        let mut row = alloc::vec![ZprPoly::zero(ctx); n];
        row[free] = det.clone();
        for (&c, xi) in pivots.iter().zip(x) {
            row[c] = -&xi;
        }
        rows.push(row);
    }
    let h = PolyMatrix::from_rows(ctx, n, rows)?;
    let (h, _) = ridm_reduce(&h)?;
    let mut rows = h.row_vecs();
    for row in rows.iter_mut() {
        canonicalize_row(row);
    }
    let h = PolyMatrix::from_rows(ctx, n, rows)?;
    if !verify_orthogonality(g, &h)? {
        return Err(Error::VerificationFailed(format!("computed parity check is not orthogonal\n{h}")));
    }
    Ok(h)
}

/// `G H^T = 0` exactly.
pub fn verify_orthogonality(g: &PolyMatrix, h: &PolyMatrix) -> Result<bool> {
    if g.cols() != h.cols() {
        return Err(Error::BadShape(format!("{} columns against {}", g.cols(), h.cols())));
    }
    if g.context() != h.context() {
        return Err(Error::ContextMismatch);
    }
    Ok(g.mat_mul(&h.transpose())?.is_zero())
}

/// Whether `v` is a combination of the rows of the full-rank matrix `h` with
/// coefficients in the total quotient ring.
pub fn in_row_span(h: &PolyMatrix, v: &[ZprPoly]) -> Result<bool> {
    if v.len() != h.cols() {
        return Err(Error::BadShape(format!("vector of length {} against {} columns", v.len(), h.cols())));
    }
    let ctx = h.context();
    let mut r = to_rational(h);
    let pivots = rref(&mut r)?;
    for (j, target) in v.iter().enumerate() {
        let mut acc = ZprRational::zero(ctx);
        for (i, &c) in pivots.iter().enumerate() {
            let coeff = ZprRational::from_poly(v[c].clone());
            acc = acc.rat_add(&coeff.rat_mul(r.get(i, j))?)?;
        }
        if acc != ZprRational::from_poly(target.clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reduce_fraction(num: &FpPoly, den: &FpPoly) -> (FpPoly, FpPoly) {
    let g = num.gcd(den);
    let (mut a, mut b) = (num.divrem(&g).expect("nonzero").0, den.divrem(&g).expect("nonzero").0);
    let lc = b.leading().expect("nonzero");
    let inv = crate::ring::inv_mod(lc, num.prime()).expect("field");
    a = a.scale(inv);
    b = b.scale(inv);
    (a, b)
}

/// Compares each projected maximal minor of `g` with the complementary
/// projected minor of `h`.
pub fn minor_ratio_report(g: &PolyMatrix, h: &PolyMatrix) -> Result<MinorRatioReport> {
    let (k, n) = (g.rows(), g.cols());
    let mut report =
        MinorRatioReport { ratios: Vec::new(), mismatched_zeros: Vec::new(), proportional: true, constant: true };
    if k == 0 || k == n {
        return Ok(report);
    }
    let gm = g.maximal_minors()?.project();
    let hm = h.maximal_minors()?.project();
    for s in combinations(n, k) {
        let complement: Vec<usize> = (0..n).filter(|c| !s.contains(c)).collect();
        let a = gm.get(&s).expect("all subsets present");
        let b = hm.get(&complement).expect("all subsets present");
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let sign_odd = s.iter().sum::<usize>() % 2 == 1;
                let a = if sign_odd { a.neg() } else { a.clone() };
                let (num, den) = reduce_fraction(&a, b);
                report.ratios.push((s, num, den));
            }
            _ => report.mismatched_zeros.push(s),
        }
    }
    report.proportional = report.mismatched_zeros.is_empty()
        && report.ratios.windows(2).all(|w| w[0].1 == w[1].1 && w[0].2 == w[1].2);
    report.constant = report.proportional
        && report.ratios.first().is_none_or(|(_, num, den)| num.is_constant() && den.is_one());
    Ok(report)
}

/// Deltas of a code and of its dual, with the complementary-minor check on
/// the RIDM pair.
pub fn duality_check(g: &PolyMatrix) -> Result<DualityReport> {
    let (g_ridm, _) = ridm_reduce(g)?;
    let h = parity_check(&g_ridm)?;
    let delta_code = delta_of_code(&g_ridm)?;
    let delta_dual = delta_of_code(&h)?;
    let ratios = minor_ratio_report(&g_ridm, &h)?;
    Ok(DualityReport {
        equal: delta_code == delta_dual,
        delta_code,
        delta_dual,
        ratios,
        pair: DualPair { g: g_ridm, h },
    })
}
