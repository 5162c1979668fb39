//! Internal degree, reduced internal degree matrices (RIDM) and the reduction
//! of an arbitrary full-rank encoder to one.
//!
//! An encoder is RIDM when its maximal minors share no non-unit common divisor
//! in `Z/p^r[D]`. Every non-unit common divisor has a monic associate whose
//! projection divides the projected gcd of the minors, so the search below is
//! exhaustive: enumerate monic divisors of that gcd over `F_p`, then lift them
//! one `p`-adic digit at a time, discarding candidates that already fail modulo
//! the current power of `p`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fp::{gcd_fp, FpPoly};
use crate::linalg::{left_kernel_zpr, solve_affine_fp};
use crate::matrix::{FpMatrix, MinorSet, PolyMatrix};
use crate::poly::ZprPoly;
use crate::ring::RingContext;
use crate::{Error, Result};

/// A monic common divisor of positive degree of all maximal minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonDivisor {
    poly: ZprPoly,
}

impl CommonDivisor {
    pub fn poly(&self) -> &ZprPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.deg().expect("nonzero")
    }

    pub fn into_poly(self) -> ZprPoly {
        self.poly
    }
}

impl fmt::Display for CommonDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// One pass of the reduction: `G <- T G`, then row `row` divided by `divisor`.
#[derive(Clone, Debug, PartialEq)]
pub struct RidmStep {
    pub divisor: ZprPoly,
    pub transform: PolyMatrix,
    pub row: usize,
    pub intdeg_before: usize,
    pub intdeg_after: usize,
}

impl fmt::Display for RidmStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q={} row={} intdeg {}->{}",
            self.divisor, self.row, self.intdeg_before, self.intdeg_after
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RidmTrace {
    pub steps: Vec<RidmStep>,
}

impl RidmTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Replays the trace backwards from the reduced matrix, returning the
    /// original encoder.
    pub fn reconstruct(&self, reduced: &PolyMatrix) -> Result<PolyMatrix> {
        let mut g = reduced.clone();
        for step in self.steps.iter().rev() {
            g.row_mul(step.row, &step.divisor);
            let det = step.transform.det()?;
            let det_inv = det.unit_inverse()?;
            let mut inv = step.transform.adjugate()?;
            for i in 0..inv.rows() {
                inv.row_mul(i, &det_inv);
            }
            g = inv.mat_mul(&g)?;
        }
        Ok(g)
    }
}

impl fmt::Display for RidmTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        Ok(())
    }
}

fn require_full_rank(g: &PolyMatrix) -> Result<()> {
    if g.is_full_row_rank() {
        Ok(())
    } else {
        Err(Error::NotFullRank)
    }
}

/// Largest degree among the nonzero maximal minors.
pub fn intdeg(g: &PolyMatrix) -> Result<usize> {
    require_full_rank(g)?;
    Ok(intdeg_of(&g.maximal_minors()?))
}

fn intdeg_of(minors: &MinorSet<ZprPoly>) -> usize {
    minors.values().filter_map(ZprPoly::deg).max().unwrap_or(0)
}

fn projected_gcd(minors: &MinorSet<ZprPoly>) -> Result<FpPoly> {
    let projected: Vec<FpPoly> = minors.values().map(ZprPoly::project).collect();
    gcd_fp(&projected).map_err(|_| Error::NoRegularMinor)
}

/// Monic divisors of `g` over `F_p` of degree exactly `d`.
fn fp_divisors_of_degree(g: &FpPoly, d: usize) -> Vec<FpPoly> {
    let factors = g.factor().expect("nonzero");
    let mut distinct: Vec<(FpPoly, usize)> = Vec::new();
    for f in factors {
        match distinct.last_mut() {
            Some((last, m)) if *last == f => *m += 1,
            _ => distinct.push((f, 1)),
        }
    }
    let mut out = Vec::new();
    let mut exps = vec![0usize; distinct.len()];
    loop {
        let deg: usize = distinct.iter().zip(&exps).map(|((f, _), e)| e * f.deg().unwrap()).sum();
        if deg == d {
            let mut prod = FpPoly::one(g.prime());
            for ((f, _), &e) in distinct.iter().zip(&exps) {
                for _ in 0..e {
                    prod = prod.mul(f);
                }
            }
            out.push(prod);
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                return out;
            }
            exps[i] += 1;
            if exps[i] <= distinct[i].1 {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Every monic common divisor of degree `d` of the minors, in canonical order.
pub fn common_divisors_of_degree(minors: &MinorSet<ZprPoly>, d: usize) -> Result<Vec<ZprPoly>> {
    let gbar = projected_gcd(minors)?;
    let Some(ctx) = minors.values().next().map(ZprPoly::context) else {
        return Ok(Vec::new());
    };
    if d == 0 || gbar.deg().unwrap_or(0) < d {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    for qbar in fp_divisors_of_degree(&gbar, d) {
        let mut layer = vec![qbar.coeffs().to_vec()];
        for j in 1..ctx.r() {
            let sub = ctx.with_exponent(j + 1);
            let reduced: Vec<ZprPoly> = minors.values().map(|m| m.reduce_to(sub)).collect();
            let mut next = Vec::new();
            for base in &layer {
                next.extend(lift_divisor(sub, &reduced, base, d));
            }
            layer = next;
        }
        found.extend(layer.into_iter().map(|c| ZprPoly::new(ctx, c)));
    }
    found.sort_by(ZprPoly::canonical_cmp);
    Ok(found)
}

/// Monic `Q = Q0 + p^j X` over `Z/p^(j+1)` dividing every minor, where `Q0` is a
/// monic common divisor modulo `p^j`. Writing `m = Q0 A + p^j B`, the condition
/// is `X A = B (mod p, Q0)`, linear in the coefficients of `X`.
fn lift_divisor(sub: RingContext, minors: &[ZprPoly], base: &[u64], d: usize) -> Vec<Vec<u64>> {
    let j = sub.r() - 1;
    let pj = sub.p().pow(j);
    let field = sub.residue();
    let q0 = ZprPoly::new(sub, base.to_vec());
    let q0bar = q0.project();
    let mut a = vec![Vec::new(); d];
    let mut b = Vec::new();
    for m in minors {
        let (quo, rem) = m.divrem_monic(&q0).expect("monic");
        if (0..d).any(|s| rem.coeff(s) % pj != 0) {
            return Vec::new();
        }
        let abar = quo.project();
        for (s, row) in a.iter_mut().enumerate() {
            let img = abar.shift(s).rem(&q0bar);
            row.extend((0..d).map(|i| img.coeff(i)));
        }
        b.extend((0..d).map(|i| rem.coeff(i) / pj));
    }
    solve_affine_fp(field, &a, &b)
        .into_iter()
        .map(|x| {
            let mut coeffs = base.to_vec();
            for (c, xi) in coeffs.iter_mut().zip(x) {
                *c += pj * xi;
            }
            coeffs
        })
        .collect()
}

/// The least (degree, then coefficients) monic common divisor of positive
/// degree, if one exists.
pub fn find_common_divisor(minors: &MinorSet<ZprPoly>) -> Result<Option<CommonDivisor>> {
    let gbar = projected_gcd(minors)?;
    for d in 1..=gbar.deg().unwrap_or(0) {
        if let Some(q) = common_divisors_of_degree(minors, d)?.into_iter().next() {
            return Ok(Some(CommonDivisor { poly: q }));
        }
    }
    Ok(None)
}

/// No non-unit polynomial divides all maximal minors.
pub fn is_ridm(g: &PolyMatrix) -> Result<bool> {
    require_full_rank(g)?;
    Ok(find_common_divisor(&g.maximal_minors()?)?.is_none())
}

fn violation(reason: &str, g: &PolyMatrix, q: &ZprPoly) -> Error {
    let ctx = g.context();
    Error::GuaranteeViolated {
        reason: reason.into(),
        dump: format!("p={} r={} k={} n={} Q={}\n{}", ctx.p(), ctx.r(), g.rows(), g.cols(), q, g),
    }
}

/// A vector `t` with `t G = 0 (mod Q)` entrywise whose projection has
/// trivial gcd, so it can serve as the first row of a unimodular matrix.
pub fn row_annihilator(g: &PolyMatrix, q: &ZprPoly) -> Result<Vec<ZprPoly>> {
    let ctx = g.context();
    if q.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    if !q.is_monic() || q.deg().unwrap_or(0) == 0 {
        return Err(Error::NotMonic);
    }
    let minors = g.maximal_minors()?;
    for m in minors.values() {
        if !q.divides_monic(m)? {
            return Err(violation("divisor does not divide every maximal minor", g, q));
        }
    }
    let k = g.rows();
    if k == 1 {
        return Ok(vec![ZprPoly::one(ctx)]);
    }
    let gens = annihilator_module(g, q);
    let qbar = q.project();
    let mut primes = qbar.factor()?;
    primes.dedup();
    let mut parts = Vec::with_capacity(primes.len());
    for pi in &primes {
        let Some(gen) = gens.iter().find(|t| t.iter().any(|x| !pi.divides(&x.project()))) else {
            return Err(violation(&format!("every annihilator vanishes modulo {pi}"), g, q));
        };
        parts.push((pi, gen));
    }
    let t = if parts.len() == 1 {
        parts[0].1.clone()
    } else {
        let mut t = vec![ZprPoly::zero(ctx); k];
        for (pi, gen) in parts {
            let e = ZprPoly::lift(ctx, &crt_idempotent(&qbar, pi));
            for (ti, x) in t.iter_mut().zip(gen) {
                let sum = &*ti + &(&e * x);
                *ti = sum.divrem_monic(q)?.1;
            }
        }
        t
    };
    Ok(make_primitive(t, q))
}

/// Generators over `Z/p^r` of `{t : t G = 0 (mod Q)}`, entries of degree below
/// `deg Q`: the kernel of a `Z/p^r`-linear map on coefficient vectors.
fn annihilator_module(g: &PolyMatrix, q: &ZprPoly) -> Vec<Vec<ZprPoly>> {
    let ctx = g.context();
    let d = q.deg().expect("nonzero");
    let mut a = Vec::with_capacity(g.rows() * d);
    for i in 0..g.rows() {
        for l in 0..d {
            let mut row = Vec::with_capacity(g.cols() * d);
            for c in 0..g.cols() {
                let img = g.get(i, c).shift(l).divrem_monic(q).expect("monic").1;
                row.extend((0..d).map(|s| img.coeff(s)));
            }
            a.push(row);
        }
    }
    left_kernel_zpr(ctx, a)
        .into_iter()
        .map(|x| x.chunks(d).map(|c| ZprPoly::new(ctx, c.to_vec())).collect())
        .collect()
}

/// The element of `F_p[D]/(q)` that is 1 modulo the `pi`-primary part of `q`
/// and 0 modulo the rest.
fn crt_idempotent(q: &FpPoly, pi: &FpPoly) -> FpPoly {
    let mut primary = FpPoly::one(q.prime());
    let mut rest = q.clone();
    while pi.divides(&rest) {
        rest = rest.divrem(pi).expect("nonzero").0;
        primary = primary.mul(pi);
    }
    let (_, s, _) = rest.ext_gcd(&primary);
    s.mul(&rest).rem(q)
}

/// Adds multiples of `Q` so that the projected entries become coprime.
/// Requires `gcd(tbar, qbar) = 1`.
fn make_primitive(mut t: Vec<ZprPoly>, q: &ZprPoly) -> Vec<ZprPoly> {
    let ctx = q.context();
    let qbar = q.project();
    if gcd_fp(&t.iter().map(ZprPoly::project).collect::<Vec<_>>()).is_ok_and(|g| g.is_one()) {
        return t;
    }
    if t[1..].iter().all(|x| x.project().is_zero()) {
        t[1] = &t[1] + q;
    }
    let rest: Vec<FpPoly> = t[1..].iter().map(ZprPoly::project).collect();
    let g = gcd_fp(&rest).expect("nonzero");
    let t1 = t[0].project();
    if gcd_fp(&[t1.clone(), g.clone()]).expect("nonzero").is_one() {
        return t;
    }
    let mut s = FpPoly::one(ctx.p());
    let mut factors = g.factor().expect("nonzero");
    factors.dedup();
    for pi in factors {
        if !pi.divides(&t1) && !pi.divides(&qbar) {
            s = s.mul(&pi);
        }
    }
    t[0] = &t[0] + &(&ZprPoly::lift(ctx, &s) * q);
    debug_assert!(gcd_fp(&t.iter().map(ZprPoly::project).collect::<Vec<_>>()).unwrap().is_one());
    t
}

/// A unimodular matrix whose first row is `t` and whose determinant is a
/// nonzero constant.
pub fn complete_to_unimodular(t: &[ZprPoly]) -> Result<PolyMatrix> {
    let Some(ctx) = t.first().map(ZprPoly::context) else {
        return Err(Error::BadShape(String::from("empty row")));
    };
    let p = ctx.p();
    let tbar: Vec<FpPoly> = t.iter().map(ZprPoly::project).collect();
    match gcd_fp(&tbar) {
        Ok(g) if g.is_one() => {}
        _ => return Err(Error::NotPrimitive),
    }
    let k = t.len();
    if k == 1 {
        return PolyMatrix::from_rows(ctx, 1, vec![t.to_vec()]);
    }
    // Column operations v <- v E, with W <- E^{-1} W, keep v W = tbar.
    let mut v = tbar;
    let mut w = FpMatrix::identity(p, k);
    loop {
        let nonzero: Vec<usize> = (0..k).filter(|&i| !v[i].is_zero()).collect();
        if nonzero.len() == 1 {
            break;
        }
        let piv = *nonzero.iter().min_by_key(|&&i| (v[i].deg().unwrap(), i)).unwrap();
        for &j in &nonzero {
            if j == piv {
                continue;
            }
            let (quo, rem) = v[j].divrem(&v[piv])?;
            v[j] = rem;
            // Row piv of W gains quo times row j.
            let row_j: Vec<FpPoly> = w.row(j).to_vec();
            for (c, x) in row_j.iter().enumerate() {
                let updated = w.get(piv, c).add(&quo.mul(x));
                w.set(piv, c, updated);
            }
        }
    }
    let last = (0..k).find(|&i| !v[i].is_zero()).unwrap();
    if last != 0 {
        v.swap(0, last);
        w.row_swap(0, last);
    }
    let c = v[0].coeff(0);
    let mut rows: Vec<Vec<ZprPoly>> = Vec::with_capacity(k);
    rows.push(t.to_vec());
    for i in 1..k {
        rows.push(w.row(i).iter().map(|f| ZprPoly::lift(ctx, f)).collect());
    }
    debug_assert!(w.row(0).iter().zip(t).all(|(a, b)| a.scale(c) == b.project()));
    let mut m = PolyMatrix::from_rows(ctx, k, rows)?;
    let det = m.det()?;
    if !det.is_unit_poly() {
        return Err(Error::VerificationFailed(format!("completion has non-unit determinant {det}")));
    }
    if det.deg() != Some(0) {
        let fix = det.unit_inverse()?.scale(det.coeff(0));
        m.row_mul(1, &fix);
    }
    Ok(m)
}

fn check_ridm_ctx(ctx: RingContext, g: &PolyMatrix) -> Result<()> {
    if g.context() == ctx {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// Reduces a full-rank encoder to an equivalent RIDM encoder.
///
/// Each step takes the canonically least common divisor `Q` of the minors
/// that admits a primitive annihilator, moves the annihilator into the first
/// row with a unimodular transform, and divides that row by `Q`.
pub fn ridm_reduce(g: &PolyMatrix) -> Result<(PolyMatrix, RidmTrace)> {
    require_full_rank(g)?;
    let ctx = g.context();
    let mut current = g.clone();
    let mut trace = RidmTrace::default();
    loop {
        check_ridm_ctx(ctx, &current)?;
        let minors = current.maximal_minors()?;
        let before = intdeg_of(&minors);
        let gbar = projected_gcd(&minors)?;
        let mut tried = Vec::new();
        let mut chosen = None;
        'degrees: for d in 1..=gbar.deg().unwrap_or(0) {
            for q in common_divisors_of_degree(&minors, d)? {
                match row_annihilator(&current, &q) {
                    Ok(t) => {
                        chosen = Some((q, t));
                        break 'degrees;
                    }
                    Err(Error::GuaranteeViolated { .. }) => tried.push(q),
                    Err(e) => return Err(e),
                }
            }
        }
        let Some((q, t)) = chosen else {
            if tried.is_empty() {
                return Ok((current, trace));
            }
            let list: Vec<String> = tried.iter().map(|q| format!("{q}")).collect();
            return Err(violation(
                &format!("no common divisor admits a primitive annihilator (tried {})", list.join("; ")),
                &current,
                &tried[0],
            ));
        };
        let transform = complete_to_unimodular(&t)?;
        let mut next = transform.mat_mul(&current)?;
        let divided: Option<Vec<ZprPoly>> = next
            .row(0)
            .iter()
            .map(|e| e.div_exact_monic(&q).expect("monic"))
            .collect();
        let Some(divided) = divided else {
            return Err(violation("transformed row is not divisible by Q", &current, &q));
        };
        next.set_row(0, divided);
        let after = intdeg_of(&next.maximal_minors()?);
        if before != after + q.deg().unwrap() {
            return Err(violation(
                &format!("internal degree went {before}->{after} with deg Q = {}", q.deg().unwrap()),
                &current,
                &q,
            ));
        }
        trace.steps.push(RidmStep { divisor: q, transform, row: 0, intdeg_before: before, intdeg_after: after });
        current = next;
    }
}
