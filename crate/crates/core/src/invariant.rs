//! The residual structural polynomial of a code and the catastrophicity
//! criterion it yields.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::fp::{gcd_fp, FpPoly};
use crate::laurent::{classify_weight, WeightClassification};
use crate::linalg::ResidueField;
use crate::matrix::PolyMatrix;
use crate::poly::ZprPoly;
use crate::rational::ZprRational;
use crate::ridm::{is_ridm, ridm_reduce};
use crate::{Error, Result};

/// Monic gcd over `F_p` of the projected maximal minors of a RIDM encoder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaPolynomial {
    poly: FpPoly,
}

impl DeltaPolynomial {
    pub fn poly(&self) -> &FpPoly {
        &self.poly
    }

    /// `s` when the polynomial is `D^s`.
    pub fn monomial_exponent(&self) -> Option<usize> {
        self.poly.monomial_exponent()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }
}

impl fmt::Display for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// An infinite-weight input that an encoder maps to a finite-weight output.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub input: Vec<ZprRational>,
    pub output: Vec<ZprPoly>,
    /// Index of the input component carrying the certificate.
    pub component: usize,
    pub input_weight_cert: WeightClassification,
    pub output_weight: usize,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let input: Vec<String> = self.input.iter().map(|u| format!("{u}")).collect();
        let output: Vec<String> = self.output.iter().map(|v| format!("{v}")).collect();
        writeln!(f, "input: {}", input.join(" | "))?;
        writeln!(f, "output: {}", output.join(" | "))?;
        if let WeightClassification::Infinite { preperiod, period, block, .. } = &self.input_weight_cert {
            let block: Vec<String> = block.iter().map(|c| format!("{c}")).collect();
            writeln!(
                f,
                "certificate: component={} preperiod={} period={} block={}",
                self.component,
                preperiod,
                period,
                block.join(",")
            )?;
        }
        write!(f, "output_weight={}", self.output_weight)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CatastrophicityVerdict {
    NonCatastrophic { s: usize },
    Catastrophic { delta: DeltaPolynomial, witness: Witness },
}

impl CatastrophicityVerdict {
    pub fn is_catastrophic(&self) -> bool {
        matches!(self, CatastrophicityVerdict::Catastrophic { .. })
    }
}

impl fmt::Display for CatastrophicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatastrophicityVerdict::NonCatastrophic { s } => write!(f, "NONCATASTROPHIC s={s}"),
            CatastrophicityVerdict::Catastrophic { delta, witness } => {
                writeln!(f, "CATASTROPHIC delta={delta}")?;
                write!(f, "{witness}")
            }
        }
    }
}

fn projected_minor_gcd(g: &PolyMatrix) -> Result<FpPoly> {
    let minors: Vec<FpPoly> = g.maximal_minors()?.values().map(ZprPoly::project).collect();
    gcd_fp(&minors).map_err(|_| Error::NotFullRank)
}

/// Delta of an encoder that is already RIDM.
pub fn delta_of_ridm(g: &PolyMatrix) -> Result<DeltaPolynomial> {
    if !is_ridm(g)? {
        return Err(Error::NotRidm);
    }
    Ok(DeltaPolynomial { poly: projected_minor_gcd(g)? })
}

/// Delta of the code generated by a full-rank encoder.
pub fn delta_of_code(g: &PolyMatrix) -> Result<DeltaPolynomial> {
    let (reduced, _) = ridm_reduce(g)?;
    Ok(DeltaPolynomial { poly: projected_minor_gcd(&reduced)? })
}

/// The code admits a non-catastrophic encoder exactly when delta is `D^s`.
/// A catastrophic verdict carries a witness for `g` itself.
pub fn classify_code(g: &PolyMatrix) -> Result<CatastrophicityVerdict> {
    let delta = delta_of_code(g)?;
    if let Some(s) = delta.monomial_exponent() {
        return Ok(CatastrophicityVerdict::NonCatastrophic { s });
    }
    let witness = witness_for(g, &delta)?;
    Ok(CatastrophicityVerdict::Catastrophic { delta, witness })
}

/// Whether this particular encoder is catastrophic, judged by its projection.
pub fn encoder_is_catastrophic(g: &PolyMatrix) -> Result<bool> {
    if !g.is_full_row_rank() {
        return Err(Error::NotFullRank);
    }
    Ok(projected_minor_gcd(g)?.monomial_exponent().is_none())
}

/// Exact product `input * g` over the total quotient ring.
pub fn encode(g: &PolyMatrix, input: &[ZprRational]) -> Result<Vec<ZprRational>> {
    if input.len() != g.rows() {
        return Err(Error::BadShape(format!("input has {} entries, encoder has {} rows", input.len(), g.rows())));
    }
    let ctx = g.context();
    let mut out = Vec::with_capacity(g.cols());
    for j in 0..g.cols() {
        let mut acc = ZprRational::zero(ctx);
        for (i, u) in input.iter().enumerate() {
            acc = acc.rat_add(&u.mul_poly(g.get(i, j)))?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Builds and verifies an infinite-weight input with polynomial output.
///
/// For an irreducible factor `q != D` of delta, a kernel vector `w` of the
/// projected encoder over `F_p[D]/(q)` gives `w g = q h (mod p)`, so the input
/// `p^(r-1) w / q` encodes to the polynomial vector `p^(r-1) h`.
pub fn witness_for(g: &PolyMatrix, delta: &DeltaPolynomial) -> Result<Witness> {
    let ctx = g.context();
    let mut factors = delta.poly().factor()?;
    factors.dedup();
    let qbar = factors
        .into_iter()
        .find(|f| f.monomial_exponent() != Some(1))
        .ok_or(Error::NoSuitableFactor)?;
    let field = ResidueField::new(&qbar);
    let kernel = field.left_kernel(&g.project_matrix());
    let w = kernel
        .into_iter()
        .next()
        .ok_or_else(|| Error::VerificationFailed(format!("projected encoder has full rank modulo {qbar}")))?;
    let q = ZprPoly::lift(ctx, &qbar);
    let top = ctx.top_power();
    let w: Vec<ZprPoly> = w.iter().map(|x| ZprPoly::lift(ctx, x)).collect();

    let input: Vec<ZprRational> =
        w.iter().map(|x| ZprRational::new(x.scale(top), q.clone())).collect::<Result<_>>()?;
    let mut output = Vec::with_capacity(g.cols());
    for j in 0..g.cols() {
        let mut h = ZprPoly::zero(ctx);
        for (i, x) in w.iter().enumerate() {
            h = &h + &(x * g.get(i, j));
        }
        let (quo, rem) = h.divrem_monic(&q)?;
        if !rem.project().is_zero() {
            return Err(Error::VerificationFailed(format!("kernel vector does not annihilate column {j} modulo {qbar}")));
        }
        output.push(quo.scale(top));
    }

    let product = encode(g, &input)?;
    if product.iter().zip(&output).any(|(a, b)| a != &ZprRational::from_poly(b.clone())) {
        return Err(Error::VerificationFailed(String::from("witness product identity fails")));
    }
    let mut cert = None;
    for (i, u) in input.iter().enumerate() {
        let c = classify_weight(u)?;
        if !c.is_finite() {
            cert = Some((i, c));
            break;
        }
    }
    let Some((component, input_weight_cert)) = cert else {
        return Err(Error::VerificationFailed(String::from("witness input has finite weight")));
    };
    let mut output_weight = 0;
    for v in &output {
        let c = classify_weight(&ZprRational::from_poly(v.clone()))?;
        output_weight += c
            .finite_weight()
            .ok_or_else(|| Error::VerificationFailed(String::from("witness output is not finite")))?;
    }
    Ok(Witness { input, output, component, input_weight_cert, output_weight })
}
