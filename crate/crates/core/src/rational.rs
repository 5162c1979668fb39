//! Fractions with regular denominators: the total quotient ring of `Z/p^r[D]`.
//!
//! For `r > 1` this ring is not a field (`p` stays a zero divisor), so a
//! fraction is invertible only when its numerator is regular. Fractions are
//! not reduced to lowest terms; the denominator is kept monic and equality is
//! decided by cross-multiplication.

use core::fmt;

use crate::poly::ZprPoly;
use crate::ring::RingContext;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ZprRational {
    num: ZprPoly,
    den: ZprPoly,
}

impl ZprRational {
    pub fn new(num: ZprPoly, den: ZprPoly) -> Result<Self> {
        if num.context() != den.context() {
            return Err(Error::ContextMismatch);
        }
        if !den.is_regular() {
            return Err(Error::NotRegular);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: ZprPoly, den: ZprPoly) -> Self {
        let (monic, unit) = den.monic_unit_split().expect("regular denominator");
        let num = &num * &unit.unit_inverse().expect("unit part");
        match num.div_exact_monic(&monic).expect("monic") {
            Some(q) => Self { den: ZprPoly::one(q.context()), num: q },
            None => Self { num, den: monic },
        }
    }

    pub fn from_poly(num: ZprPoly) -> Self {
        let den = ZprPoly::one(num.context());
        Self { num, den }
    }

    pub fn zero(ctx: RingContext) -> Self {
        Self::from_poly(ZprPoly::zero(ctx))
    }

    pub fn one(ctx: RingContext) -> Self {
        Self::from_poly(ZprPoly::one(ctx))
    }

    pub fn num(&self) -> &ZprPoly {
        &self.num
    }

    /// Monic, regular denominator.
    pub fn den(&self) -> &ZprPoly {
        &self.den
    }

    pub fn context(&self) -> RingContext {
        self.num.context()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Invertible in the total quotient ring.
    pub fn is_regular(&self) -> bool {
        self.num.is_regular()
    }

    /// The polynomial this fraction equals, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&ZprPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.context() == other.context() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn rat_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.den == other.den {
            return Ok(Self::normalized(&self.num + &other.num, self.den.clone()));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn rat_neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn rat_sub(&self, other: &Self) -> Result<Self> {
        self.rat_add(&other.rat_neg())
    }

    pub fn rat_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::normalized(&self.num * &other.num, &self.den * &other.den))
    }

    pub fn mul_poly(&self, f: &ZprPoly) -> Self {
        Self::normalized(&self.num * f, self.den.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.num.is_regular() {
            return Err(Error::NotRegular);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn rat_div(&self, other: &Self) -> Result<Self> {
        self.rat_mul(&other.inverse()?)
    }

    /// Projection to `F_p(D)` as (numerator, denominator).
    pub fn project(&self) -> (crate::FpPoly, crate::FpPoly) {
        (self.num.project(), self.den.project())
    }
}

impl PartialEq for ZprRational {
    fn eq(&self, other: &Self) -> bool {
        self.context() == other.context() && &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ZprRational {}

impl fmt::Display for ZprRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

impl From<ZprPoly> for ZprRational {
    fn from(f: ZprPoly) -> Self {
        Self::from_poly(f)
    }
}
