//! Exact algebra for free convolutional codes over the Galois ring `Z/p^r`.
//!
//! The crate computes the residual structural polynomial of a code (the
//! monic `F_p[D]` gcd of the projected maximal minors of a reduced internal
//! degree encoder), reduces arbitrary full-rank encoders to such encoders,
//! decides intrinsic catastrophicity with a self-checking witness, and builds
//! parity-check matrices so the invariant can be compared across duality.
//!
//! Everything is exact: coefficients are residues modulo `p^r`, polynomials
//! are dense, and determinants are computed without division.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]
#![deny(unsafe_code)]

extern crate alloc;

mod error;
pub mod fp;
pub mod laurent;
mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod ring;

pub mod dual;
pub mod invariant;
pub mod ridm;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use error::{Error, Result};
pub use fp::FpPoly;
pub use laurent::{LaurentPoly, LaurentWindow, WeightClassification};
pub use matrix::{FpMatrix, Matrix, MinorSet, PolyMatrix, Ring};
pub use poly::{Degree, ZprPoly};
pub use rational::ZprRational;
pub use ring::{FpScalar, RingContext, ZprScalar};

pub use dual::{DualPair, DualityReport, MinorRatioReport};
pub use invariant::{CatastrophicityVerdict, DeltaPolynomial, Witness};
pub use ridm::{CommonDivisor, RidmStep, RidmTrace};
