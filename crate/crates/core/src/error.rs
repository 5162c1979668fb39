use alloc::string::String;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring parameters: {0}")]
    BadRing(String),
    #[error("values belong to different rings")]
    ContextMismatch,
    #[error("polynomial is not regular (its projection mod p vanishes)")]
    NotRegular,
    #[error("divisor is not monic")]
    NotMonic,
    #[error("polynomial is not a unit")]
    NotUnit,
    #[error("gcd of an all-zero list")]
    AllZero,
    #[error("zero input")]
    ZeroInput,
    #[error("window [{lo}, {hi}) is too small")]
    WindowTooSmall { lo: i64, hi: i64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("matrix does not have full row rank")]
    NotFullRank,
    #[error("no maximal minor is regular")]
    NoRegularMinor,
    #[error("row vector has no primitive projection")]
    NotPrimitive,
    #[error("matrix is not a reduced internal degree matrix")]
    NotRidm,
    #[error("residual polynomial has no irreducible factor other than D")]
    NoSuitableFactor,
    #[error("guarantee violated: {reason}\n{dump}")]
    GuaranteeViolated { reason: String, dump: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("search budget exceeded ({0} states)")]
    SearchBudgetExceeded(u64),
}

pub type Result<T> = core::result::Result<T, Error>;
