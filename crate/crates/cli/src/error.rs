use residual_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("line {line}: coefficient {value} is outside [0, {modulus})")]
    OutOfRangeCoefficient { line: usize, value: u64, modulus: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 1 usage, 2 parse, 3 precondition, 4 guarantee or verification, 5 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. }
            | CliError::NotPrime(_)
            | CliError::OutOfRangeCoefficient { .. }
            | CliError::ShapeMismatch(_) => 2,
            CliError::Core(Error::GuaranteeViolated { .. } | Error::VerificationFailed(_)) => 4,
            CliError::Core(Error::SearchBudgetExceeded(_)) => 5,
            CliError::Core(_) => 3,
        }
    }
}
