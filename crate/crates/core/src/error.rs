use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Pauli index must be 1, 2 or 3, got {0}")]
    InvalidPauliIndex(u8),
    #[error("matrix is not Hermitian (max |M - M^dag| = {0:e})")]
    NotHermitian(f64),
    #[error("trace must be 1, got {0}")]
    BadTrace(f64),
    #[error("negative probability {0:e}")]
    NegativeProbability(f64),
    #[error("probabilities sum to {0}, expected 1")]
    Unnormalized(f64),
    #[error("lambda must be finite and non-negative, got {0}")]
    NegativeLambda(f64),
    #[error("lambda = {0} is outside the critical phase (λ < 1); use the polarized branch")]
    OutsideCriticalPhase(f64),
    #[error("invalid X state: eigenvalue {name} = {value:e} is negative")]
    NonPositiveState { name: &'static str, value: f64 },
    #[error("parameter {name} = {value} out of range [-1, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("measurement component z3 = {0} outside [-1, 1]")]
    InvalidZ3(f64),
    #[error("negative radicand {0:e} in post-measurement spectrum")]
    NegativeRadicand(f64),
    #[error("unitary parameters not normalized: t^2 + |y|^2 = {0}")]
    UnnormalizedUnitary(f64),
    #[error("oracle resolution must be at least {min}, got {got}")]
    ResolutionTooSmall { min: usize, got: usize },
}
