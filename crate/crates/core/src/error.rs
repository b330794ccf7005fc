use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("invalid atom distribution (lambda0 = {lambda0}, lambda1 = {lambda1}): weights must be non-negative and sum to 1")]
    BadDistribution { lambda0: f64, lambda1: f64 },

    #[error("degenerate spectrum (eigenvalue gap {gap:e}); the mutual entropy needs a unique Schatten decomposition, choose lambda0 != lambda1")]
    DegenerateSpectrum { gap: f64 },

    #[error("length mismatch: expected {expected} channel outputs, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("revival times are defined only for a coherent field with nonzero amplitude")]
    NotCoherentField,

    #[error("Fock cutoff too small: truncated norm deficit {deficit:e} >= tail epsilon {tail_epsilon:e}")]
    CutoffTooSmall { deficit: f64, tail_epsilon: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("non-finite input")]
    NonFinite,
}
