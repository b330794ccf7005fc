//! Numerical tolerances shared across the crate.

/// Frobenius tolerance for operator identities (reconstruction, unitarity).
pub const TOL_LINALG: f64 = 1e-10;

/// Max-entry tolerance for the Hermitian precondition of the eigensolver.
pub const TOL_INPUT: f64 = 1e-10;

/// Default tolerance on probabilities (traces, normalisation, positivity).
pub const TOL_PROB: f64 = 1e-10;

/// Minimum eigenvalue gap for a Schatten decomposition to count as unique.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Eigenvalues at or below this are treated as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Default Poisson tail mass left out by the Fock truncation.
pub const TAIL_EPSILON: f64 = 1e-12;
