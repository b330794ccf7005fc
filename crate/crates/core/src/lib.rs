//! Jaynes–Cummings atom–field interaction treated as a quantum channel on the
//! atom, and the quantum mutual entropy transmitted through it.
//!
//! The crate is split into four layers:
//!
//! - [`linalg`]: small dense complex matrices, a Jacobi Hermitian eigensolver,
//!   a scaling-and-squaring series exponential, Kronecker products and the
//!   partial trace over the field.
//! - [`model`]: the closed-form machinery (photon statistics, Rabi
//!   frequencies, transition sums, the diagonal channel, the dressed-state
//!   propagator, atomic inversion and revival times).
//! - [`entropy`]: Schatten decomposition, von Neumann and relative entropy,
//!   compound states and the mutual entropy.
//! - [`oracle`]: brute-force evolution of the joint atom–field state used to
//!   validate the closed forms.
//!
//! All composite operators use the basis ordering `index(a, n) = a * field_dim + n`
//! with `a = 0` the lower atomic level `|1⟩`, `a = 1` the upper level `|2⟩` and
//! `n` the photon number.

pub mod entropy;
pub mod error;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSystem};
pub use model::{AtomState, FieldKind, FieldSpec, ModelParams, TransitionSums};
pub use num_complex::Complex64;
