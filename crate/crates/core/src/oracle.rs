//! Brute-force reference: the interaction Hamiltonian as a dense matrix on the
//! truncated atom ⊗ field space, exact evolution of `ρ ⊗ |ω⟩⟨ω|` and the
//! partial trace over the field.
//!
//! The field space has dimension `N + 2` for photon cutoff `N`, so that every
//! pair `|2,n⟩ ↔ |1,n+1⟩` with `n ≤ N` is represented and the truncated
//! Hamiltonian stays closed.

use num_complex::Complex64;

use crate::entropy::compound_mutual_entropy;
use crate::error::{Error, Result};
use crate::linalg::{kron, matrix_exp_series, partial_trace_field, ComplexMatrix};
use crate::model::{dressed_unitary, photon_weights, AtomState, FieldKind, FieldSpec, ModelParams};

/// How the propagator `exp(-i t H_int)` is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exponentiator {
    /// Scaling-and-squaring Taylor series of the dense Hamiltonian.
    #[default]
    Series,
    /// Dressed-state spectral sum.
    Dressed,
}

/// Density operator on atom ⊗ field.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    pub matrix: ComplexMatrix,
    pub field_dim: usize,
}

impl JointState {
    /// Population in the two highest photon-number levels.
    pub fn edge_population(&self) -> f64 {
        let fd = self.field_dim;
        let top = fd.saturating_sub(2)..fd;
        (0..2)
            .flat_map(|a| top.clone().map(move |n| a * fd + n))
            .map(|i| self.matrix[(i, i)].re)
            .sum()
    }

    pub fn reduced(&self) -> Result<ComplexMatrix> {
        partial_trace_field(&self.matrix, self.field_dim)
    }
}

/// Field state truncated to `N + 2` levels and renormalised.
#[derive(Debug, Clone)]
pub struct TruncatedField {
    pub amplitudes: Vec<Complex64>,
    /// `1 − Σ|amplitude|²` before renormalisation.
    pub deficit: f64,
}

/// Photon cutoff used by the oracle; at least one coupled pair is kept.
pub fn oracle_cutoff(params: &ModelParams) -> usize {
    params.cutoff().max(1)
}

/// `H_int = g (a ⊗ σ⁺ + a† ⊗ σ⁻)` with ħ = 1 on field dimension `n_max + 2`:
/// `⟨2,n|H|1,n+1⟩ = ⟨1,n+1|H|2,n⟩ = g√(n+1)` for `n = 0..=n_max`.
pub fn build_interaction_hamiltonian(g: f64, n_max: usize) -> ComplexMatrix {
    let fd = n_max + 2;
    let mut h = ComplexMatrix::zeros(2 * fd);
    for n in 0..=n_max {
        let coupling = Complex64::new(g * ((n + 1) as f64).sqrt(), 0.0);
        h[(fd + n, n + 1)] = coupling;
        h[(n + 1, fd + n)] = coupling;
    }
    h
}

/// Field amplitudes over photon numbers `0..=n_max + 1`, renormalised, with
/// the norm deficit of the truncation.
pub fn truncated_field(field: &FieldSpec, n_max: usize) -> TruncatedField {
    let len = n_max + 2;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
    match field.kind {
        FieldKind::Coherent(theta) => {
            // |⟨l|θ⟩| = √p_l and the phase of θ^l is l·arg θ.
            let phase = theta.arg();
            for (l, p) in photon_weights(field, len - 1).into_iter().enumerate() {
                amplitudes[l] = Complex64::from_polar(p.sqrt(), l as f64 * phase);
            }
        }
        FieldKind::Fock(n) => {
            if let Some(a) = amplitudes.get_mut(n as usize) {
                *a = Complex64::new(1.0, 0.0);
            }
        }
    }
    let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    let deficit = 1.0 - norm_sqr;
    if norm_sqr > 0.0 {
        let inv = 1.0 / norm_sqr.sqrt();
        amplitudes.iter_mut().for_each(|a| *a *= inv);
    }
    TruncatedField { amplitudes, deficit }
}

/// Unit field vector of length `n_max + 2`; fails if the truncation drops
/// `tail_epsilon` or more of the norm.
pub fn coherent_vector(field: &FieldSpec, n_max: usize, tail_epsilon: f64) -> Result<Vec<Complex64>> {
    let tf = truncated_field(field, n_max);
    if tf.deficit >= tail_epsilon {
        return Err(Error::CutoffTooSmall {
            deficit: tf.deficit,
            tail_epsilon,
        });
    }
    Ok(tf.amplitudes)
}

pub fn propagator(params: &ModelParams, t: f64, n_max: usize, exponentiator: Exponentiator) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    match exponentiator {
        Exponentiator::Series => {
            let h = build_interaction_hamiltonian(params.g, n_max);
            matrix_exp_series(&h, Complex64::new(0.0, -t))
        }
        Exponentiator::Dressed => Ok(dressed_unitary(params, t, n_max)),
    }
}

/// `ρ ⊗ |ψ⟩⟨ψ|`
pub fn product_state(rho: &AtomState, field: &[Complex64]) -> JointState {
    JointState {
        matrix: kron(rho.matrix(), &ComplexMatrix::outer(field, field)),
        field_dim: field.len(),
    }
}

/// `U · joint · U†`
pub fn evolve(u: &ComplexMatrix, joint: &JointState) -> JointState {
    JointState {
        matrix: joint.matrix.conjugate_by(u),
        field_dim: joint.field_dim,
    }
}

/// Exact reduced atom state `tr_F U(ρ ⊗ ω)U†` together with the joint state.
pub fn exact_channel(
    params: &ModelParams,
    rho: &AtomState,
    t: f64,
    exponentiator: Exponentiator,
) -> Result<(AtomState, JointState)> {
    params.validate()?;
    let n_max = oracle_cutoff(params);
    let psi = coherent_vector(&params.field, n_max, params.tail_epsilon)?;
    let u = propagator(params, t, n_max, exponentiator)?;
    let joint = evolve(&u, &product_state(rho, &psi));
    let reduced = AtomState::new(joint.reduced()?)?;
    Ok((reduced, joint))
}

/// `|⟨1|Λ(ρ)|2⟩|` of the exact channel output.
pub fn coherence_magnitude(params: &ModelParams, rho: &AtomState, t: f64) -> Result<f64> {
    coherence_magnitude_with(params, rho, t, Exponentiator::Series)
}

pub fn coherence_magnitude_with(
    params: &ModelParams,
    rho: &AtomState,
    t: f64,
    exponentiator: Exponentiator,
) -> Result<f64> {
    let (reduced, _) = exact_channel(params, rho, t, exponentiator)?;
    Ok(reduced.coherence().norm())
}

/// Mutual entropy computed through the exact channel instead of the closed
/// form; differs from it wherever the exact output carries coherences.
pub fn exact_mutual_entropy(params: &ModelParams, lambda0: f64, lambda1: f64, t: f64) -> Result<f64> {
    params.validate()?;
    let rho = AtomState::from_weights(lambda0, lambda1)?;
    let n_max = oracle_cutoff(params);
    let psi = coherent_vector(&params.field, n_max, params.tail_epsilon)?;
    let u = propagator(params, t, n_max, Exponentiator::Series)?;
    let channel = |s: &AtomState| AtomState::new(evolve(&u, &product_state(s, &psi)).reduced()?);
    compound_mutual_entropy(&rho, channel, params.log_base)
}
