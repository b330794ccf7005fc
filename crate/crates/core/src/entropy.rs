//! Entropies of atomic states and the mutual entropy transmitted by the
//! atom–field channel.
//!
//! For an input `ρ = Σ_k λ_k E_k` (Schatten decomposition) and a channel `Λ`,
//! the compound state `σ_E = Σ_k λ_k E_k ⊗ Λ(E_k)` is compared against the
//! uncorrelated `σ_0 = ρ ⊗ Λ(ρ)`; the mutual entropy is `S(σ_E, σ_0)`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, partial_trace_atom, partial_trace_field, ComplexMatrix};
use crate::model::{check_distribution, paper_channel, paper_channel_state, transition_sums, AtomState, ModelParams, TransitionSums};
use crate::tol::{DEGENERACY_TOL, SUPPORT_TOL, TOL_PROB};

/// Base of the logarithm in all entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    /// Nats.
    #[default]
    Natural,
    /// Bits.
    Two,
}

impl LogBase {
    /// Converts a value in nats into this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Natural => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Natural => "nats",
            LogBase::Two => "bits",
        }
    }
}

/// Spectral decomposition `ρ = Σ_k λ_k E_k` with strictly descending weights
/// and rank-one orthogonal projections.
#[derive(Debug, Clone)]
pub struct SchattenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub projections: Vec<ComplexMatrix>,
}

impl SchattenDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        for (lambda, e) in self.eigenvalues.iter().zip(&self.projections) {
            m.add_scaled_assign((*lambda).into(), e);
        }
        m
    }
}

pub fn schatten_decompose(rho: &AtomState, degeneracy_tol: f64) -> Result<SchattenDecomposition> {
    let eig = hermitian_eig(rho.matrix())?;
    let gap = eig.eigenvalues[eig.dim() - 1] - eig.eigenvalues[0];
    if gap <= degeneracy_tol {
        return Err(Error::DegenerateSpectrum { gap });
    }
    let (eigenvalues, projections) = eig
        .eigenvalues
        .iter()
        .zip(&eig.eigenvectors)
        .rev()
        .map(|(&lambda, v)| (lambda, ComplexMatrix::outer(v, v)))
        .unzip();
    Ok(SchattenDecomposition {
        eigenvalues,
        projections,
    })
}

fn check_density(m: &ComplexMatrix, what: &str) -> Result<()> {
    if m.is_density(TOL_PROB) {
        Ok(())
    } else {
        Err(Error::NotDensity(format!("{what} is not a density operator")))
    }
}

/// `S(ρ) = −tr ρ log ρ`, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &ComplexMatrix, base: LogBase) -> Result<f64> {
    check_density(rho, "state")?;
    let eig = hermitian_eig(rho)?;
    let nats: f64 = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum();
    Ok(base.from_nats(nats.max(0.0)))
}

/// `S(σ, τ) = tr σ (log σ − log τ)`, evaluated in the two eigenbases.
///
/// Returns `f64::INFINITY` when the support of `σ` is not contained in the
/// support of `τ`.
pub fn relative_entropy(sigma: &ComplexMatrix, tau: &ComplexMatrix, base: LogBase) -> Result<f64> {
    if sigma.dim() != tau.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            found: tau.dim(),
        });
    }
    check_density(sigma, "first argument")?;
    check_density(tau, "second argument")?;
    let es = hermitian_eig(sigma)?;
    let et = hermitian_eig(tau)?;

    let mut nats = 0.0;
    for (&lambda, u) in es.eigenvalues.iter().zip(&es.eigenvectors) {
        if lambda <= 0.0 {
            continue;
        }
        let log_lambda = lambda.ln();
        for (&mu, v) in et.eigenvalues.iter().zip(&et.eigenvectors) {
            let overlap = u
                .iter()
                .zip(v)
                .map(|(a, b)| a.conj() * b)
                .sum::<num_complex::Complex64>()
                .norm_sqr();
            if mu <= SUPPORT_TOL {
                if lambda > SUPPORT_TOL && overlap > SUPPORT_TOL {
                    return Ok(f64::INFINITY);
                }
                continue;
            }
            nats += overlap * lambda * (log_lambda - mu.ln());
        }
    }
    Ok(base.from_nats(nats))
}

/// Density operator on atom ⊗ atom.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundState {
    matrix: ComplexMatrix,
}

impl CompoundState {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Reduced state of the input factor.
    pub fn input_marginal(&self) -> ComplexMatrix {
        partial_trace_field(&self.matrix, 2).expect("compound state is 4×4")
    }

    /// Reduced state of the output factor.
    pub fn output_marginal(&self) -> ComplexMatrix {
        partial_trace_atom(&self.matrix, 2).expect("compound state is 4×4")
    }
}

/// Builds `σ_E = Σ_k λ_k E_k ⊗ Λ(E_k)` and `σ_0 = ρ ⊗ Λ(ρ)`.
pub fn compound_states(
    decomp: &SchattenDecomposition,
    channel_on_projections: &[AtomState],
    channel_on_rho: &AtomState,
) -> Result<(CompoundState, CompoundState)> {
    if channel_on_projections.len() != decomp.projections.len() {
        return Err(Error::LengthMismatch {
            expected: decomp.projections.len(),
            found: channel_on_projections.len(),
        });
    }
    let mut sigma_e = ComplexMatrix::zeros(4);
    for ((lambda, e), out) in decomp
        .eigenvalues
        .iter()
        .zip(&decomp.projections)
        .zip(channel_on_projections)
    {
        sigma_e.add_scaled_assign((*lambda).into(), &kron(e, out.matrix()));
    }
    let sigma_0 = kron(&decomp.reconstruct(), channel_on_rho.matrix());
    check_density(&sigma_e, "compound state")?;
    check_density(&sigma_0, "trivial compound state")?;
    Ok((CompoundState { matrix: sigma_e }, CompoundState { matrix: sigma_0 }))
}

/// `S(σ_E, σ_0)` for an arbitrary channel on the atom.
pub fn compound_mutual_entropy<F>(rho: &AtomState, channel: F, base: LogBase) -> Result<f64>
where
    F: Fn(&AtomState) -> Result<AtomState>,
{
    let decomp = schatten_decompose(rho, DEGENERACY_TOL)?;
    let outputs = decomp
        .projections
        .iter()
        .map(|e| channel(&AtomState::new(e.clone())?))
        .collect::<Result<Vec<_>>>()?;
    let (sigma_e, sigma_0) = compound_states(&decomp, &outputs, &channel(rho)?)?;
    relative_entropy(sigma_e.matrix(), sigma_0.matrix(), base)
}

/// Evaluation route for [`mutual_entropy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutualEntropyMode {
    /// Four-term expression in the transition sums.
    ClosedForm,
    /// Relative entropy of the assembled compound states.
    Compound,
}

/// Four-term mutual entropy, in nats, of the diagonal channel defined by
/// `sums` for input weights `(λ₀, λ₁)`.
pub fn closed_form_mutual_entropy(sums: &TransitionSums, lambda0: f64, lambda1: f64) -> f64 {
    let p_lower = lambda0 * sums.c1 + lambda1 * sums.s0;
    let p_upper = lambda0 * sums.s1 + lambda1 * sums.c0;
    let term = |weight: f64, x: f64, y: f64| {
        if weight == 0.0 || x <= 0.0 {
            0.0
        } else {
            weight * x * (x / y).ln()
        }
    };
    term(lambda0, sums.c1, p_lower)
        + term(lambda0, sums.s1, p_upper)
        + term(lambda1, sums.s0, p_lower)
        + term(lambda1, sums.c0, p_upper)
}

fn check_nondegenerate(params: &ModelParams, lambda0: f64, lambda1: f64) -> Result<()> {
    check_distribution(lambda0, lambda1, params.tol_prob)?;
    let gap = (lambda0 - lambda1).abs();
    if gap <= DEGENERACY_TOL {
        return Err(Error::DegenerateSpectrum { gap });
    }
    Ok(())
}

/// Mutual entropy `I(ρ; Λ_t)` of the closed-form channel for
/// `ρ = λ₀|1⟩⟨1| + λ₁|2⟩⟨2|`.
pub fn mutual_entropy(
    params: &ModelParams,
    lambda0: f64,
    lambda1: f64,
    t: f64,
    mode: MutualEntropyMode,
) -> Result<f64> {
    check_nondegenerate(params, lambda0, lambda1)?;
    let value = match mode {
        MutualEntropyMode::ClosedForm => {
            let sums = transition_sums(params, t);
            params
                .log_base
                .from_nats(closed_form_mutual_entropy(&sums, lambda0, lambda1))
        }
        MutualEntropyMode::Compound => {
            let rho = AtomState::from_weights(lambda0, lambda1)?;
            compound_mutual_entropy(&rho, |s| paper_channel_state(params, s, t), params.log_base)?
        }
    };
    // rounding can leave the vanishing case a few ulps below zero
    Ok(if (-params.tol_prob..0.0).contains(&value) { 0.0 } else { value })
}

/// Both sides of `S(σ_E, σ_0) = Σ_k λ_k S(Λ(E_k), Λ(ρ))` for the closed-form
/// channel.
pub fn identity_check(params: &ModelParams, lambda0: f64, lambda1: f64, t: f64) -> Result<(f64, f64)> {
    check_nondegenerate(params, lambda0, lambda1)?;
    let rho = AtomState::from_weights(lambda0, lambda1)?;
    let decomp = schatten_decompose(&rho, DEGENERACY_TOL)?;
    let outputs = decomp
        .projections
        .iter()
        .map(|e| paper_channel_state(params, &AtomState::new(e.clone())?, t))
        .collect::<Result<Vec<_>>>()?;
    let out_rho = paper_channel(params, lambda0, lambda1, t)?;
    let (sigma_e, sigma_0) = compound_states(&decomp, &outputs, &out_rho)?;

    let lhs = relative_entropy(sigma_e.matrix(), sigma_0.matrix(), params.log_base)?;
    let mut rhs = 0.0;
    for (lambda, out) in decomp.eigenvalues.iter().zip(&outputs) {
        if *lambda > 0.0 {
            rhs += lambda * relative_entropy(out.matrix(), out_rho.matrix(), params.log_base)?;
        }
    }
    Ok((lhs, rhs))
}
