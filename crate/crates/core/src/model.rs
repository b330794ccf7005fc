//! Closed-form Jaynes–Cummings machinery on resonance, in the interaction
//! picture with ħ = 1.
//!
//! The atom has a lower level `|1⟩` and an upper level `|2⟩`. The field mode
//! starts in a coherent or a number state, and the atom starts in a state
//! diagonal in `{|1⟩, |2⟩}` with weights `(λ₀, λ₁)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::entropy::LogBase;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tol::{TAIL_EPSILON, TOL_PROB};

/// Initial state of the field mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    /// Coherent state `|θ⟩`; `|θ|²` is the mean photon number.
    Coherent(Complex64),
    /// Number state `|n⟩`.
    Fock(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    /// Replaces the automatically chosen photon-number cutoff when set.
    pub explicit_cutoff: Option<usize>,
}

impl FieldSpec {
    pub fn coherent(theta: Complex64) -> Self {
        Self {
            kind: FieldKind::Coherent(theta),
            explicit_cutoff: None,
        }
    }

    /// Coherent state with real amplitude `θ = √mean_photon`.
    pub fn coherent_mean(mean_photon: f64) -> Self {
        Self::coherent(Complex64::new(mean_photon.max(0.0).sqrt(), 0.0))
    }

    pub fn fock(n: u32) -> Self {
        Self {
            kind: FieldKind::Fock(n),
            explicit_cutoff: None,
        }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.explicit_cutoff = Some(cutoff);
        self
    }

    pub fn mean_photon_number(&self) -> f64 {
        match self.kind {
            FieldKind::Coherent(theta) => theta.norm_sqr(),
            FieldKind::Fock(n) => n as f64,
        }
    }
}

/// Configuration of one experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Coupling constant `g` (angular frequency units).
    pub g: f64,
    pub field: FieldSpec,
    pub log_base: LogBase,
    /// Photon-number tail mass left out by the truncation.
    pub tail_epsilon: f64,
    pub tol_prob: f64,
}

impl ModelParams {
    pub fn new(g: f64, field: FieldSpec) -> Result<Self> {
        let params = Self {
            g,
            field,
            log_base: LogBase::Natural,
            tail_epsilon: TAIL_EPSILON,
            tol_prob: TOL_PROB,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_log_base(mut self, log_base: LogBase) -> Self {
        self.log_base = log_base;
        self
    }

    pub fn with_tail_epsilon(mut self, tail_epsilon: f64) -> Result<Self> {
        self.tail_epsilon = tail_epsilon;
        self.validate()?;
        Ok(self)
    }

    pub fn with_tol_prob(mut self, tol_prob: f64) -> Result<Self> {
        self.tol_prob = tol_prob;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g.is_finite() && self.g > 0.0) {
            return Err(Error::InvalidParams(format!("coupling g must be > 0, got {}", self.g)));
        }
        if !(self.tail_epsilon > 0.0 && self.tail_epsilon <= 1e-6) {
            return Err(Error::InvalidParams(format!(
                "tail epsilon must lie in (0, 1e-6], got {}",
                self.tail_epsilon
            )));
        }
        if !(self.tol_prob > 0.0 && self.tol_prob <= 1e-6) {
            return Err(Error::InvalidParams(format!(
                "probability tolerance must lie in (0, 1e-6], got {}",
                self.tol_prob
            )));
        }
        match self.field.kind {
            FieldKind::Coherent(theta) => {
                if !(theta.re.is_finite() && theta.im.is_finite()) {
                    return Err(Error::InvalidParams("coherent amplitude must be finite".into()));
                }
            }
            FieldKind::Fock(n) => {
                if let Some(cut) = self.field.explicit_cutoff {
                    if cut < n as usize + 1 {
                        return Err(Error::InvalidParams(format!(
                            "cutoff {cut} cannot represent the number state |{n}⟩ (needs >= {})",
                            n + 1
                        )));
                    }
                }
            }
        }
        if self.field.explicit_cutoff == Some(0) {
            return Err(Error::InvalidParams("explicit cutoff must be positive".into()));
        }
        Ok(())
    }

    /// Photon-number cutoff `N` for this configuration.
    pub fn cutoff(&self) -> usize {
        fock_cutoff(&self.field, self.tail_epsilon)
    }
}

/// 2×2 density operator of the atom in the basis `{|1⟩, |2⟩}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomState {
    matrix: ComplexMatrix,
}

impl AtomState {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: matrix.dim(),
            });
        }
        if !matrix.is_density(TOL_PROB) {
            return Err(Error::NotDensity(format!("{matrix:?}")));
        }
        Ok(Self { matrix })
    }

    /// `λ₀ E₀ + λ₁ E₁` with `E₀ = |1⟩⟨1|`, `E₁ = |2⟩⟨2|`.
    pub fn from_weights(lambda0: f64, lambda1: f64) -> Result<Self> {
        check_distribution(lambda0, lambda1, TOL_PROB)?;
        Ok(Self {
            matrix: ComplexMatrix::from_real_diag(&[lambda0, lambda1]),
        })
    }

    pub fn lower() -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diag(&[1.0, 0.0]),
        }
    }

    pub fn upper() -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diag(&[0.0, 1.0]),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn p_lower(&self) -> f64 {
        self.matrix[(0, 0)].re
    }

    pub fn p_upper(&self) -> f64 {
        self.matrix[(1, 1)].re
    }

    /// `⟨1|ρ|2⟩`
    pub fn coherence(&self) -> Complex64 {
        self.matrix[(0, 1)]
    }
}

pub(crate) fn check_distribution(lambda0: f64, lambda1: f64, tol: f64) -> Result<()> {
    let ok = lambda0.is_finite()
        && lambda1.is_finite()
        && lambda0 >= -tol
        && lambda1 >= -tol
        && (lambda0 + lambda1 - 1.0).abs() <= tol;
    if ok {
        Ok(())
    } else {
        Err(Error::BadDistribution { lambda0, lambda1 })
    }
}

/// Smallest photon-number cutoff `N` whose Poisson tail beyond `N` is below
/// `tail_epsilon` (coherent field), or `n + 1` for the number state `|n⟩`.
/// An explicit cutoff on the field replaces the automatic choice.
pub fn fock_cutoff(field: &FieldSpec, tail_epsilon: f64) -> usize {
    if let Some(cut) = field.explicit_cutoff {
        return cut;
    }
    match field.kind {
        FieldKind::Fock(n) => n as usize + 1,
        FieldKind::Coherent(theta) => {
            let mean = theta.norm_sqr();
            if mean == 0.0 {
                return 0;
            }
            // Sum the tail from the far end so that small tails are not lost
            // to cancellation against 1.
            let horizon = (mean + 40.0 * mean.sqrt() + 60.0).ceil() as usize;
            let weights = poisson_weights(theta, horizon);
            let mut tail = 0.0;
            let mut cutoff = horizon;
            for n in (0..horizon).rev() {
                tail += weights[n + 1];
                if tail >= tail_epsilon {
                    break;
                }
                cutoff = n;
            }
            cutoff
        }
    }
}

/// Poisson photon-number distribution `p_n = e^{-|θ|²} |θ|^{2n} / n!` for
/// `n = 0..=n_max`, via the log-domain recurrence.
pub fn poisson_weights(theta: Complex64, n_max: usize) -> Vec<f64> {
    let mean = theta.norm_sqr();
    let mut weights = vec![0.0; n_max + 1];
    if mean == 0.0 {
        weights[0] = 1.0;
        return weights;
    }
    let log_mean = mean.ln();
    let mut log_p = -mean;
    for (n, w) in weights.iter_mut().enumerate() {
        if n > 0 {
            log_p += log_mean - (n as f64).ln();
        }
        *w = log_p.exp();
    }
    weights
}

/// Photon-number distribution of the field over `0..=n_max`.
pub fn photon_weights(field: &FieldSpec, n_max: usize) -> Vec<f64> {
    match field.kind {
        FieldKind::Coherent(theta) => poisson_weights(theta, n_max),
        FieldKind::Fock(n) => {
            let mut w = vec![0.0; n_max + 1];
            if let Some(slot) = w.get_mut(n as usize) {
                *slot = 1.0;
            }
            w
        }
    }
}

/// Rabi frequency `g √(n + 1)` of the pair `|2, n⟩ ↔ |1, n + 1⟩`.
pub fn rabi(g: f64, n: usize) -> f64 {
    g * ((n + 1) as f64).sqrt()
}

/// Photon-averaged survival and transfer probabilities.
///
/// `c0`/`s0`: upper level survives / decays to the lower level.
/// `c1`/`s1`: lower level survives / is excited to the upper level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSums {
    pub c0: f64,
    pub s0: f64,
    pub c1: f64,
    pub s1: f64,
}

impl TransitionSums {
    pub fn new(c0: f64, s0: f64, c1: f64, s1: f64) -> Self {
        Self { c0, s0, c1, s1 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.c0, self.s0, self.c1, self.s1]
    }
}

pub fn transition_sums(params: &ModelParams, t: f64) -> TransitionSums {
    let weights = photon_weights(&params.field, params.cutoff());
    let norm: f64 = weights.iter().sum();
    let mut sums = TransitionSums::new(0.0, 0.0, 0.0, 0.0);
    for (n, &p) in weights.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let p = p / norm;
        // |2,n⟩ ↔ |1,n+1⟩ at g√(n+1); |1,n⟩ ↔ |2,n−1⟩ at g√n.
        let (sin_up, cos_up) = (rabi(params.g, n) * t).sin_cos();
        let (sin_lo, cos_lo) = (params.g * (n as f64).sqrt() * t).sin_cos();
        sums.c0 += p * cos_up * cos_up;
        sums.s0 += p * sin_up * sin_up;
        sums.c1 += p * cos_lo * cos_lo;
        sums.s1 += p * sin_lo * sin_lo;
    }
    sums
}

/// Diagonal channel output `diag(λ₀c1 + λ₁s0, λ₀s1 + λ₁c0)` for given sums.
pub fn channel_from_sums(sums: &TransitionSums, lambda0: f64, lambda1: f64) -> Result<AtomState> {
    check_distribution(lambda0, lambda1, TOL_PROB)?;
    let p_lower = lambda0 * sums.c1 + lambda1 * sums.s0;
    let p_upper = lambda0 * sums.s1 + lambda1 * sums.c0;
    AtomState::new(ComplexMatrix::from_real_diag(&[p_lower, p_upper]))
}

/// Closed-form reduced atom state at time `t` for the initial state
/// `λ₀|1⟩⟨1| + λ₁|2⟩⟨2|`.
pub fn paper_channel(params: &ModelParams, lambda0: f64, lambda1: f64, t: f64) -> Result<AtomState> {
    check_distribution(lambda0, lambda1, params.tol_prob)?;
    channel_from_sums(&transition_sums(params, t), lambda0, lambda1)
}

/// Closed-form channel applied to an arbitrary atom state. The closed form
/// acts on populations only, so coherences of `rho` do not enter.
pub fn paper_channel_state(params: &ModelParams, rho: &AtomState, t: f64) -> Result<AtomState> {
    channel_from_sums(&transition_sums(params, t), rho.p_lower(), rho.p_upper())
}

/// Propagator `exp(-i t H_int)` assembled from the dressed-state spectral
/// decomposition, on the atom ⊗ field space with field dimension `n_max + 2`.
///
/// Each pair `|2,n⟩, |1,n+1⟩` for `n = 0..=n_max` contributes
/// `Σ_j e^{-it(-1)^j Ω_n} |Φ_j⟩⟨Φ_j|` with
/// `|Φ_j⟩ = (|2,n⟩ + (-1)^j |1,n+1⟩)/√2`; the uncoupled vectors `|1,0⟩` and
/// `|2,n_max+1⟩` are left invariant.
pub fn dressed_unitary(params: &ModelParams, t: f64, n_max: usize) -> ComplexMatrix {
    let field_dim = n_max + 2;
    let mut u = ComplexMatrix::zeros(2 * field_dim);
    let one = Complex64::new(1.0, 0.0);
    u[(0, 0)] = one;
    u[(2 * field_dim - 1, 2 * field_dim - 1)] = one;

    let amp = std::f64::consts::FRAC_1_SQRT_2;
    for n in 0..=n_max {
        let omega = rabi(params.g, n);
        let upper = field_dim + n;
        let lower = n + 1;
        for sign in [1.0, -1.0] {
            let phase = Complex64::new(0.0, -t * sign * omega).exp();
            let components = [(upper, amp), (lower, sign * amp)];
            for &(r, vr) in &components {
                for &(c, vc) in &components {
                    u[(r, c)] += phase * (vr * vc);
                }
            }
        }
    }
    u
}

/// `⟨σ_z⟩ = p_upper − p_lower` of the closed-form channel output.
pub fn atomic_inversion(params: &ModelParams, lambda0: f64, lambda1: f64, t: f64) -> Result<f64> {
    let state = paper_channel(params, lambda0, lambda1, t)?;
    Ok(state.p_upper() - state.p_lower())
}

/// Revival times `T_k = k · 2π|θ| / g` for `k = 1..=k_max`.
pub fn revival_times(params: &ModelParams, k_max: usize) -> Result<Vec<f64>> {
    let amplitude = match params.field.kind {
        FieldKind::Coherent(theta) if theta.norm() > 0.0 => theta.norm(),
        _ => return Err(Error::NotCoherentField),
    };
    let period = 2.0 * PI * amplitude / params.g;
    Ok((1..=k_max).map(|k| k as f64 * period).collect())
}
