use jcm_core::entropy::{mutual_entropy, MutualEntropyMode};
use jcm_core::model::paper_channel;
use jcm_core::oracle::{
    coherence_magnitude, exact_channel, exact_mutual_entropy, oracle_cutoff, propagator, Exponentiator,
};
use jcm_core::{AtomState, FieldSpec, ModelParams};

fn fig1() -> ModelParams {
    ModelParams::new(1.0, FieldSpec::coherent_mean(25.0)).unwrap()
}

#[test]
fn fock_fields_match_closed_form_exactly() {
    for n in [0u32, 1, 2, 5] {
        let params = ModelParams::new(0.7, FieldSpec::fock(n)).unwrap();
        for l0 in [0.0, 0.2, 1.0] {
            let rho = AtomState::from_weights(l0, 1.0 - l0).unwrap();
            for t in [0.4, 2.2, 9.1] {
                let (exact, _) = exact_channel(&params, &rho, t, Exponentiator::Series).unwrap();
                let closed = paper_channel(&params, l0, 1.0 - l0, t).unwrap();
                assert!(exact.matrix().sub(closed.matrix()).frobenius_norm() < 1e-10, "n={n} l0={l0} t={t}");
            }
        }
    }
}

#[test]
fn full_cutoff_propagators_agree_and_are_unitary() {
    let params = fig1();
    let n_max = oracle_cutoff(&params);
    assert_eq!(n_max, 68);
    for t in [0.0, 7.5, 31.4, 65.0] {
        let series = propagator(&params, t, n_max, Exponentiator::Series).unwrap();
        let dressed = propagator(&params, t, n_max, Exponentiator::Dressed).unwrap();
        assert!(series.unitarity_residual() < 1e-9, "t={t}");
        assert!(dressed.unitarity_residual() < 1e-9, "t={t}");
        assert!(series.sub(&dressed).operator_norm() < 1e-8, "t={t}");
    }
}

#[test]
fn exponentiators_give_same_reduced_state() {
    let params = fig1();
    let rho = AtomState::from_weights(0.1, 0.9).unwrap();
    for t in [1.0, 20.0, 60.0] {
        let (a, ja) = exact_channel(&params, &rho, t, Exponentiator::Series).unwrap();
        let (b, jb) = exact_channel(&params, &rho, t, Exponentiator::Dressed).unwrap();
        assert!(a.matrix().sub(b.matrix()).frobenius_norm() < 1e-8);
        assert!(ja.matrix.sub(&jb.matrix).frobenius_norm() < 1e-8);
    }
}

#[test]
fn coherent_field_builds_atomic_coherence() {
    // The exact reduced state is not diagonal for a coherent field; the
    // closed form keeps only its diagonal.
    let params = fig1();
    let rho = AtomState::from_weights(0.1, 0.9).unwrap();
    let during_collapse: Vec<f64> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&t| coherence_magnitude(&params, &rho, t).unwrap())
        .collect();
    assert!(during_collapse.iter().all(|&c| c > 1e-3), "{during_collapse:?}");
    assert!(during_collapse.iter().all(|&c| c <= 0.5));
}

#[test]
fn exact_mutual_entropy_stays_within_bounds() {
    let params = fig1();
    let s_rho = -0.1f64 * 0.1f64.ln() - 0.9 * 0.9f64.ln();
    for t in [0.0, 2.0, 10.0, 31.8] {
        let exact = exact_mutual_entropy(&params, 0.1, 0.9, t).unwrap();
        let closed = mutual_entropy(&params, 0.1, 0.9, t, MutualEntropyMode::ClosedForm).unwrap();
        assert!(exact >= -1e-12 && exact <= s_rho + 1e-10, "t={t}: {exact}");
        if t == 0.0 {
            assert!((exact - closed).abs() < 1e-9);
        }
    }
}
