use std::f64::consts::PI;

use jcm_core::entropy::{
    identity_check, mutual_entropy, relative_entropy, von_neumann_entropy, LogBase, MutualEntropyMode,
};
use jcm_core::linalg::{hermitian_eig, kron, matrix_exp_series, partial_trace_field};
use jcm_core::model::{dressed_unitary, paper_channel, transition_sums};
use jcm_core::oracle::{propagator, Exponentiator};
use jcm_core::{Complex64, ComplexMatrix, FieldSpec, ModelParams};
use proptest::prelude::*;

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |v| {
        let rows: Vec<Vec<Complex64>> = v
            .chunks(dim)
            .map(|r| r.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows)
    })
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|a| a.add(&a.adjoint()).scale(Complex64::new(0.5, 0.0)))
}

fn density(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|a| {
        let m = &a * &a.adjoint();
        let tr = m.trace().re;
        m.scale(Complex64::new(1.0 / tr, 0.0))
    })
}

fn coherent_params() -> impl Strategy<Value = ModelParams> {
    (0.0..40.0f64, 0.2..3.0f64)
        .prop_map(|(mean, g)| ModelParams::new(g, FieldSpec::coherent_mean(mean)).unwrap())
}

fn lambda0() -> impl Strategy<Value = f64> {
    (0.0..1.0f64).prop_filter("non-degenerate", |l| (l - 0.5).abs() > 1e-6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eig_reconstructs((dim, h) in (2usize..9).prop_flat_map(|d| (Just(d), hermitian(d)))) {
        let sys = hermitian_eig(&h).unwrap();
        prop_assert!(sys.reconstruct().sub(&h).frobenius_norm() < 1e-10);
        prop_assert_eq!(sys.dim(), dim);
    }

    #[test]
    fn series_exponential_is_unitary(h in hermitian(6), t in -30.0..30.0f64) {
        let u = matrix_exp_series(&h, Complex64::new(0.0, -t)).unwrap();
        prop_assert!(u.unitarity_residual() < 1e-10);
    }

    #[test]
    fn partial_trace_is_linear(a in matrix(6), b in matrix(6), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let s = Complex64::new(re, im);
        let lhs = partial_trace_field(&a.add(&b.scale(s)), 3).unwrap();
        let rhs = partial_trace_field(&a, 3).unwrap().add(&partial_trace_field(&b, 3).unwrap().scale(s));
        prop_assert!(lhs.sub(&rhs).frobenius_norm() < 1e-12);
    }

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(3), c in matrix(2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.sub(&right).frobenius_norm() < 1e-10);
    }

    #[test]
    fn sums_are_normalised(params in coherent_params(), t in -100.0..100.0f64) {
        let s = transition_sums(&params, t);
        prop_assert!((s.c0 + s.s0 - 1.0).abs() < 1e-10);
        prop_assert!((s.c1 + s.s1 - 1.0).abs() < 1e-10);
        for v in s.as_array() {
            prop_assert!((-1e-10..=1.0 + 1e-10).contains(&v));
        }
    }

    #[test]
    fn channel_is_valid_and_affine(params in coherent_params(), l0 in 0.0..1.0f64, t in 0.0..80.0f64) {
        let out = paper_channel(&params, l0, 1.0 - l0, t).unwrap();
        prop_assert!(out.matrix().is_density(1e-10));
        let e0 = paper_channel(&params, 1.0, 0.0, t).unwrap();
        let e1 = paper_channel(&params, 0.0, 1.0, t).unwrap();
        let mix = e0.matrix().scale(l0.into()).add(&e1.matrix().scale((1.0 - l0).into()));
        prop_assert!(out.matrix().sub(&mix).frobenius_norm() < 1e-14);
    }

    #[test]
    fn fock_sums_are_periodic(n in 0u32..20, g in 0.2..3.0f64, t in 0.0..20.0f64) {
        let params = ModelParams::new(g, FieldSpec::fock(n)).unwrap();
        let period = PI / (g * ((n + 1) as f64).sqrt());
        let a = transition_sums(&params, t);
        let b = transition_sums(&params, t + period);
        prop_assert!((a.c0 - b.c0).abs() < 1e-9);
        prop_assert!((a.s0 - b.s0).abs() < 1e-9);
    }

    #[test]
    fn vacuum_ground_is_stationary(g in 0.1..5.0f64, t in -50.0..50.0f64) {
        let params = ModelParams::new(g, FieldSpec::fock(0)).unwrap();
        let out = paper_channel(&params, 1.0, 0.0, t).unwrap();
        prop_assert_eq!(out.p_lower(), 1.0);
        prop_assert_eq!(out.p_upper(), 0.0);
    }

    #[test]
    fn dressed_matches_series(g in 0.1..3.0f64, t in -15.0..15.0f64, n_max in 1usize..24) {
        let params = ModelParams::new(g, FieldSpec::fock(0)).unwrap();
        let series = propagator(&params, t, n_max, Exponentiator::Series).unwrap();
        let dressed = dressed_unitary(&params, t, n_max);
        prop_assert!(series.sub(&dressed).frobenius_norm() < 1e-8);
        prop_assert!(dressed.unitarity_residual() < 1e-10);
    }

    #[test]
    fn klein_inequality((dim, s, r) in prop_oneof![Just(2usize), Just(4usize)]
        .prop_flat_map(|d| (Just(d), density(d), density(d)))) {
        let rel = relative_entropy(&s, &r, LogBase::Natural).unwrap();
        prop_assert!(rel >= -1e-12, "dim {} S = {}", dim, rel);
        prop_assert!(relative_entropy(&s, &s, LogBase::Natural).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mutual_entropy_bounded_and_modes_agree(params in coherent_params(), l0 in lambda0(), t in 0.0..80.0f64) {
        let closed = mutual_entropy(&params, l0, 1.0 - l0, t, MutualEntropyMode::ClosedForm).unwrap();
        let compound = mutual_entropy(&params, l0, 1.0 - l0, t, MutualEntropyMode::Compound).unwrap();
        let s_rho = von_neumann_entropy(&ComplexMatrix::from_real_diag(&[l0, 1.0 - l0]), LogBase::Natural).unwrap();
        prop_assert!(closed >= 0.0);
        prop_assert!(closed <= s_rho + 1e-10);
        prop_assert!((closed - compound).abs() < 1e-10);
        let (lhs, rhs) = identity_check(&params, l0, 1.0 - l0, t).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }
}
