mod common;

use std::f64::consts::{FRAC_PI_4, PI};

use common::*;
use dqc1_core::dqc1::{
    b_side_expectation, build_state, exact_trace_expectations, sample_shots,
    separable_decomposition, Basis, Dqc1Config,
};
use dqc1_core::{Complex64, ComplexMatrix, EigenDecomposition};
use rand::Rng;

/// `C (ρ_clean ⊗ I/2ⁿ) C†` with `C = |0⟩⟨0| ⊗ U + |1⟩⟨1| ⊗ I`.
fn circuit_oracle(alpha: f64, theta: f64, delta: f64, u: &ComplexMatrix) -> ComplexMatrix {
    let d = u.rows();
    let off = Complex64::from_polar(1.0, delta) * (-alpha * (2.0 * theta).sin() / 2.0);
    let clean = ComplexMatrix::from_rows(&[
        [c((1.0 + alpha * (2.0 * theta).cos()) / 2.0, 0.0), off],
        [
            off.conj(),
            c((1.0 - alpha * (2.0 * theta).cos()) / 2.0, 0.0),
        ],
    ]);
    let input = clean.kron(&ComplexMatrix::identity(d).scale_real(1.0 / d as f64));
    let p0 = ComplexMatrix::from_rows(&[[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
    let p1 = &ComplexMatrix::identity(2) - &p0;
    let control = &p0.kron(u) + &p1.kron(&ComplexMatrix::identity(d));
    &(&control * &input) * &control.adjoint()
}

#[test]
fn block_form_matches_circuit() {
    let mut r = rng(1);
    for trial in 0..50 {
        let n = r.random_range(1..=3);
        let (alpha, theta, delta) = (
            r.random::<f64>(),
            r.random::<f64>() * PI,
            r.random::<f64>() * 2.0 * PI,
        );
        let u = haar(1 << n, trial);
        let state = build_state(Dqc1Config::new(alpha, theta, delta, u.clone()).unwrap());
        let dense = state.dense();
        assert!(
            dense
                .matrix()
                .max_abs_diff(&circuit_oracle(alpha, theta, delta, &u))
                < 1e-12
        );
        assert_eq!(dense.dims(), vec![2; n + 1].as_slice());
    }
}

#[test]
fn standard_circuit_recovers_textbook_blocks() {
    for seed in 0..5 {
        let u = haar(4, seed);
        let state = build_state(Dqc1Config::new(1.0, FRAC_PI_4, PI, u.clone()).unwrap());
        let mut expect = ComplexMatrix::identity(8);
        expect.set_block(0, 4, &u);
        expect.set_block(4, 0, &u.adjoint());
        assert!(
            state
                .dense()
                .matrix()
                .max_abs_diff(&expect.scale_real(1.0 / 8.0))
                < 1e-15
        );
    }
}

#[test]
fn implied_trace_equals_direct_trace() {
    let mut r = rng(2);
    for seed in 0..20 {
        let u = haar(16, seed);
        let (alpha, theta, delta) = (
            0.05 + 0.95 * r.random::<f64>(),
            0.1 + 1.3 * r.random::<f64>(),
            r.random::<f64>() * 6.0,
        );
        let state = build_state(Dqc1Config::new(alpha, theta, delta, u.clone()).unwrap());
        let e = exact_trace_expectations(&state).unwrap();
        assert!((e.implied_trace - u.trace() / 16.0).norm() < 1e-12);
    }
}

#[test]
fn standard_error_follows_inverse_square_root() {
    let state = build_state(Dqc1Config::standard(haar(8, 3)).unwrap());
    let scaled: Vec<f64> = [100u64, 1_000, 10_000]
        .iter()
        .map(|&l| {
            let mean: f64 = (0..20)
                .map(|s| sample_shots(&state, Basis::X, l, s).unwrap().stderr)
                .sum::<f64>()
                / 20.0;
            mean * (l as f64).sqrt()
        })
        .collect();
    let (lo, hi) = scaled
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi / lo < 2.0, "{scaled:?}");
}

#[test]
fn register_statistics_carry_no_signal() {
    let mut r = rng(4);
    for trial in 0..20 {
        let n = r.random_range(1..=3);
        let d = 1usize << n;
        let m = random_hermitian(&mut r, d);
        let expect = m.trace().re / d as f64;
        let u = haar(d, trial + 100);
        for _ in 0..3 {
            let cfg = Dqc1Config::new(
                r.random(),
                r.random::<f64>() * PI,
                r.random::<f64>() * 2.0 * PI,
                u.clone(),
            )
            .unwrap();
            let v = b_side_expectation(&build_state(cfg), &m).unwrap();
            assert!((v - expect).abs() < 1e-10);
        }
    }
}

#[test]
fn ensemble_members_are_product_states() {
    for (i, &alpha) in [0.0, 0.3, 0.7, 1.0].iter().enumerate() {
        for &theta in &[0.2, FRAC_PI_4, 1.1] {
            let state = build_state(Dqc1Config::new(alpha, theta, 0.4, haar(8, i as u64)).unwrap());
            let ens = separable_decomposition(&state).unwrap();
            assert!(ens.constraint_residual(&state) < 1e-10);
            assert!(ens.reconstruct().max_abs_diff(state.dense().matrix()) < 1e-10);
            let total: f64 = ens.members.iter().map(|m| m.weight).sum();
            assert!((total - 1.0).abs() < 1e-12);
            for m in &ens.members {
                // Schmidt rank one: the 2 x 2ⁿ coefficient matrix has one
                // nonzero singular value.
                let e = ens.eigenvectors.column(m.eigen_index);
                let coeffs = ComplexMatrix::from_fn(2, 8, |a, b| m.clean_state[a] * e[b]);
                let gram = &coeffs * &coeffs.adjoint();
                let s = EigenDecomposition::hermitian_eigenvalues(&gram).unwrap();
                assert!(s[1].abs() < 1e-10 && (s[0] - 1.0).abs() < 1e-10);
            }
        }
    }
}
