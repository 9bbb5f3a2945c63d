//! The generalized one-clean-qubit circuit.
//!
//! The top qubit starts in `σ = (I + αZ)/2`, is rotated by a one-qubit
//! unitary `V(θ, φ, χ)` and then controls `U` on `n` maximally mixed qubits.
//! Only `δ = φ + χ` survives in the output state
//!
//! ```text
//!             1      ⎡ (1 + α cos2θ) I           -α e^{iδ} sin2θ U ⎤
//! ρ(α) =  ─────────  ⎢                                              ⎥
//!          2^{n+1}   ⎣ -α e^{-iδ} sin2θ U†       (1 - α cos2θ) I   ⎦
//! ```
//!
//! With `α = 1, θ = π/4, δ = π` this is the textbook circuit with a
//! Hadamard on the clean qubit, whose blocks are `[[I, U], [U†, I]]/2^{n+1}`.

use alloc::{format, vec, vec::Vec};
use core::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::linalg::{normal_eigen, ComplexMatrix, ZERO};
use crate::state::DensityMatrix;
use crate::{rng, Error, Result, STATE_TOL};

/// Shots drawn from one random stream. Batches are the unit of parallel
/// work; their layout does not depend on the number of threads.
pub const SHOT_BATCH: u64 = 1 << 16;

/// Parameters of the generalized circuit.
#[derive(Debug, Clone)]
pub struct Dqc1Config {
    alpha: f64,
    theta: f64,
    delta: f64,
    unitary: ComplexMatrix,
    n_qubits: usize,
}

impl Dqc1Config {
    pub fn new(alpha: f64, theta: f64, delta: f64, unitary: ComplexMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "polarization {alpha} outside [0, 1]"
            )));
        }
        if !theta.is_finite() || !delta.is_finite() {
            return Err(Error::InvalidArgument(
                "circuit angles must be finite".into(),
            ));
        }
        let d = unitary.rows();
        if !unitary.is_square() || d < 2 || !d.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "controlled unitary must be 2^n x 2^n with n >= 1, got {}x{}",
                unitary.rows(),
                unitary.cols()
            )));
        }
        let residual = unitary.unitarity_residual();
        if residual > STATE_TOL {
            return Err(Error::RejectedInput(format!(
                "controlled matrix is not unitary (residual {residual:e})"
            )));
        }
        Ok(Self {
            alpha,
            theta,
            delta,
            n_qubits: d.trailing_zeros() as usize,
            unitary,
        })
    }

    /// `α = 1, θ = π/4, δ = π`: reproduces the pure-qubit circuit exactly.
    pub fn standard(unitary: ComplexMatrix) -> Result<Self> {
        Self::new(1.0, FRAC_PI_4, PI, unitary)
    }

    /// The standard circuit with a partially polarized clean qubit.
    pub fn polarized(alpha: f64, unitary: ComplexMatrix) -> Result<Self> {
        Self::new(alpha, FRAC_PI_4, PI, unitary)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `-α sin2θ e^{iδ}`: the factor relating `⟨X⟩ - i⟨Y⟩` to `tr U / 2ⁿ`.
    pub fn trace_prefactor(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.delta) * (-self.alpha * (2.0 * self.theta).sin())
    }
}

/// Exact output state in block form.
#[derive(Debug, Clone)]
pub struct Dqc1State {
    config: Dqc1Config,
    top_left: f64,
    bottom_right: f64,
    off_diag: Complex64,
}

/// Builds the block form of the circuit output.
pub fn build_state(config: Dqc1Config) -> Dqc1State {
    let norm = 1.0 / (1u64 << (config.n_qubits + 1)) as f64;
    let c2 = (2.0 * config.theta).cos();
    let s2 = (2.0 * config.theta).sin();
    Dqc1State {
        top_left: (1.0 + config.alpha * c2) * norm,
        bottom_right: (1.0 - config.alpha * c2) * norm,
        off_diag: Complex64::from_polar(1.0, config.delta) * (-config.alpha * s2 * norm),
        config,
    }
}

impl Dqc1State {
    pub fn config(&self) -> &Dqc1Config {
        &self.config
    }

    /// `(1 + α cos2θ)/2^{n+1}`.
    pub fn top_left_block(&self) -> f64 {
        self.top_left
    }

    /// `(1 - α cos2θ)/2^{n+1}`.
    pub fn bottom_right_block(&self) -> f64 {
        self.bottom_right
    }

    /// `-α e^{iδ} sin2θ / 2^{n+1}`, the coefficient of `U` in the upper block.
    pub fn off_diag_coeff(&self) -> Complex64 {
        self.off_diag
    }

    /// Dimension of the controlled register, `2ⁿ`.
    pub fn register_dim(&self) -> usize {
        self.config.unitary.rows()
    }

    /// Materializes the `2^{n+1}`-dimensional density matrix. The clean qubit
    /// is the first (most significant) factor.
    pub fn dense(&self) -> DensityMatrix {
        let d = self.register_dim();
        let u = &self.config.unitary;
        let mut m = ComplexMatrix::zeros(2 * d, 2 * d);
        for i in 0..d {
            m[(i, i)] = Complex64::new(self.top_left, 0.0);
            m[(d + i, d + i)] = Complex64::new(self.bottom_right, 0.0);
            for j in 0..d {
                m[(i, d + j)] = self.off_diag * u[(i, j)];
                m[(d + j, i)] = (self.off_diag * u[(i, j)]).conj();
            }
        }
        DensityMatrix::from_parts_unchecked(vec![2; self.config.n_qubits + 1], m)
    }
}

/// Exact clean-qubit expectations and the trace they encode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceExpectations {
    pub x: f64,
    pub y: f64,
    /// `(⟨X⟩ - i⟨Y⟩) / (-α sin2θ e^{iδ})`, equal to `tr U / 2ⁿ`.
    pub implied_trace: Complex64,
}

/// `⟨X⟩` and `⟨Y⟩` on the clean qubit from the block form, in `O(2ⁿ)`.
///
/// `tr(ρ (X⊗I)) = 2 Re(c tr U)` and `tr(ρ (Y⊗I)) = -2 Im(c tr U)` where `c` is
/// the off-diagonal coefficient, so `⟨X⟩ - i⟨Y⟩ = 2 c tr U`.
pub fn exact_trace_expectations(state: &Dqc1State) -> Result<TraceExpectations> {
    let (x, y) = clean_qubit_expectations(state);
    let pre = state.config.trace_prefactor();
    if pre.norm() < 1e-14 {
        return Err(Error::UninformativeCircuit(pre.norm()));
    }
    Ok(TraceExpectations {
        x,
        y,
        implied_trace: Complex64::new(x, -y) / pre,
    })
}

fn clean_qubit_expectations(state: &Dqc1State) -> (f64, f64) {
    let ct = state.off_diag * state.config.unitary.trace();
    (2.0 * ct.re, -2.0 * ct.im)
}

/// Pauli measured on the clean qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Y,
}

/// Sample mean of `shots` simulated ±1 outcomes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√L`.
    pub stderr: f64,
    pub shots: u64,
    pub basis: Basis,
    pub seed: u64,
}

impl ShotEstimate {
    /// Assembles the estimate from the number of `+1` outcomes.
    pub fn from_counts(plus: u64, shots: u64, basis: Basis, seed: u64) -> Self {
        let l = shots as f64;
        let mean = (2.0 * plus as f64 - l) / l;
        // sample variance of ±1 outcomes with mean m is 1 - m²
        let var = (1.0 - mean * mean).max(0.0);
        Self {
            mean,
            stderr: (var / l).sqrt(),
            shots,
            basis,
            seed,
        }
    }
}

/// Probability of a `+1` outcome, `(1 + ⟨basis⟩)/2`.
pub fn plus_probability(state: &Dqc1State, basis: Basis) -> f64 {
    let (x, y) = clean_qubit_expectations(state);
    let e = match basis {
        Basis::X => x,
        Basis::Y => y,
    };
    ((1.0 + e) / 2.0).clamp(0.0, 1.0)
}

/// Number of batches covering `shots`.
pub fn batch_count(shots: u64) -> u64 {
    shots.div_ceil(SHOT_BATCH)
}

/// `+1` outcomes in batch `batch` of a run with `shots` total shots.
pub fn sample_batch(p_plus: f64, shots: u64, seed: u64, batch: u64) -> u64 {
    let start = batch * SHOT_BATCH;
    let len = SHOT_BATCH.min(shots.saturating_sub(start));
    let mut rng = rng::child(seed, batch);
    (0..len).filter(|_| rng.random_bool(p_plus)).count() as u64
}

/// Draws independent ±1 outcomes with the exact Bernoulli parameter.
pub fn sample_shots(
    state: &Dqc1State,
    basis: Basis,
    shots: u64,
    seed: u64,
) -> Result<ShotEstimate> {
    if shots == 0 {
        return Err(Error::InvalidArgument(
            "at least one shot is required".into(),
        ));
    }
    let p = plus_probability(state, basis);
    let plus = (0..batch_count(shots))
        .map(|b| sample_batch(p, shots, seed, b))
        .sum();
    Ok(ShotEstimate::from_counts(plus, shots, basis, seed))
}

/// Normalized-trace estimate assembled from an X run and a Y run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEstimate {
    pub value: Complex64,
    /// Standard error of the complex estimate, `√(se_X² + se_Y²)/|prefactor|`.
    pub stderr: f64,
}

pub fn implied_trace_from_shots(
    state: &Dqc1State,
    x: &ShotEstimate,
    y: &ShotEstimate,
) -> Result<TraceEstimate> {
    if x.basis != Basis::X || y.basis != Basis::Y {
        return Err(Error::InvalidArgument(
            "expected one X run and one Y run".into(),
        ));
    }
    let pre = state.config.trace_prefactor();
    if pre.norm() < 1e-14 {
        return Err(Error::UninformativeCircuit(pre.norm()));
    }
    Ok(TraceEstimate {
        value: Complex64::new(x.mean, -y.mean) / pre,
        stderr: (x.stderr * x.stderr + y.stderr * y.stderr).sqrt() / pre.norm(),
    })
}

/// One pure product term `weight · |a⟩⟨a| ⊗ |e_j⟩⟨e_j|`.
#[derive(Debug, Clone)]
pub struct EnsembleMember {
    pub weight: f64,
    pub clean_state: [Complex64; 2],
    /// Index into [`SeparableEnsemble::eigenvectors`].
    pub eigen_index: usize,
}

/// Explicit separable decomposition of the circuit output.
#[derive(Debug, Clone)]
pub struct SeparableEnsemble {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// `cos ψ = α`.
    pub psi: f64,
    pub eigenphases: Vec<Complex64>,
    /// Eigenvectors of `U`, as columns.
    pub eigenvectors: ComplexMatrix,
    pub members: Vec<EnsembleMember>,
}

impl SeparableEnsemble {
    /// Largest violation among the four defining identities.
    pub fn constraint_residual(&self, state: &Dqc1State) -> f64 {
        let cfg = state.config();
        let (c2, s2) = ((2.0 * cfg.theta).cos(), (2.0 * cfg.theta).sin());
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        [
            a * a + c * c - (1.0 + cfg.alpha * c2),
            b * b + d * d - (1.0 - cfg.alpha * c2),
            a * b + c * d - cfg.alpha * s2,
            a * a + b * b - 1.0,
            c * c + d * d - 1.0,
        ]
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max)
    }

    /// `Σ w |a⟩⟨a| ⊗ |e_j⟩⟨e_j|` as a dense matrix.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.eigenvectors.rows();
        let mut out = ComplexMatrix::zeros(2 * dim, 2 * dim);
        for m in &self.members {
            let e = self.eigenvectors.column(m.eigen_index);
            let joint: Vec<Complex64> = m
                .clean_state
                .iter()
                .flat_map(|&s| e.iter().map(move |&v| s * v))
                .collect();
            for i in 0..2 * dim {
                if joint[i] == ZERO {
                    continue;
                }
                for j in 0..2 * dim {
                    out[(i, j)] += joint[i] * joint[j].conj() * m.weight;
                }
            }
        }
        out
    }
}

/// Writes the state as a mixture of pure product states.
///
/// With `2u = 2θ + ψ`, `2v = 2θ - ψ` and `cos ψ = α`, the amplitudes
/// `a = cos u, b = sin u, c = cos v, d = sin v` satisfy all four constraints
/// identically. For eigenpair `(e^{iφ_j}, |e_j⟩)` of `U` the clean-qubit
/// states are `a|0⟩ - e^{-i(φ_j+δ)} b|1⟩` and `c|0⟩ - e^{-i(φ_j+δ)} d|1⟩`,
/// each with weight `1/2^{n+1}`; the two coincide when `α = 1`.
pub fn separable_decomposition(state: &Dqc1State) -> Result<SeparableEnsemble> {
    let cfg = state.config();
    if !(0.0..=1.0).contains(&cfg.alpha) {
        return Err(Error::InvalidArgument(format!(
            "polarization {} outside [0, 1]",
            cfg.alpha
        )));
    }
    let psi = cfg.alpha.acos();
    let (u, v) = (cfg.theta + psi / 2.0, cfg.theta - psi / 2.0);
    let (a, b, c, d) = (u.cos(), u.sin(), v.cos(), v.sin());
    let eig = normal_eigen(&cfg.unitary, STATE_TOL)?;
    let dim = cfg.unitary.rows();
    let weight = 1.0 / (2 * dim) as f64;
    let merged = psi == 0.0;
    let mut members = Vec::with_capacity(2 * dim);
    for (j, &lambda) in eig.values.iter().enumerate() {
        // e^{-i(φ_j + δ)} = conj(λ_j) e^{-iδ}
        let ph = -(lambda / lambda.norm()).conj() * Complex64::from_polar(1.0, -cfg.delta);
        let xi = [Complex64::new(a, 0.0), ph * b];
        if merged {
            members.push(EnsembleMember {
                weight: 2.0 * weight,
                clean_state: xi,
                eigen_index: j,
            });
        } else {
            members.push(EnsembleMember {
                weight,
                clean_state: xi,
                eigen_index: j,
            });
            members.push(EnsembleMember {
                weight,
                clean_state: [Complex64::new(c, 0.0), ph * d],
                eigen_index: j,
            });
        }
    }
    Ok(SeparableEnsemble {
        a,
        b,
        c,
        d,
        psi,
        eigenphases: eig.values,
        eigenvectors: eig.vectors,
        members,
    })
}

/// `tr(ρ (I₂ ⊗ M))` for a Hermitian observable on the controlled register.
///
/// Computed by dense contraction and by the closed form `tr(M)/2ⁿ`; the two
/// must agree to 1e-10.
pub fn b_side_expectation(state: &Dqc1State, observable: &ComplexMatrix) -> Result<f64> {
    let d = state.register_dim();
    if observable.rows() != d || observable.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: observable.rows(),
        });
    }
    if !observable.is_hermitian(STATE_TOL) {
        return Err(Error::InvalidArgument("observable is not Hermitian".into()));
    }
    let rho = state.dense();
    let lifted = ComplexMatrix::identity(2).kron(observable);
    let rm = rho.matrix();
    let mut dense = Complex64::new(0.0, 0.0);
    for i in 0..2 * d {
        for j in 0..2 * d {
            dense += rm[(i, j)] * lifted[(j, i)];
        }
    }
    let closed = observable.trace().re / d as f64;
    if (dense.re - closed).abs() > 1e-10 || dense.im.abs() > 1e-10 {
        return Err(Error::Inconsistent(format!(
            "dense contraction {dense} disagrees with tr(M)/2^n = {closed}"
        )));
    }
    Ok(dense.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gates, haar_random_unitary, ONE};

    fn assemble_blocks(state: &Dqc1State) -> ComplexMatrix {
        let u = state.config().unitary();
        let d = u.rows();
        let mut m = ComplexMatrix::zeros(2 * d, 2 * d);
        m.set_block(
            0,
            0,
            &ComplexMatrix::identity(d).scale_real(state.top_left_block()),
        );
        m.set_block(
            d,
            d,
            &ComplexMatrix::identity(d).scale_real(state.bottom_right_block()),
        );
        m.set_block(0, d, &u.scale(state.off_diag_coeff()));
        m.set_block(d, 0, &u.adjoint().scale(state.off_diag_coeff().conj()));
        m
    }

    #[test]
    fn unpolarized_ancilla_is_maximally_mixed() {
        let u = haar_random_unitary(4, 1).unwrap();
        let s = build_state(Dqc1Config::new(0.0, 0.7, 1.3, u).unwrap());
        let mixed = ComplexMatrix::identity(8).scale_real(0.125);
        assert!(s.dense().matrix().approx_eq(&mixed, 1e-15));
    }

    #[test]
    fn standard_circuit_gives_textbook_blocks() {
        let u = haar_random_unitary(4, 2).unwrap();
        let s = build_state(Dqc1Config::standard(u.clone()).unwrap());
        let mut expect = ComplexMatrix::identity(8);
        expect.set_block(0, 4, &u);
        expect.set_block(4, 0, &u.adjoint());
        let expect = expect.scale_real(0.125);
        assert!(s.dense().matrix().approx_eq(&expect, 1e-12));
    }

    #[test]
    fn theta_zero_is_block_diagonal() {
        let u = haar_random_unitary(2, 3).unwrap();
        let s = build_state(Dqc1Config::new(0.6, 0.0, 0.4, u).unwrap());
        let m = s.dense().into_matrix();
        let expect = ComplexMatrix::diagonal(&[
            ONE.scale(1.6 / 4.0),
            ONE.scale(1.6 / 4.0),
            ONE.scale(0.4 / 4.0),
            ONE.scale(0.4 / 4.0),
        ]);
        assert!(m.approx_eq(&expect, 1e-15));
    }

    #[test]
    fn dense_matches_block_assembly_and_is_valid() {
        for seed in 0..50u64 {
            let f = seed as f64;
            let u = haar_random_unitary(1 << (1 + seed % 3), seed).unwrap();
            let cfg = Dqc1Config::new((f * 0.37).fract(), f * 0.61, f * 1.9, u).unwrap();
            let s = build_state(cfg);
            let dense = s.dense();
            assert!(dense.matrix().approx_eq(&assemble_blocks(&s), 1e-12));
            assert!(DensityMatrix::new(dense.dims().to_vec(), dense.into_matrix()).is_ok());
        }
    }

    #[test]
    fn config_validation() {
        let u = gates::pauli_z();
        assert!(Dqc1Config::new(1.1, 0.0, 0.0, u.clone()).is_err());
        assert!(Dqc1Config::new(-0.1, 0.0, 0.0, u.clone()).is_err());
        assert!(Dqc1Config::new(0.5, f64::NAN, 0.0, u).is_err());
        assert!(Dqc1Config::standard(ComplexMatrix::identity(3)).is_err());
        assert!(Dqc1Config::standard(ComplexMatrix::identity(2).scale_real(1.5)).is_err());
        assert!(Dqc1Config::standard(ComplexMatrix::identity(1)).is_err());
    }

    #[test]
    fn trace_expectation_examples() {
        let id = build_state(Dqc1Config::standard(ComplexMatrix::identity(4)).unwrap());
        let e = exact_trace_expectations(&id).unwrap();
        assert!((e.implied_trace - ONE).norm() < 1e-15);
        assert!((e.x - 1.0).abs() < 1e-15 && e.y.abs() < 1e-15);
        let z = build_state(Dqc1Config::standard(gates::pauli_z()).unwrap());
        assert!(exact_trace_expectations(&z).unwrap().implied_trace.norm() < 1e-15);
        let flat = build_state(Dqc1Config::new(1.0, 0.0, 0.0, gates::pauli_z()).unwrap());
        assert!(matches!(
            exact_trace_expectations(&flat),
            Err(Error::UninformativeCircuit(_))
        ));
        let dark = build_state(Dqc1Config::polarized(0.0, gates::pauli_z()).unwrap());
        assert!(exact_trace_expectations(&dark).is_err());
    }

    #[test]
    fn expectations_match_dense_contraction() {
        for seed in 0..10u64 {
            let f = seed as f64;
            let u = haar_random_unitary(8, seed).unwrap();
            let s = build_state(
                Dqc1Config::new(0.2 + 0.07 * f, 0.3 + 0.1 * f, 0.5 * f, u.clone()).unwrap(),
            );
            let e = exact_trace_expectations(&s).unwrap();
            let rho = s.dense();
            let xi = gates::pauli_x().kron(&ComplexMatrix::identity(8));
            let yi = gates::pauli_y().kron(&ComplexMatrix::identity(8));
            let x = (rho.matrix() * &xi).trace().re;
            let y = (rho.matrix() * &yi).trace().re;
            assert!((x - e.x).abs() < 1e-14 && (y - e.y).abs() < 1e-14);
            let direct = u.trace() / 8.0;
            assert!((e.implied_trace - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn expectations_are_linear_in_alpha() {
        let u = haar_random_unitary(8, 77).unwrap();
        let at = |alpha: f64| {
            let s = build_state(Dqc1Config::new(alpha, 0.4, 2.1, u.clone()).unwrap());
            clean_qubit_expectations(&s)
        };
        let (x1, y1) = at(1.0);
        for k in 0..=10 {
            let alpha = k as f64 / 10.0;
            let (x, y) = at(alpha);
            assert!((x - alpha * x1).abs() < 1e-12 && (y - alpha * y1).abs() < 1e-12);
        }
    }

    #[test]
    fn shots_identity_are_exact() {
        let s = build_state(Dqc1Config::standard(ComplexMatrix::identity(2)).unwrap());
        for shots in [1, 17, 1000] {
            let e = sample_shots(&s, Basis::X, shots, 5).unwrap();
            assert_eq!(e.mean, 1.0);
            assert_eq!(e.stderr, 0.0);
        }
        assert!(sample_shots(&s, Basis::X, 0, 5).is_err());
    }

    #[test]
    fn shots_traceless_unitary() {
        let s = build_state(Dqc1Config::standard(gates::pauli_z()).unwrap());
        let e = sample_shots(&s, Basis::X, 10_000, 99).unwrap();
        // binomial standard error at p = 1/2: sqrt(1/L) = 0.01
        assert!((e.stderr - 0.01).abs() < 1e-4);
        assert!(e.mean.abs() < 5.0 * e.stderr);
        assert_eq!(e, sample_shots(&s, Basis::X, 10_000, 99).unwrap());
    }

    #[test]
    fn batches_partition_the_run() {
        let s = build_state(Dqc1Config::standard(haar_random_unitary(4, 8).unwrap()).unwrap());
        let shots = 3 * SHOT_BATCH + 123;
        let p = plus_probability(&s, Basis::Y);
        let total: u64 = (0..batch_count(shots))
            .map(|b| sample_batch(p, shots, 4, b))
            .sum();
        let e = sample_shots(&s, Basis::Y, shots, 4).unwrap();
        assert_eq!(e, ShotEstimate::from_counts(total, shots, Basis::Y, 4));
        assert_eq!(batch_count(shots), 4);
    }

    #[test]
    fn separable_examples() {
        let u = haar_random_unitary(8, 21).unwrap();
        for (alpha, theta) in [(1.0, 0.3), (0.0, FRAC_PI_4), (0.45, 1.1), (1.0, FRAC_PI_4)] {
            let s = build_state(Dqc1Config::new(alpha, theta, 0.8, u.clone()).unwrap());
            let ens = separable_decomposition(&s).unwrap();
            assert!(ens.constraint_residual(&s) < 1e-12);
            let resid = (&ens.reconstruct() - s.dense().matrix()).frobenius_norm();
            assert!(resid < 1e-12, "alpha {alpha}: residual {resid}");
            let total: f64 = ens.members.iter().map(|m| m.weight).sum();
            assert!((total - 1.0).abs() < 1e-14);
        }
        let s = build_state(Dqc1Config::new(1.0, 0.3, 0.0, u).unwrap());
        let ens = separable_decomposition(&s).unwrap();
        assert_eq!(ens.psi, 0.0);
        assert_eq!(ens.members.len(), 8);
        assert!((ens.a - 0.3f64.cos()).abs() < 1e-15 && (ens.d - 0.3f64.sin()).abs() < 1e-15);
        assert!(ens.members.iter().all(|m| (m.weight - 0.125).abs() < 1e-15));
    }

    #[test]
    fn b_side_examples() {
        let u = haar_random_unitary(4, 3).unwrap();
        let s = build_state(Dqc1Config::new(0.7, 0.2, 0.9, u).unwrap());
        assert!((b_side_expectation(&s, &ComplexMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-14);
        let zi = gates::pauli_z().kron(&ComplexMatrix::identity(2));
        assert!(b_side_expectation(&s, &zi).unwrap().abs() < 1e-14);
        assert!(b_side_expectation(&s, &gates::phase().kron(&ComplexMatrix::identity(2))).is_err());
        assert!(b_side_expectation(&s, &ComplexMatrix::identity(2)).is_err());
    }
}
