#![allow(dead_code)]

use dqc1_core::linalg::haar_random_unitary;
use dqc1_core::{Complex64, ComplexMatrix, DensityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Full-rank random state `GG†/tr(GG†)`.
pub fn random_density(rng: &mut ChaCha8Rng, dims: Vec<usize>) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let g = ginibre(rng, d, d);
    let m = &g * &g.adjoint();
    let t = m.trace().re;
    DensityMatrix::new(dims, m.scale_real(1.0 / t)).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    ginibre(rng, d, d).hermitian_part()
}

pub fn random_pure(rng: &mut ChaCha8Rng, dims: Vec<usize>) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let g = ginibre(rng, d, 1);
    let norm = g.frobenius_norm();
    let psi: Vec<Complex64> = g.column(0).iter().map(|z| z / norm).collect();
    DensityMatrix::pure(dims, &psi).unwrap()
}

pub fn haar(dim: usize, seed: u64) -> ComplexMatrix {
    haar_random_unitary(dim, seed).unwrap()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
