//! Numerical core for mixed-state quantum computation in the one-clean-qubit
//! (DQC1) model.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`linalg`]: dense complex matrices, Hermitian and normal eigensolvers,
//!   QR and Haar-random unitaries.
//! - [`state`]: density matrices, von Neumann entropy, partial traces and
//!   projective measurement updates.
//! - [`dqc1`]: the exact output state of the generalized one-clean-qubit
//!   circuit, trace estimation by simulated shots, and its explicit
//!   separable ensemble.
//! - [`discord`]: mutual information, measured conditional entropy, quantum
//!   discord, classicality and concordance tests.
//! - [`qswe`]: quadratically signed weight enumerators over GF(2).
//! - [`braid`]: Temperley-Lieb path-model representations of braid groups.
//!
//! File formats, threading and the command-line front end live in the
//! companion `dqc1` crate.

#![no_std]
// Whenever std is in the build graph (tests, dev-dependency feature
// unification) its inherent float methods shadow `num_traits::Float`.
#![allow(unused_imports)]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod braid;
pub mod discord;
pub mod dqc1;
mod error;
pub mod linalg;
pub mod qswe;
pub mod rng;
pub mod state;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition};
pub use num_complex::Complex64;
pub use state::DensityMatrix;

/// Tolerance used to validate density matrices and unitaries.
pub const STATE_TOL: f64 = 1e-10;
