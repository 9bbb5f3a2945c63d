//! Dense complex linear algebra.

pub(crate) mod eigen;
mod haar;
mod matrix;
mod qr;

pub use eigen::{normal_eigen, simultaneous_eigenbasis, EigenDecomposition, NormalEigen};
pub use haar::haar_random_unitary;
pub use matrix::ComplexMatrix;
pub use qr::qr_decompose;

use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli and phase gates used throughout the crate and its tests.
pub mod gates {
    use super::{ComplexMatrix, I, ONE, ZERO};

    pub fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `diag(1, i)`; its square is Pauli Z.
    pub fn phase() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, I]])
    }

    pub fn hadamard() -> ComplexMatrix {
        let h = ONE.scale(core::f64::consts::FRAC_1_SQRT_2);
        ComplexMatrix::from_rows(&[[h, h], [h, -h]])
    }
}
