use alloc::vec;

use num_complex::Complex64;
use num_traits::Float;

use super::{ComplexMatrix, ONE, ZERO};

/// Householder QR of a square matrix: `m = Q R` with `Q` unitary and `R`
/// upper triangular. The diagonal of `R` is not normalized.
pub fn qr_decompose(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.rows();
    assert!(m.is_square(), "qr_decompose expects a square matrix");
    let mut r = m.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(1) {
        let norm_x = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * norm_x;
        for i in 0..n {
            v[i] = if i < k { ZERO } else { r[(i, k)] };
        }
        v[k] -= alpha;
        let vn = v[k..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for z in v[k..].iter_mut() {
            *z /= vn;
        }
        // R <- (I - 2 v v†) R
        for j in 0..n {
            let s: Complex64 = (k..n).map(|i| v[i].conj() * r[(i, j)]).sum();
            for i in k..n {
                r[(i, j)] -= v[i] * s * 2.0;
            }
        }
        // Q <- Q (I - 2 v v†)
        for i in 0..n {
            let s: Complex64 = (k..n).map(|j| q[(i, j)] * v[j]).sum();
            for j in k..n {
                q[(i, j)] -= s * v[j].conj() * 2.0;
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            r[(i, j)] = ZERO;
        }
    }
    (q, r)
}
