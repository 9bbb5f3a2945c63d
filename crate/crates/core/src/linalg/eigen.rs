//! Hermitian eigensolver (Householder tridiagonalization followed by implicit
//! QL with Wilkinson-type shifts) and derived routines for normal matrices and
//! commuting families.

use alloc::{vec, vec::Vec};

use num_complex::Complex64;
use num_traits::Float;

use super::{ComplexMatrix, ONE, ZERO};
use crate::{Error, Result};

/// Spectrum of a Hermitian matrix: eigenvalues in descending order and the
/// matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Decomposes a Hermitian matrix. Only the lower triangle is read after
    /// the Hermiticity check, which uses a tolerance relative to the largest
    /// entry.
    pub fn hermitian(m: &ComplexMatrix) -> Result<Self> {
        check_hermitian(m)?;
        let (values, vectors) = hermitian_eigen(m, true);
        Ok(Self {
            eigenvalues: values,
            eigenvectors: vectors.expect("vectors requested"),
        })
    }

    /// Eigenvalues only, descending. Cheaper than the full decomposition.
    pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
        check_hermitian(m)?;
        Ok(hermitian_eigen(m, false).0)
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let scale = m.max_abs().max(1.0);
    let defect = m.hermiticity_defect();
    if defect > 1e-9 * scale {
        return Err(Error::RejectedInput(alloc::format!(
            "matrix is not Hermitian (defect {defect:e})"
        )));
    }
    Ok(())
}

/// Core solver. Returns eigenvalues sorted descending and, if requested, the
/// eigenvector matrix with columns in the same order.
pub(crate) fn hermitian_eigen(
    m: &ComplexMatrix,
    want_vectors: bool,
) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = m.rows();
    // Work on the Hermitized lower triangle.
    let mut a = ComplexMatrix::from_fn(
        n,
        n,
        |i, j| {
            if i >= j {
                m[(i, j)]
            } else {
                m[(j, i)].conj()
            }
        },
    );
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut q = if want_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };

    let mut u = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let tail_sq: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail_sq == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let sigma = (tail_sq + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * sigma;
        // u = (x - alpha e1)/‖x - alpha e1‖, supported on k+1..n
        for v in u.iter_mut() {
            *v = ZERO;
        }
        u[k + 1] = x0 - alpha;
        for i in k + 2..n {
            u[i] = a[(i, k)];
        }
        let norm = u[k + 1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in u[k + 1..].iter_mut() {
            *v /= norm;
        }
        // p = A u, c = u†p, w = p - c u; A <- A - 2(u w† + w u†)
        for i in k..n {
            p[i] = (k + 1..n).map(|j| a[(i, j)] * u[j]).sum();
        }
        let c: f64 = (k + 1..n).map(|i| (u[i].conj() * p[i]).re).sum();
        for i in k..n {
            p[i] -= u[i] * c;
        }
        for i in k..n {
            for j in k..n {
                let upd = u[i] * p[j].conj() + p[i] * u[j].conj();
                a[(i, j)] -= upd * 2.0;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
        if let Some(q) = q.as_mut() {
            // Q <- Q (I - 2 u u†)
            for r in 0..n {
                let s: Complex64 = (k + 1..n).map(|j| q[(r, j)] * u[j]).sum();
                for j in k + 1..n {
                    q[(r, j)] -= s * u[j].conj() * 2.0;
                }
            }
        }
    }

    // Rotate the complex subdiagonal onto the positive reals with a diagonal
    // unitary D: T = D T' D†.
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for i in 0..n.saturating_sub(1) {
        let sub = a[(i + 1, i)];
        let mag = sub.norm();
        e[i] = mag;
        phases[i + 1] = if mag > 0.0 {
            phases[i] * (sub / mag)
        } else {
            phases[i]
        };
    }

    let mut z = if want_vectors {
        Some(vec![0.0; n * n])
    } else {
        None
    };
    if let Some(z) = z.as_mut() {
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
    }
    tql2(&mut d, &mut e, z.as_deref_mut(), n);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        d[j].partial_cmp(&d[i])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            // eigenvectors = Q D Z
            let mut out = ComplexMatrix::zeros(n, n);
            for r in 0..n {
                for (col, &src) in order.iter().enumerate() {
                    let mut acc = ZERO;
                    for t in 0..n {
                        let zt = z[t * n + src];
                        if zt != 0.0 {
                            acc += q[(r, t)] * phases[t] * zt;
                        }
                    }
                    out[(r, col)] = acc;
                }
            }
            Some(out)
        }
        _ => None,
    };
    (values, vectors)
}

/// Eigenvalues (descending) of a matrix assumed Hermitian, without checks.
pub(crate) fn hermitian_eigen_values(m: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigen(m, false).0
}

/// Implicit QL on a real symmetric tridiagonal matrix with diagonal `d` and
/// subdiagonal `e` (`e[i]` couples `i` and `i+1`; `e[n-1]` is ignored).
/// Accumulates rotations into the row-major `n x n` matrix `z` when given.
fn tql2(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>, n: usize) {
    if n == 0 {
        return;
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                assert!(iter < 300, "tridiagonal QL failed to converge");
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            let zk1 = z[k * n + i + 1];
                            let zk = z[k * n + i];
                            z[k * n + i + 1] = s * zk + c * zk1;
                            z[k * n + i] = c * zk - s * zk1;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

/// Eigendecomposition of a normal matrix `N = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct NormalEigen {
    pub values: Vec<Complex64>,
    pub vectors: ComplexMatrix,
}

impl NormalEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.vectors;
        let n = v.rows();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * self.values[k] * v[(j, k)].conj())
                .sum()
        })
    }
}

/// Decomposes a normal matrix (for instance a unitary) through the commuting
/// Hermitian pair `N = H + iK`.
pub fn normal_eigen(m: &ComplexMatrix, tol: f64) -> Result<NormalEigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let defect = m.normality_defect();
    if defect > tol * m.max_abs().max(1.0) {
        return Err(Error::RejectedInput(alloc::format!(
            "matrix is not normal (defect {defect:e})"
        )));
    }
    let family = [m.hermitian_part(), m.skew_hermitian_part()];
    let vectors = simultaneous_eigenbasis(&family, 1e-9);
    let rotated = &(&vectors.adjoint() * m) * &vectors;
    let values = (0..m.rows()).map(|i| rotated[(i, i)]).collect();
    Ok(NormalEigen { values, vectors })
}

/// An orthonormal basis (as columns) that diagonalizes every member of a
/// commuting family of Hermitian matrices.
///
/// A generic real combination of the family is diagonalized first; clusters
/// of (near-)equal eigenvalues are then split by diagonalizing each member
/// restricted to the cluster. `tol` is the relative eigenvalue gap below which
/// two eigenvalues are treated as one cluster. The result is meaningful only
/// when the family actually commutes; callers verify that separately.
pub fn simultaneous_eigenbasis(family: &[ComplexMatrix], tol: f64) -> ComplexMatrix {
    let n = family.first().map(|m| m.rows()).unwrap_or(1);
    let scale = family
        .iter()
        .map(|m| m.max_abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);

    // Irrational-ish weights so accidental degeneracies of the combination
    // are unlikely.
    let mut combo = ComplexMatrix::zeros(n, n);
    for (idx, m) in family.iter().enumerate() {
        let w = 1.0 / (1.0 + 0.618_033_988_749_894_9 * idx as f64) + 0.137_2 * (idx % 3) as f64;
        combo = &combo + &m.scale_real(w);
    }
    let (values, vectors) = hermitian_eigen(&combo, true);
    let mut basis = vectors.expect("vectors requested");
    let mut clusters = cluster(&values, tol * scale * family.len().max(1) as f64);

    for member in family {
        let mut next = Vec::new();
        for cl in clusters {
            if cl.len() == 1 {
                next.push(cl);
                continue;
            }
            let sub = restrict(member, &basis, &cl);
            let (sv, svec) = hermitian_eigen(&sub, true);
            let svec = svec.expect("vectors requested");
            rotate_columns(&mut basis, &cl, &svec);
            for part in cluster(&sv, tol * scale) {
                next.push(part.iter().map(|&p| cl[p]).collect());
            }
        }
        clusters = next;
    }
    basis
}

fn cluster(sorted_desc: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in sorted_desc.iter().enumerate() {
        match out.last_mut() {
            Some(last) if sorted_desc[*last.last().unwrap()] - v <= gap => last.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn restrict(m: &ComplexMatrix, basis: &ComplexMatrix, cols: &[usize]) -> ComplexMatrix {
    let n = basis.rows();
    let s = cols.len();
    let mut mv = ComplexMatrix::zeros(n, s);
    for (c, &col) in cols.iter().enumerate() {
        let v = basis.column(col);
        let w = m.mul_vec(&v);
        mv.set_column(c, &w);
    }
    ComplexMatrix::from_fn(s, s, |i, j| {
        (0..n)
            .map(|r| basis[(r, cols[i])].conj() * mv[(r, j)])
            .sum()
    })
}

fn rotate_columns(basis: &mut ComplexMatrix, cols: &[usize], rot: &ComplexMatrix) {
    let n = basis.rows();
    let s = cols.len();
    let old: Vec<Vec<Complex64>> = cols.iter().map(|&c| basis.column(c)).collect();
    for j in 0..s {
        let mut col = vec![ZERO; n];
        for (k, oc) in old.iter().enumerate() {
            let r = rot[(k, j)];
            for (c, &o) in col.iter_mut().zip(oc) {
                *c += o * r;
            }
        }
        basis.set_column(cols[j], &col);
    }
}
