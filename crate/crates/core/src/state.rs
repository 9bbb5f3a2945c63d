//! Density matrices over labelled tensor factorizations and the entropy,
//! partial-trace and measurement primitives built on them.

use alloc::{format, vec, vec::Vec};

use num_complex::Complex64;
use num_traits::Float;

use crate::linalg::{eigen::hermitian_eigen_values, ComplexMatrix, ONE, ZERO};
use crate::{Error, Result, STATE_TOL};

/// Outcomes with probability below this are returned as flagged placeholders.
pub const DEGENERATE_PROBABILITY: f64 = 1e-14;

/// Hermitian, positive semidefinite, unit-trace matrix together with the
/// dimensions of its tensor factors.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity to [`STATE_TOL`].
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        check_dims(&dims, &matrix)?;
        let herm = matrix.hermiticity_defect();
        if herm > STATE_TOL {
            return Err(Error::RejectedInput(format!(
                "density matrix not Hermitian (defect {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - ONE).norm() > STATE_TOL {
            return Err(Error::RejectedInput(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let spectrum = hermitian_eigen_values(&matrix);
        if let Some(&min) = spectrum.last() {
            if min < -STATE_TOL {
                return Err(Error::RejectedInput(format!(
                    "density matrix has negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(Self { dims, matrix })
    }

    /// Skips validation. Used for states that are valid by construction.
    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.rows());
        Self { dims, matrix }
    }

    /// `|ψ⟩⟨ψ|` for a vector normalized on the fly.
    pub fn pure(dims: Vec<usize>, psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        let m = ComplexMatrix::outer(&v, &v);
        check_dims(&dims, &m)?;
        Ok(Self::from_parts_unchecked(dims, m))
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        let m = ComplexMatrix::identity(d.max(1)).scale_real(1.0 / d.max(1) as f64);
        check_dims(&dims, &m)?;
        Ok(Self::from_parts_unchecked(dims, m))
    }

    /// `ρ ⊗ σ`, concatenating factor lists.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::from_parts_unchecked(dims, self.matrix.kron(&other.matrix))
    }

    /// `λρ + (1-λ)σ` for states with identical factorizations.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::InvalidArgument(
                "mixing states with different factorizations".into(),
            ));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!(
                "mixing weight {lambda} outside [0,1]"
            )));
        }
        let m = &self.matrix.scale_real(lambda) + &other.matrix.scale_real(1.0 - lambda);
        Ok(Self::from_parts_unchecked(self.dims.clone(), m))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || !u.is_unitary(STATE_TOL) {
            return Err(Error::RejectedInput(
                "conjugation needs a unitary of matching size".into(),
            ));
        }
        let m = &(u * &self.matrix) * &u.adjoint();
        Ok(Self::from_parts_unchecked(self.dims.clone(), m))
    }

    /// Same matrix, new factorization (the product of `dims` must match).
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, &self.matrix)?;
        Ok(Self::from_parts_unchecked(dims, self.matrix.clone()))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Spectrum, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen_values(&self.matrix)
    }
}

fn check_dims(dims: &[usize], m: &ComplexMatrix) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidArgument(format!(
            "subsystem dimensions {dims:?} must be non-empty and each at least 2"
        )));
    }
    let d: usize = dims.iter().product();
    if !m.is_square() || m.rows() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: m.rows(),
        });
    }
    Ok(())
}

/// Shannon entropy in bits of a spectrum that should sum to one.
///
/// Values in `[-1e-10, 0)` are clamped to zero and the spectrum renormalized;
/// anything more negative is rejected.
pub fn spectrum_entropy(spectrum: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &l in spectrum {
        if l < -STATE_TOL {
            return Err(Error::RejectedInput(format!(
                "negative eigenvalue {l:e} in entropy"
            )));
        }
        total += l.max(0.0);
    }
    if total <= 0.0 {
        return Err(Error::RejectedInput("spectrum sums to zero".into()));
    }
    let h: f64 = spectrum
        .iter()
        .map(|&l| l.max(0.0) / total)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    Ok(h.max(0.0))
}

/// Von Neumann entropy `-tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&rho.eigenvalues())
}

/// Entropy of a Hermitian matrix that is a density matrix up to rounding.
pub(crate) fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    spectrum_entropy(&hermitian_eigen_values(m))
}

/// Mixed-radix digit bookkeeping for permuting tensor factors.
fn subsystem_permutation(dims: &[usize], order: &[usize]) -> Vec<usize> {
    // new index for each old index, where new factor k = old factor order[k]
    let d: usize = dims.iter().product();
    let new_dims: Vec<usize> = order.iter().map(|&o| dims[o]).collect();
    let mut map = vec![0usize; d];
    let mut digits = vec![0usize; dims.len()];
    for (old, slot) in map.iter_mut().enumerate() {
        let mut rem = old;
        for (k, &dk) in dims.iter().enumerate().rev() {
            digits[k] = rem % dk;
            rem /= dk;
        }
        let mut idx = 0;
        for (k, &o) in order.iter().enumerate() {
            idx = idx * new_dims[k] + digits[o];
        }
        *slot = idx;
    }
    map
}

/// Reorders tensor factors so that factor `k` of the result is factor
/// `order[k]` of the input.
pub fn permute_subsystems(rho: &DensityMatrix, order: &[usize]) -> Result<DensityMatrix> {
    let n = rho.dims.len();
    let mut seen = vec![false; n];
    if order.len() != n
        || order
            .iter()
            .any(|&o| o >= n || core::mem::replace(&mut seen[o], true))
    {
        return Err(Error::InvalidArgument(format!(
            "{order:?} is not a permutation of 0..{n}"
        )));
    }
    let map = subsystem_permutation(&rho.dims, order);
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out[(map[i], map[j])] = rho.matrix[(i, j)];
        }
    }
    let dims = order.iter().map(|&o| rho.dims[o]).collect();
    Ok(DensityMatrix::from_parts_unchecked(dims, out))
}

fn validate_index_set(set: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut s: Vec<usize> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != set.len() || s.iter().any(|&i| i >= n) {
        return Err(Error::InvalidArgument(format!(
            "invalid subsystem index set {set:?} for {n} factors"
        )));
    }
    if s.is_empty() || s.len() == n {
        return Err(Error::InvalidArgument(format!(
            "subsystem set {set:?} must be a non-empty proper subset of 0..{n}"
        )));
    }
    Ok(s)
}

/// Moves `front` (sorted) to the front, keeping relative order elsewhere.
fn front_order(front: &[usize], n: usize) -> Vec<usize> {
    let mut order = front.to_vec();
    order.extend((0..n).filter(|i| !front.contains(i)));
    order
}

/// Traces out everything except the `keep` factors, which stay in increasing
/// index order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let keep = validate_index_set(keep, rho.dims.len())?;
    let permuted = permute_subsystems(rho, &front_order(&keep, rho.dims.len()))?;
    let dk: usize = keep.iter().map(|&k| rho.dims[k]).product();
    let dt = rho.dim() / dk;
    let m = trace_out_second(permuted.matrix(), dk, dt);
    Ok(DensityMatrix::from_parts_unchecked(
        keep.iter().map(|&k| rho.dims[k]).collect(),
        m,
    ))
}

/// `tr_B` of a matrix on `C^{da} ⊗ C^{db}`.
pub(crate) fn trace_out_second(m: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(da, da, |a, a2| {
        (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum()
    })
}

/// `tr_A` of a matrix on `C^{da} ⊗ C^{db}`.
pub(crate) fn trace_out_first(m: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(db, db, |b, b2| {
        (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum()
    })
}

/// One branch of a projective measurement.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub probability: f64,
    /// Post-measurement state of the unmeasured factors. For degenerate
    /// outcomes this is the maximally mixed placeholder.
    pub state: DensityMatrix,
    /// Set when `probability < 1e-14`; such entries carry no weight.
    pub degenerate: bool,
}

/// Projective measurement of the `side` factors with the given complete set
/// of orthogonal projectors, returning `(p_j, ρ_{rest|j})` for every `j`.
pub fn measurement_update(
    rho: &DensityMatrix,
    side: &[usize],
    projectors: &[ComplexMatrix],
) -> Result<Vec<MeasurementOutcome>> {
    let side = validate_index_set(side, rho.dims.len())?;
    let dm: usize = side.iter().map(|&k| rho.dims[k]).product();
    check_projectors(projectors, dm)?;
    let permuted = permute_subsystems(rho, &front_order(&side, rho.dims.len()))?;
    let rest_dims: Vec<usize> = (0..rho.dims.len())
        .filter(|i| !side.contains(i))
        .map(|i| rho.dims[i])
        .collect();
    Ok(projected_branches(permuted.matrix(), dm, projectors)
        .into_iter()
        .map(|(p, m)| outcome(p, m, &rest_dims))
        .collect())
}

fn outcome(p: f64, m: Option<ComplexMatrix>, rest_dims: &[usize]) -> MeasurementOutcome {
    match m {
        Some(m) => MeasurementOutcome {
            probability: p,
            state: DensityMatrix::from_parts_unchecked(rest_dims.to_vec(), m),
            degenerate: false,
        },
        None => {
            let dr: usize = rest_dims.iter().product();
            MeasurementOutcome {
                probability: p.max(0.0),
                state: DensityMatrix::from_parts_unchecked(
                    rest_dims.to_vec(),
                    ComplexMatrix::identity(dr).scale_real(1.0 / dr as f64),
                ),
                degenerate: true,
            }
        }
    }
}

/// Branches of a projective measurement on the first factor (dimension `dm`)
/// of `m`. Returns the probability and normalized conditional matrix, or
/// `None` for degenerate outcomes.
pub(crate) fn projected_branches(
    m: &ComplexMatrix,
    dm: usize,
    projectors: &[ComplexMatrix],
) -> Vec<(f64, Option<ComplexMatrix>)> {
    let dr = m.rows() / dm;
    projectors
        .iter()
        .map(|proj| {
            // tr_A((Π ⊗ I) ρ (Π ⊗ I)) = tr_A((Π ⊗ I) ρ) = Σ_{a,a'} Π[a][a'] ρ[(a',b),(a,b')]
            let mut cond = ComplexMatrix::zeros(dr, dr);
            for a in 0..dm {
                for a2 in 0..dm {
                    let w = proj[(a, a2)];
                    if w == ZERO {
                        continue;
                    }
                    for b in 0..dr {
                        for b2 in 0..dr {
                            cond[(b, b2)] += w * m[(a2 * dr + b, a * dr + b2)];
                        }
                    }
                }
            }
            let p = cond.trace().re;
            if p < DEGENERATE_PROBABILITY {
                (p, None)
            } else {
                (p, Some(cond.scale_real(1.0 / p)))
            }
        })
        .collect()
}

fn check_projectors(projectors: &[ComplexMatrix], dm: usize) -> Result<()> {
    if projectors.is_empty() {
        return Err(Error::InvalidArgument("empty projector set".into()));
    }
    let mut sum = ComplexMatrix::zeros(dm, dm);
    for (i, p) in projectors.iter().enumerate() {
        if p.rows() != dm || p.cols() != dm {
            return Err(Error::DimensionMismatch {
                expected: dm,
                found: p.rows(),
            });
        }
        if !p.is_hermitian(STATE_TOL) || !(p * p).approx_eq(p, STATE_TOL) {
            return Err(Error::InvalidArgument(format!(
                "projector {i} is not a Hermitian idempotent"
            )));
        }
        for (j, q) in projectors.iter().enumerate().skip(i + 1) {
            if (p * q).max_abs() > STATE_TOL {
                return Err(Error::InvalidArgument(format!(
                    "projectors {i} and {j} are not orthogonal"
                )));
            }
        }
        sum = &sum + p;
    }
    if !sum.approx_eq(&ComplexMatrix::identity(dm), STATE_TOL) {
        return Err(Error::InvalidArgument(
            "projectors do not sum to the identity".into(),
        ));
    }
    Ok(())
}

/// Returns `k` with `U² = kI`, which for a unitary is the same statement as
/// `U = k U†` (multiply both sides by `U`). `None` when no such phase exists.
pub fn phase_symmetry(u: &ComplexMatrix, tol: f64) -> Result<Option<Complex64>> {
    if !u.is_unitary(tol) {
        return Err(Error::RejectedInput(
            "phase_symmetry needs a unitary".into(),
        ));
    }
    let sq = u * u;
    let k = sq.trace() / sq.rows() as f64;
    if k.norm() < 0.5 {
        return Ok(None);
    }
    let k = k / k.norm();
    let scalar = ComplexMatrix::identity(sq.rows()).scale(k);
    Ok(if sq.approx_eq(&scalar, tol) {
        Some(k)
    } else {
        None
    })
}
