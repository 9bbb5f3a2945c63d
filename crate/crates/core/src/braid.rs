//! Unitary braid-group representations on the Temperley-Lieb path model at
//! a root of unity of order `k`.
//!
//! Basis states are height sequences `z₀ = 1, z₁, …, z_n` with
//! `z_{i+1} = z_i ± 1` and `1 ≤ z_i ≤ k − 1`.

use alloc::{format, string::String, vec, vec::Vec};
use core::{f64::consts::PI, fmt, str::FromStr};

use num_traits::Float;

use crate::{linalg::ComplexMatrix, Complex64, Error, Result};

/// Root order used when none is given.
pub const DEFAULT_ROOT_ORDER: usize = 5;

/// Largest path-space dimension the dense constructions accept.
pub const MAX_PATH_DIM: usize = 4096;

/// Admissible paths for `n` strands at root order `k`, lexicographically
/// ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathBasis {
    strands: usize,
    k: usize,
    paths: Vec<Vec<u32>>,
}

impl PathBasis {
    pub fn new(strands: usize, k: usize) -> Result<Self> {
        if strands < 1 {
            return Err(Error::InvalidArgument(
                "a braid needs at least one strand".into(),
            ));
        }
        if k < 3 {
            return Err(Error::InvalidArgument(format!(
                "root order must be at least 3, got {k}"
            )));
        }
        let top = (k - 1) as u32;
        let mut paths: Vec<Vec<u32>> = vec![vec![1]];
        for _ in 0..strands {
            let mut next = Vec::with_capacity(paths.len() * 2);
            for p in &paths {
                let z = *p.last().expect("paths are nonempty");
                for h in [z.wrapping_sub(1), z + 1] {
                    if (1..=top).contains(&h) {
                        let mut q = p.clone();
                        q.push(h);
                        next.push(q);
                    }
                }
            }
            if next.len() > MAX_PATH_DIM {
                return Err(Error::SizeLimit {
                    what: "path-space dimension",
                    value: next.len(),
                    limit: MAX_PATH_DIM,
                });
            }
            paths = next;
        }
        // Extending lexicographically ordered prefixes in increasing height
        // keeps the list ordered.
        debug_assert!(paths.windows(2).all(|w| w[0] < w[1]));
        Ok(Self { strands, k, paths })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn root_order(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Vec<u32>] {
        &self.paths
    }

    pub fn index_of(&self, path: &[u32]) -> Option<usize> {
        self.paths.binary_search_by(|p| p.as_slice().cmp(path)).ok()
    }

    /// `λ_ℓ = sin(πℓ/k)`.
    pub fn lambda(&self, l: i64) -> f64 {
        if l <= 0 || l >= self.k as i64 {
            0.0
        } else {
            (PI * l as f64 / self.k as f64).sin()
        }
    }

    /// Loop value `d = 2cos(π/k)`.
    pub fn loop_value(&self) -> f64 {
        2.0 * (PI / self.k as f64).cos()
    }

    /// Kauffman parameter `A = i·e^{−iπ/(2k)}`.
    pub fn kauffman_a(&self) -> Complex64 {
        Complex64::i() * Complex64::from_polar(1.0, -PI / (2.0 * self.k as f64))
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.strands {
            return Err(Error::InvalidArgument(format!(
                "generator index {i} out of range 1..={} for {} strands",
                self.strands.saturating_sub(1),
                self.strands
            )));
        }
        Ok(())
    }
}

/// Temperley-Lieb generator `E_i`, real symmetric with `E_i² = d E_i`.
pub fn tl_generator(basis: &PathBasis, i: usize) -> Result<ComplexMatrix> {
    basis.check_generator(i)?;
    let dim = basis.dim();
    let mut e = ComplexMatrix::zeros(dim, dim);
    for (r, p) in basis.paths().iter().enumerate() {
        if p[i - 1] != p[i + 1] {
            continue;
        }
        let l = p[i - 1] as i64;
        let row_h = p[i] as i64;
        for col_h in [l - 1, l + 1] {
            let mut q = p.clone();
            q[i] = col_h as u32;
            if let Some(c) = basis.index_of(&q) {
                let value = (basis.lambda(row_h) * basis.lambda(col_h)).sqrt() / basis.lambda(l);
                e[(r, c)] = Complex64::new(value, 0.0);
            }
        }
    }
    Ok(e)
}

/// `ρ(σ_i) = A·I + A⁻¹·E_i`, or its inverse `A⁻¹·I + A·E_i` when `inverse`.
pub fn braid_generator(basis: &PathBasis, i: usize, inverse: bool) -> Result<ComplexMatrix> {
    let e = tl_generator(basis, i)?;
    let a = basis.kauffman_a();
    let (diag, off) = if inverse { (a.inv(), a) } else { (a, a.inv()) };
    let mut out = e.scale(off);
    for j in 0..basis.dim() {
        out[(j, j)] += diag;
    }
    Ok(out)
}

/// Signed generator sequence, `+i` for `σ_i` and `−i` for `σ_i⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 1 {
            return Err(Error::InvalidArgument(
                "a braid needs at least one strand".into(),
            ));
        }
        if let Some(&bad) = letters
            .iter()
            .find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands)
        {
            return Err(Error::InvalidArgument(format!(
                "generator {bad} out of range for {strands} strands"
            )));
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch {
                expected: self.strands,
                found: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }
}

/// Parses `"n:g1,g2,…"`, e.g. `"4:+1,-2"`; `"4:"` is the identity.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s.split_once(':').ok_or_else(|| {
            Error::Parse(format!("braid word {s:?} must have the form n:g1,g2,..."))
        })?;
        let strands = n
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("strand count {n:?}: {e}")))?;
        let letters = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|e| Error::Parse(format!("generator {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.letters.iter().map(|g| format!("{g:+}")).collect();
        write!(f, "{}:{}", self.strands, letters.join(","))
    }
}

/// Ordered product `ρ(g₁)ρ(g₂)⋯` on the path space.
pub fn braid_unitary(word: &BraidWord, k: usize) -> Result<ComplexMatrix> {
    let basis = PathBasis::new(word.strands(), k)?;
    let mut cache: Vec<[Option<ComplexMatrix>; 2]> = vec![[None, None]; word.strands()];
    let mut u = ComplexMatrix::identity(basis.dim());
    for &g in word.letters() {
        let i = g.unsigned_abs() as usize;
        let slot = &mut cache[i][usize::from(g < 0)];
        if slot.is_none() {
            *slot = Some(braid_generator(&basis, i, g < 0)?);
        }
        u = &u * slot.as_ref().expect("generator cached above");
    }
    Ok(u)
}

/// Path-space unitary padded with identity to a register of `qubits` qubits.
#[derive(Clone, Debug)]
pub struct QubitEmbedding {
    pub unitary: ComplexMatrix,
    pub qubits: usize,
    pub padding_dim: usize,
    pub path_trace: Complex64,
    pub embedded_trace: Complex64,
}

/// Embeds `u` into `m = max(1, ⌈log₂ dim⌉)` qubits; the padding acts as
/// identity so `embedded_trace = path_trace + padding_dim`.
pub fn embed_in_qubits(u: &ComplexMatrix) -> Result<QubitEmbedding> {
    if !u.is_square() || u.rows() == 0 {
        return Err(Error::InvalidArgument(format!(
            "cannot embed a {}x{} matrix",
            u.rows(),
            u.cols()
        )));
    }
    let dim = u.rows();
    let qubits = (usize::BITS - (dim - 1).leading_zeros()).max(1) as usize;
    let full = 1usize << qubits;
    let mut unitary = ComplexMatrix::identity(full);
    unitary.set_block(0, 0, u);
    Ok(QubitEmbedding {
        path_trace: u.trace(),
        embedded_trace: unitary.trace(),
        unitary,
        qubits,
        padding_dim: full - dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::normal_eigen;
    use alloc::string::ToString;

    #[test]
    fn four_strand_basis() {
        let b = PathBasis::new(4, 5).unwrap();
        assert_eq!(b.dim(), 5);
        let expect: [[u32; 5]; 5] = [
            [1, 2, 1, 2, 1],
            [1, 2, 1, 2, 3],
            [1, 2, 3, 2, 1],
            [1, 2, 3, 2, 3],
            [1, 2, 3, 4, 3],
        ];
        for (p, e) in b.paths().iter().zip(expect) {
            assert_eq!(p.as_slice(), e);
        }
    }

    #[test]
    fn lambda_identity() {
        let b = PathBasis::new(3, 5).unwrap();
        let d = b.loop_value();
        for l in 1..5 {
            assert!((b.lambda(l + 1) + b.lambda(l - 1) - d * b.lambda(l)).abs() < 1e-14);
        }
    }

    #[test]
    fn temperley_lieb_relations() {
        for n in 2..=6 {
            let b = PathBasis::new(n, 5).unwrap();
            let d = b.loop_value();
            let es: Vec<_> = (1..n).map(|i| tl_generator(&b, i).unwrap()).collect();
            for (i, e) in es.iter().enumerate() {
                assert!(e.is_hermitian(1e-15));
                assert!((e * e).max_abs_diff(&e.scale_real(d)) < 1e-12);
                if let Some(f) = es.get(i + 1) {
                    assert!((&(e * f) * e).max_abs_diff(e) < 1e-12);
                    assert!((&(f * e) * f).max_abs_diff(f) < 1e-12);
                }
                for f in es.iter().skip(i + 2) {
                    assert!(e.commutator(f).max_abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn generators_are_unitary_with_two_eigenvalues() {
        let b = PathBasis::new(4, 5).unwrap();
        let a = b.kauffman_a();
        let allowed = [a, -a.powi(-3)];
        for i in 1..4 {
            let g = braid_generator(&b, i, false).unwrap();
            assert!(g.unitarity_residual() < 1e-10);
            let eig = normal_eigen(&g, 1e-10).unwrap();
            for v in eig.values {
                assert!(
                    allowed.iter().any(|z| (v - z).norm() < 1e-10),
                    "eigenvalue {v}"
                );
            }
            let inv = braid_generator(&b, i, true).unwrap();
            assert!((&g * &inv).max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);
        }
    }

    #[test]
    fn braid_relations() {
        for n in 3..=6 {
            let b = PathBasis::new(n, 5).unwrap();
            let gs: Vec<_> = (1..n)
                .map(|i| braid_generator(&b, i, false).unwrap())
                .collect();
            for (i, s) in gs.iter().enumerate() {
                if let Some(t) = gs.get(i + 1) {
                    assert!((&(s * t) * s).max_abs_diff(&(&(t * s) * t)) < 1e-10);
                }
                for t in gs.iter().skip(i + 2) {
                    assert!((s * t).max_abs_diff(&(t * s)) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn word_parsing_and_products() {
        let w: BraidWord = "4:+1,-2, 3".parse().unwrap();
        assert_eq!(w.letters(), &[1, -2, 3]);
        assert_eq!(w.to_string(), "4:+1,-2,+3");
        assert_eq!("4:".parse::<BraidWord>().unwrap().letters(), &[] as &[i32]);
        assert!("4:+4".parse::<BraidWord>().is_err());
        assert!("4:0".parse::<BraidWord>().is_err());
        assert!("+1,+2".parse::<BraidWord>().is_err());
        assert!("4:x".parse::<BraidWord>().is_err());

        let id = braid_unitary(&"4:".parse().unwrap(), 5).unwrap();
        assert!(id.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-15);
        let cancel = braid_unitary(&"4:+1,-1".parse().unwrap(), 5).unwrap();
        assert!(cancel.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-10);

        let u = braid_unitary(&w, 5).unwrap();
        let v = braid_unitary(&w.inverse(), 5).unwrap();
        assert!((&u * &v).max_abs_diff(&ComplexMatrix::identity(5)) < 1e-10);
        let ww = braid_unitary(&w.compose(&w.inverse()).unwrap(), 5).unwrap();
        assert!(ww.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-10);
    }

    #[test]
    fn embedding_bookkeeping() {
        let u = braid_unitary(&"4:+1".parse().unwrap(), 5).unwrap();
        assert_eq!(u.rows(), 5);
        let e = embed_in_qubits(&u).unwrap();
        assert_eq!((e.qubits, e.padding_dim), (3, 3));
        assert!(e.unitary.unitarity_residual() < 1e-10);
        assert!((e.embedded_trace - Complex64::new(3.0, 0.0) - e.path_trace).norm() < 1e-10);
        assert!((e.path_trace - u.trace()).norm() < 1e-15);

        let id = embed_in_qubits(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!((id.qubits, id.padding_dim), (2, 0));
        assert!((id.embedded_trace - Complex64::new(4.0, 0.0)).norm() < 1e-15);
        let one = embed_in_qubits(&ComplexMatrix::identity(1)).unwrap();
        assert_eq!((one.qubits, one.padding_dim), (1, 1));
    }
}
