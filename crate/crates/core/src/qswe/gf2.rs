use alloc::{format, string::String, vec, vec::Vec};
use core::fmt;

use crate::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD).max(1)
}

/// Packed vector over ℤ₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `value`, bit `i` of the vector being bit `i` of the
    /// integer.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_u64 holds at most 64 bits");
        let mut v = Self::zeros(len);
        v.words[0] = if len == WORD {
            value
        } else {
            value & ((1u64 << len) - 1)
        };
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of `Σ_i self_i other_i`.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVec({s})")
    }
}

/// Matrix over ℤ₂ with packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses rows of `'0'`/`'1'` characters.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut out = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            let mut v = BitVec::zeros(cols);
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => v.set(j, true),
                    other => {
                        return Err(Error::Parse(format!(
                            "row {i} column {j}: unexpected character {other:?}"
                        )))
                    }
                }
            }
            out.push(v);
        }
        Self::from_rows(out, cols)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.data[i].set(j, b);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// `M v` over ℤ₂.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "GF(2) matrix-vector shape mismatch");
        let mut out = BitVec::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            out.set(i, r.dot(v));
        }
        out
    }

    /// `vᵀ M v` over ℤ₂ for square `M`.
    pub fn quadratic_form(&self, v: &BitVec) -> bool {
        self.data
            .iter()
            .enumerate()
            .filter(|(i, _)| v.get(*i))
            .fold(false, |acc, (_, r)| acc ^ r.dot(v))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidArgument(format!(
                "cannot add {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        Ok(out)
    }

    /// Row-reduced echelon form and its pivot columns.
    fn rref(&self) -> (Vec<BitVec>, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every diagonal entry is one.
    pub fn has_unit_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.get(i, i))
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            let s: String = (0..self.cols)
                .map(|j| if r.get(j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// Basis of `{b : A b = 0}`, one vector per free column of the echelon form.
pub fn gf2_nullspace(a: &Gf2Matrix) -> Vec<BitVec> {
    let (rows, pivots) = a.rref();
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = BitVec::zeros(n);
            v.set(free, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Keeps the entries strictly below the diagonal.
pub fn lower_triangular(a: &Gf2Matrix) -> Result<Gf2Matrix> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(format!(
            "lower-triangular part needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let mut out = Gf2Matrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..i {
            if a.get(i, j) {
                out.set(i, j, true);
            }
        }
    }
    Ok(out)
}

/// `[C; D]`: the rows of `C` followed by the rows of `D`.
pub fn stack(c: &Gf2Matrix, d: &Gf2Matrix) -> Result<Gf2Matrix> {
    if c.cols() != d.cols() {
        return Err(Error::InvalidArgument(format!(
            "cannot stack matrices with {} and {} columns",
            c.cols(),
            d.cols()
        )));
    }
    let mut rows = c.data.clone();
    rows.extend(d.data.iter().cloned());
    Gf2Matrix::from_rows(rows, c.cols())
}
