//! Quadratically signed weight enumerators over ℤ₂,
//!
//! ```text
//! S(A, B, x, y) = Σ_{b : Ab = 0} (−1)^{bᵀBb} x^{|b|} y^{n−|b|},
//! ```
//!
//! evaluated exactly by walking the nullspace of `A` in Gray-code order.

mod gf2;

use alloc::{format, vec, vec::Vec};

use num_bigint::{BigInt, Sign};
use num_traits::{Float, Signed, ToPrimitive, Zero};

pub use gf2::{gf2_nullspace, lower_triangular, stack, BitVec, Gf2Matrix};

use crate::{Error, Result};

/// Largest nullity `qswe_eval` will enumerate (2²⁶ terms).
pub const MAX_NULLITY: usize = 26;

/// Enumerator weights `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weights {
    Integer { x: i64, y: i64 },
    Real { x: f64, y: f64 },
}

/// Problem `(A, B, x, y)`; `A` is `m × n`, `B` is `n × n`.
#[derive(Clone, Debug)]
pub struct QsweInstance {
    a: Gf2Matrix,
    b: Gf2Matrix,
    weights: Weights,
}

impl QsweInstance {
    pub fn new(a: Gf2Matrix, b: Gf2Matrix, weights: Weights) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::InvalidArgument(format!(
                "B must be square, got {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        if a.cols() != b.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: b.rows(),
            });
        }
        if let Weights::Real { x, y } = weights {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "weights must be finite, got x={x}, y={y}"
                )));
            }
        }
        Ok(Self { a, b, weights })
    }

    pub fn integer(a: Gf2Matrix, b: Gf2Matrix, x: i64, y: i64) -> Result<Self> {
        Self::new(a, b, Weights::Integer { x, y })
    }

    pub fn real(a: Gf2Matrix, b: Gf2Matrix, x: f64, y: f64) -> Result<Self> {
        Self::new(a, b, Weights::Real { x, y })
    }

    pub fn a(&self) -> &Gf2Matrix {
        &self.a
    }

    pub fn b(&self) -> &Gf2Matrix {
        &self.b
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    /// Number of variables `n`.
    pub fn n(&self) -> usize {
        self.b.rows()
    }
}

/// Value of an enumerator.
#[derive(Clone, Debug, PartialEq)]
pub enum QsweValue {
    Integer(BigInt),
    /// Compensated sum together with an upper bound on its absolute error.
    Real {
        value: f64,
        rounding_bound: f64,
    },
}

impl QsweValue {
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Self::Integer(v) => Some(v),
            Self::Real { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Integer(v) => bigint_to_f64(v),
            Self::Real { value, .. } => *value,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QsweResult {
    pub value: QsweValue,
    pub nullity: usize,
    pub terms_enumerated: u64,
}

/// Signed term counts indexed by Hamming weight: `counts[w]` is the number of
/// nullspace vectors of weight `w` with `bᵀBb = 0` minus those with `bᵀBb = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCounts {
    counts: Vec<i64>,
    terms: u64,
}

impl WeightCounts {
    pub fn zeros(n: usize) -> Self {
        Self {
            counts: vec![0; n + 1],
            terms: 0,
        }
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Exact, associative combination of two partial enumerations.
    pub fn merge(&mut self, other: &Self) {
        assert_eq!(
            self.counts.len(),
            other.counts.len(),
            "weight count length mismatch"
        );
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.terms += other.terms;
    }

    /// `Σ_w counts[w] x^w y^{n−w}` in the representation selected by `weights`.
    pub fn evaluate(&self, weights: Weights) -> QsweValue {
        let n = self.counts.len() - 1;
        match weights {
            Weights::Integer { x, y } => {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                let mut total = BigInt::zero();
                for (w, &c) in self.counts.iter().enumerate() {
                    if c != 0 {
                        total += BigInt::from(c)
                            * num_traits::pow(x.clone(), w)
                            * num_traits::pow(y.clone(), n - w);
                    }
                }
                QsweValue::Integer(total)
            }
            Weights::Real { x, y } => {
                let mut sum = 0.0;
                let mut comp = 0.0;
                let mut magnitude = 0.0;
                for (w, &c) in self.counts.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let term = c as f64 * x.powi(w as i32) * y.powi((n - w) as i32);
                    magnitude += term.abs();
                    let t = sum + term;
                    if sum.abs() >= term.abs() {
                        comp += (sum - t) + term;
                    } else {
                        comp += (term - t) + sum;
                    }
                    sum = t;
                }
                // Each term carries at most n + 1 roundings, the compensated
                // sum adds two more.
                let k = (n + 3) as f64 * f64::EPSILON / 2.0;
                QsweValue::Real {
                    value: sum + comp,
                    rounding_bound: k / (1.0 - k) * magnitude,
                }
            }
        }
    }
}

/// Nullspace enumerator shared by all partitions of one instance.
#[derive(Clone, Debug)]
pub struct GrayEnumerator {
    n: usize,
    basis: Vec<BitVec>,
    /// `(B + Bᵀ) v_j` per basis vector.
    cross: Vec<BitVec>,
    /// `v_jᵀ B v_j` per basis vector.
    self_form: Vec<bool>,
}

impl GrayEnumerator {
    pub fn new(a: &Gf2Matrix, b: &Gf2Matrix) -> Result<Self> {
        if !b.is_square() || a.cols() != b.rows() {
            return Err(Error::InvalidArgument(format!(
                "incompatible shapes: A is {}x{}, B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let basis = gf2_nullspace(a);
        if basis.len() > MAX_NULLITY {
            return Err(Error::SizeLimit {
                what: "nullity",
                value: basis.len(),
                limit: MAX_NULLITY,
            });
        }
        let sym = b.add(&b.transpose())?;
        let cross = basis.iter().map(|v| sym.mul_vec(v)).collect();
        let self_form = basis.iter().map(|v| b.quadratic_form(v)).collect();
        Ok(Self {
            n: b.rows(),
            basis,
            cross,
            self_form,
        })
    }

    pub fn nullity(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    /// Number of partitions obtained by fixing `high_bits` top coefficients.
    pub fn partition_count(&self, high_bits: usize) -> u64 {
        1u64 << high_bits.min(self.nullity())
    }

    /// Calls `f(b, |b|, bᵀBb)` for each nullspace vector whose top
    /// `high_bits` basis coefficients equal the bits of `prefix`.
    ///
    /// Within a partition the low coefficients follow the reflected Gray
    /// code, so consecutive vectors differ by one basis vector.
    pub fn for_each_term<F>(&self, high_bits: usize, prefix: u64, mut f: F)
    where
        F: FnMut(&BitVec, usize, bool),
    {
        let r = self.nullity();
        let high = high_bits.min(r);
        let low = r - high;
        assert!(prefix < (1u64 << high), "partition prefix out of range");

        let mut b = BitVec::zeros(self.n);
        let mut q = false;
        for j in 0..high {
            if (prefix >> j) & 1 == 1 {
                self.flip(&mut b, &mut q, low + j);
            }
        }
        f(&b, b.weight(), q);
        for step in 1u64..(1u64 << low) {
            self.flip(&mut b, &mut q, step.trailing_zeros() as usize);
            f(&b, b.weight(), q);
        }
    }

    #[inline]
    fn flip(&self, b: &mut BitVec, q: &mut bool, j: usize) {
        // (b ⊕ v)ᵀB(b ⊕ v) = bᵀBb ⊕ vᵀBv ⊕ bᵀ(B + Bᵀ)v
        *q ^= self.self_form[j] ^ b.dot(&self.cross[j]);
        b.xor_assign(&self.basis[j]);
    }

    /// Signed weight counts of one partition.
    pub fn partition_counts(&self, high_bits: usize, prefix: u64) -> WeightCounts {
        let mut out = WeightCounts::zeros(self.n);
        let mut terms = 0u64;
        self.for_each_term(high_bits, prefix, |_, w, q| {
            out.counts[w] += if q { -1 } else { 1 };
            terms += 1;
        });
        out.terms = terms;
        out
    }

    pub fn counts(&self) -> WeightCounts {
        self.partition_counts(0, 0)
    }
}

/// Exact `S(A, B, x, y)`.
pub fn qswe_eval(inst: &QsweInstance) -> Result<QsweResult> {
    let walker = GrayEnumerator::new(&inst.a, &inst.b)?;
    let counts = walker.counts();
    Ok(QsweResult {
        value: counts.evaluate(inst.weights),
        nullity: walker.nullity(),
        terms_enumerated: counts.terms(),
    })
}

/// Which sign-determination problem to build from `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignVariant {
    /// `S(A, A⃖, k, l)`.
    Bqp,
    /// `S([A; Aᵀ], A⃖, k, l)`.
    Dqc1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignOutcome {
    /// `+1`, `−1`, or `0` when the enumerator vanishes.
    pub sign: i8,
    pub value: BigInt,
    /// `|S| ≥ (k² + l²)^{n/2} / 2`, decided exactly as `4S² ≥ (k² + l²)ⁿ`.
    pub promise_satisfied: bool,
    pub nullity: usize,
}

/// Builds the `(A, B)` pair of a sign problem. `A` must be square with unit
/// diagonal.
pub fn sign_instance(variant: SignVariant, a: &Gf2Matrix) -> Result<(Gf2Matrix, Gf2Matrix)> {
    if !a.is_square() {
        return Err(Error::Precondition(format!(
            "A must be square, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.has_unit_diagonal() {
        return Err(Error::Precondition("diag(A) must be all ones".into()));
    }
    let lower = lower_triangular(a)?;
    let top = match variant {
        SignVariant::Bqp => a.clone(),
        SignVariant::Dqc1 => stack(a, &a.transpose())?,
    };
    Ok((top, lower))
}

/// Validates a sign problem and prepares its nullspace walk.
pub fn sign_enumerator(
    variant: SignVariant,
    a: &Gf2Matrix,
    k: i64,
    l: i64,
) -> Result<GrayEnumerator> {
    if k <= 0 || l <= 0 {
        return Err(Error::InvalidArgument(format!(
            "k and l must be positive, got k={k}, l={l}"
        )));
    }
    let (top, lower) = sign_instance(variant, a)?;
    GrayEnumerator::new(&top, &lower)
}

/// Evaluates the sign problem exactly and checks the promise gap.
pub fn sign_problem(variant: SignVariant, a: &Gf2Matrix, k: i64, l: i64) -> Result<SignOutcome> {
    let walker = sign_enumerator(variant, a, k, l)?;
    let QsweValue::Integer(value) = walker.counts().evaluate(Weights::Integer { x: k, y: l })
    else {
        unreachable!("integer weights evaluate to an integer");
    };
    Ok(SignOutcome::from_value(
        value,
        a.rows(),
        k,
        l,
        walker.nullity(),
    ))
}

impl SignOutcome {
    /// Sign and promise flag of an enumerator value over `n` variables.
    pub fn from_value(value: BigInt, n: usize, k: i64, l: i64, nullity: usize) -> Self {
        let gap = num_traits::pow(BigInt::from(k) * k + BigInt::from(l) * l, n);
        let promise_satisfied = BigInt::from(4) * &value * &value >= gap;
        let sign = match value.sign() {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::NoSign => 0,
        };
        Self {
            sign,
            value,
            promise_satisfied,
            nullity,
        }
    }
}

/// `(|x| + |y|)ⁿ`, the magnitude bound on any enumerator with integer weights.
pub fn magnitude_bound(n: usize, x: i64, y: i64) -> BigInt {
    num_traits::pow(BigInt::from(x).abs() + BigInt::from(y).abs(), n)
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Gf2Matrix {
        let mut a = Gf2Matrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                a.set(i, j, rng.random::<bool>());
            }
        }
        a
    }

    /// All 2ⁿ vectors, filtered by `Ab = 0`.
    fn exhaustive(a: &Gf2Matrix, b: &Gf2Matrix, x: i64, y: i64) -> BigInt {
        let n = a.cols();
        let mut total = BigInt::zero();
        for bits in 0u64..(1 << n) {
            let v = BitVec::from_u64(bits, n);
            if !a.mul_vec(&v).is_zero() {
                continue;
            }
            let w = bits.count_ones() as usize;
            let term =
                num_traits::pow(BigInt::from(x), w) * num_traits::pow(BigInt::from(y), n - w);
            if b.quadratic_form(&v) {
                total -= term;
            } else {
                total += term;
            }
        }
        total
    }

    fn int(v: i64) -> QsweValue {
        QsweValue::Integer(BigInt::from(v))
    }

    #[test]
    fn enumerator_examples() {
        let b = Gf2Matrix::parse_rows(&["11", "01"]).unwrap();
        let r = qswe_eval(&QsweInstance::integer(Gf2Matrix::identity(2), b.clone(), 4, 3).unwrap())
            .unwrap();
        assert_eq!(r.value, int(9));
        assert_eq!((r.nullity, r.terms_enumerated), (0, 1));

        let r = qswe_eval(
            &QsweInstance::integer(Gf2Matrix::zeros(2, 2), Gf2Matrix::zeros(2, 2), 4, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(r.value, int(49));

        let a = Gf2Matrix::parse_rows(&["11"]).unwrap();
        let r = qswe_eval(&QsweInstance::integer(a, b, 4, 3).unwrap()).unwrap();
        assert_eq!(r.value, int(-7));
        assert_eq!(r.terms_enumerated, 2);
    }

    #[test]
    fn matches_exhaustive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.random_range(1..=12);
            let m = rng.random_range(1..=n);
            let a = random_matrix(&mut rng, m, n);
            let b = random_matrix(&mut rng, n, n);
            let (x, y) = (rng.random_range(-5..=5), rng.random_range(-5..=5));
            let r = qswe_eval(&QsweInstance::integer(a.clone(), b.clone(), x, y).unwrap()).unwrap();
            assert_eq!(r.value, QsweValue::Integer(exhaustive(&a, &b, x, y)));
            assert_eq!(r.terms_enumerated, 1 << r.nullity);
            assert_eq!(r.nullity, n - a.rank());
        }
    }

    #[test]
    fn partitions_sum_to_whole() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 3, 12);
        let b = random_matrix(&mut rng, 12, 12);
        let walker = GrayEnumerator::new(&a, &b).unwrap();
        let whole = walker.counts();
        for high in [1, 3, 20] {
            let mut acc = WeightCounts::zeros(12);
            for p in 0..walker.partition_count(high) {
                acc.merge(&walker.partition_counts(high, p));
            }
            assert_eq!(acc, whole);
        }
    }

    #[test]
    fn incremental_updates_match_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_matrix(&mut rng, 2, 14);
        let b = random_matrix(&mut rng, 14, 14);
        let walker = GrayEnumerator::new(&a, &b).unwrap();
        let mut seen = 0;
        walker.for_each_term(0, 0, |v, w, q| {
            assert!(a.mul_vec(v).is_zero());
            assert_eq!(w, v.weight());
            assert_eq!(q, b.quadratic_form(v));
            seen += 1;
        });
        assert_eq!(seen, 1 << walker.nullity());
    }

    #[test]
    fn real_mode_agrees_with_integer_mode() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = random_matrix(&mut rng, 4, 16);
        let b = random_matrix(&mut rng, 16, 16);
        let exact = qswe_eval(&QsweInstance::integer(a.clone(), b.clone(), 4, 3).unwrap()).unwrap();
        let approx = qswe_eval(&QsweInstance::real(a, b, 4.0, 3.0).unwrap()).unwrap();
        let QsweValue::Real {
            value,
            rounding_bound,
        } = approx.value
        else {
            panic!("expected a real value");
        };
        assert!((value - exact.value.to_f64()).abs() <= rounding_bound);
    }

    #[test]
    fn nullity_guard() {
        let inst =
            QsweInstance::integer(Gf2Matrix::zeros(1, 27), Gf2Matrix::zeros(27, 27), 1, 1).unwrap();
        assert!(matches!(
            qswe_eval(&inst),
            Err(Error::SizeLimit {
                value: 27,
                limit: 26,
                ..
            })
        ));
    }

    #[test]
    fn shape_checks() {
        assert!(
            QsweInstance::integer(Gf2Matrix::zeros(1, 3), Gf2Matrix::zeros(2, 2), 1, 1).is_err()
        );
        assert!(
            QsweInstance::integer(Gf2Matrix::zeros(1, 2), Gf2Matrix::zeros(2, 3), 1, 1).is_err()
        );
        assert!(QsweInstance::real(
            Gf2Matrix::zeros(1, 2),
            Gf2Matrix::zeros(2, 2),
            f64::NAN,
            1.0
        )
        .is_err());
    }

    #[test]
    fn identity_sign_problem() {
        for variant in [SignVariant::Bqp, SignVariant::Dqc1] {
            for n in 1..=6 {
                let out = sign_problem(variant, &Gf2Matrix::identity(n), 4, 3).unwrap();
                assert_eq!(out.value, num_traits::pow(BigInt::from(3), n));
                assert_eq!(out.sign, 1);
                assert_eq!(out.promise_satisfied, n == 1);
            }
        }
    }

    #[test]
    fn two_by_two_sign_problem() {
        // A = [[1,0],[1,1]], A⃖ = [[0,0],[1,0]]; bᵀA⃖b = b₁b₀.
        let a = Gf2Matrix::parse_rows(&["10", "11"]).unwrap();
        // Ab = 0 forces b = 0 for both variants.
        for variant in [SignVariant::Bqp, SignVariant::Dqc1] {
            let out = sign_problem(variant, &a, 4, 3).unwrap();
            assert_eq!(out.value, BigInt::from(9));
            assert_eq!(out.nullity, 0);
        }
        // A = [[1,1],[1,1]] keeps b ∈ {00, 11} in both variants: 9 − 16.
        let a = Gf2Matrix::parse_rows(&["11", "11"]).unwrap();
        for variant in [SignVariant::Bqp, SignVariant::Dqc1] {
            let out = sign_problem(variant, &a, 4, 3).unwrap();
            assert_eq!(out.value, BigInt::from(-7));
            assert_eq!(out.sign, -1);
            // 4 · 49 < 25²
            assert!(!out.promise_satisfied);
        }
    }

    #[test]
    fn sign_problem_preconditions() {
        let a = Gf2Matrix::parse_rows(&["10", "10"]).unwrap();
        assert!(matches!(
            sign_problem(SignVariant::Bqp, &a, 4, 3),
            Err(Error::Precondition(_))
        ));
        assert!(sign_problem(SignVariant::Bqp, &Gf2Matrix::identity(2), 0, 3).is_err());
        assert!(matches!(
            sign_problem(SignVariant::Dqc1, &Gf2Matrix::zeros(2, 3), 4, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bigint_conversion() {
        assert_eq!(bigint_to_f64(&BigInt::from(-7)), -7.0);
        assert_eq!(bigint_to_f64(&(BigInt::one() << 70)), 2f64.powi(70));
    }
}
