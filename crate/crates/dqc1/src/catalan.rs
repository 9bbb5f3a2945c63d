//! Catalan numbers and the two-spin coupling count `(n+1)!·C_n²`.

use num_bigint::BigUint;

/// `C_n = (2n)! / (n!(n+1)!)` and `(n+1)!·C_n²`, exactly.
pub fn catalan_counts(n: u32) -> (BigUint, BigUint) {
    // C_{i+1} = C_i · 2(2i+1)/(i+2); each partial value is an integer.
    let mut c = BigUint::from(1u32);
    for i in 0..n {
        c = c * (2 * (2 * u64::from(i) + 1)) / (u64::from(i) + 2);
    }
    let factorial: BigUint = (1..=u64::from(n) + 1).map(BigUint::from).product();
    let couplings = factorial * &c * &c;
    (c, couplings)
}
