//! Exact combinatorial scalars: binomial coefficients, factorials and the
//! Vandermonde product over arbitrary-precision integers.
//!
//! All arithmetic in this crate is exact; there is no floating point anywhere
//! in the computational core. Rationals are handled by [`num::BigRational`],
//! which keeps values reduced with a positive denominator, so equality of
//! values is plain structural equality.

use num::{BigInt, One, Signed, Zero};

/// Binomial coefficient `C(top, k)` with a nonnegative integer top.
///
/// Returns `top! / (k! (top-k)!)` when `0 <= k <= top` and zero otherwise;
/// the zero convention outside that range is relied on throughout the kernel
/// formulas, where out-of-strip positions must drop out silently.
///
/// Panics when `top` is negative: generalized binomials are deliberately
/// unsupported, and a negative top always indicates a misuse upstream.
pub fn binomial(top: &BigInt, k: &BigInt) -> BigInt {
    assert!(
        !top.is_negative(),
        "binomial top must be nonnegative, got {top}"
    );
    if k.is_negative() || k > top {
        return BigInt::zero();
    }
    // Multiply/divide stepwise over the smaller of k and top-k; every prefix
    // quotient is itself a binomial, so the divisions are exact.
    let small = std::cmp::min(k.clone(), top - k);
    let mut result = BigInt::one();
    let mut i = BigInt::zero();
    while i < small {
        result *= top - &i;
        i += 1;
        result /= &i;
    }
    result
}

/// Convenience form of [`binomial`] for machine-sized arguments.
pub fn binom(top: i64, k: i64) -> BigInt {
    binomial(&BigInt::from(top), &BigInt::from(k))
}

/// Factorial of a nonnegative integer. Panics on negative input.
pub fn factorial(m: &BigInt) -> BigInt {
    assert!(
        !m.is_negative(),
        "factorial argument must be nonnegative, got {m}"
    );
    let mut result = BigInt::one();
    let mut i = BigInt::one();
    while &i <= m {
        result *= &i;
        i += 1;
    }
    result
}

/// Vandermonde product `prod_{i<j} (values[j] - values[i])`, i.e. the
/// determinant `det[values_i^(j-1)]`. Empty and singleton slices give 1.
///
/// The sign convention (later minus earlier) is fixed once here; the reduced
/// minor formulas in [`crate::binomial_matrix`] depend on it.
pub fn vandermonde(values: &[BigInt]) -> BigInt {
    let mut result = BigInt::one();
    for j in 1..values.len() {
        for i in 0..j {
            result *= &values[j] - &values[i];
        }
    }
    result
}
