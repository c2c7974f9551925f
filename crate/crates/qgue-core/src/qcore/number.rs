//! Integer-side helpers on top of `num`: factorials, binomials, Catalan
//! numbers. `BigRat` is the coefficient field of the whole exact layer.

use num_traits::{One, Zero};

pub use num::BigInt;

/// Arbitrary-precision rational. Always reduced, denominator positive
/// (both guaranteed by the `num` representation).
pub type BigRat = num::BigRational;

/// Rational from a machine-integer pair.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Double factorial n!! = n (n-2) (n-4) ... ; empty product for n <= 0.
///
/// Accepts a signed argument so that the conventional (-1)!! = 1 works.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k >= 2 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Binomial coefficient with the usual conventions: 0 for k > n, and 0 for
/// negative n or k (no upper negation — callers never need it here).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// p-th Catalan number C_p = binom(2p, p) / (p + 1).
pub fn catalan(p: u64) -> BigInt {
    binomial(2 * p as i64, p as i64) / BigInt::from(p + 1)
}
