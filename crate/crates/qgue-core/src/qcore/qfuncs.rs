//! q-integers, q-factorials, Gaussian binomials, q-Pochhammer symbols, and
//! Stirling numbers of the first kind.

use std::fmt;

use num_traits::{One, Zero};

use super::number::{BigInt, BigRat};
use super::poly::QPoly;

/// [n]_q = 1 + q + ... + q^{n-1}; the empty sum 0 for n = 0.
pub fn q_integer(n: u64) -> QPoly {
    let mut p = QPoly::zero();
    for e in 0..n {
        p += &QPoly::monomial(BigRat::one(), e as i64);
    }
    p
}

/// [n]_q! = [n]_q [n-1]_q ... [1]_q; empty product 1.
pub fn q_factorial(n: u64) -> QPoly {
    let mut acc = QPoly::one();
    for k in 1..=n {
        acc *= &q_integer(k);
    }
    acc
}

/// [n]_q!! = [n]_q [n-2]_q [n-4]_q ...; empty product 1 for n <= 0,
/// so that [-1]_q!! = 1.
pub fn q_double_factorial(n: i64) -> QPoly {
    let mut acc = QPoly::one();
    let mut k = n;
    while k >= 1 {
        acc *= &q_integer(k as u64);
        k -= 2;
    }
    acc
}

/// Gaussian binomial coefficient `[n choose k]` in the variable `q^base`.
///
/// Returns 0 when k > n. Built up as the product
/// `prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)` with a stepwise exact
/// division — every partial product `[n-k+i choose i]` is a genuine
/// polynomial, so a nonzero remainder panics and flags a formula bug.
/// The base substitution `q -> q^base` is applied exponent-wise at the end.
pub fn q_binomial(n: u64, k: u64, base: u64) -> QPoly {
    assert!(base >= 1, "base exponent must be >= 1");
    if k > n {
        return QPoly::zero();
    }
    let k = k.min(n - k);
    let one = QPoly::one();
    let mut acc = QPoly::one();
    for i in 1..=k {
        acc *= &(&one - &QPoly::monomial(BigRat::one(), (n - k + i) as i64));
        acc = acc.div_exact(&(&one - &QPoly::monomial(BigRat::one(), i as i64)));
    }
    if base == 1 {
        acc
    } else {
        acc.subst_q_pow(base as i64)
    }
}

/// Finite symbolic q-Pochhammer product
/// `(a; q^base)_n = (1 - a)(1 - a q^base) ... (1 - a q^{(n-1) base})`.
pub fn q_pochhammer_sym(a: &QPoly, base: i64, n: u64) -> QPoly {
    let one = QPoly::one();
    let mut acc = QPoly::one();
    for l in 0..n {
        acc *= &(&one - &a.shift(base * l as i64));
    }
    acc
}

/// Order parameter for the numeric q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochhammerOrder {
    Finite(u64),
    Infinite,
}

/// Error from the numeric q-Pochhammer evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum PochhammerError {
    /// |q| >= 1 makes the infinite product meaningless.
    BadModulus(f64),
    /// The tail bound could not be brought below the tolerance within the
    /// iteration cap.
    TailBound { bound: f64, tol: f64 },
}

impl fmt::Display for PochhammerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PochhammerError::BadModulus(q) => {
                write!(f, "infinite q-Pochhammer product needs |q| < 1, got q = {q}")
            }
            PochhammerError::TailBound { bound, tol } => {
                write!(f, "q-Pochhammer tail bound {bound:e} not below tolerance {tol:e}")
            }
        }
    }
}

impl std::error::Error for PochhammerError {}

const POCHHAMMER_MAX_FACTORS: u64 = 1 << 22;

/// Numeric q-Pochhammer symbol `(a; q)_n`.
///
/// For the infinite product the truncation index `K` is chosen adaptively so
/// that the dropped tail satisfies `|log remainder| <= |a| q^K / (1 - q) <= tol`.
pub fn q_pochhammer_f64(
    a: f64,
    q: f64,
    order: PochhammerOrder,
    tol: f64,
) -> Result<f64, PochhammerError> {
    match order {
        PochhammerOrder::Finite(n) => {
            let mut acc = 1.0;
            let mut aq = a;
            for _ in 0..n {
                acc *= 1.0 - aq;
                aq *= q;
            }
            Ok(acc)
        }
        PochhammerOrder::Infinite => {
            if q.abs() >= 1.0 {
                return Err(PochhammerError::BadModulus(q));
            }
            let qa = q.abs();
            let mut acc = 1.0;
            let mut aq = a;
            let mut k = 0u64;
            loop {
                let bound = aq.abs() / (1.0 - qa);
                if bound <= tol {
                    return Ok(acc);
                }
                if k >= POCHHAMMER_MAX_FACTORS {
                    return Err(PochhammerError::TailBound { bound, tol });
                }
                acc *= 1.0 - aq;
                aq *= q;
                k += 1;
            }
        }
    }
}

/// Signed Stirling number of the first kind s(n, k), by the recurrence
/// s(n+1, k) = s(n, k-1) - n s(n, k) with s(0, 0) = 1.
///
/// Zero outside 0 <= k <= n. The subset-product definition is kept as an
/// independent oracle in the tests.
pub fn stirling_first(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    // row-by-row table; sizes in this crate stay tiny (n <= ~25)
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, val) in row.iter().enumerate() {
            // s(m+1, j+1) += s(m, j)
            next[j + 1] += val;
            // s(m+1, j) -= m * s(m, j)
            next[j] -= val * BigInt::from(m);
        }
        row = next;
    }
    row[k as usize].clone()
}
