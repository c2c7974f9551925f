//! GUE spectral moments m_{N,2p} and their per-polynomial increments, each
//! by three routes: positive binomial sum, alternating binomial sum, and the
//! terminating Gauss hypergeometric form. All exact.

use num_traits::{One, Zero};

use crate::qcore::hyper::hyp_2f1_terminating;
use crate::qcore::number::{binomial, double_factorial, rat_int, BigInt, BigRat};

/// Positive sum: m_{N,2p} = (2p-1)!! sum_l binom(N, l+1) binom(p, l) 2^l.
pub fn gue_moment_positive(n: u64, p: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for l in 0..=p {
        sum += binomial(n as i64, l as i64 + 1)
            * binomial(p as i64, l as i64)
            * BigInt::from(2u32).pow(l as u32);
    }
    double_factorial(2 * p as i64 - 1) * sum
}

/// Positive per-polynomial increment:
/// m_{2p,j} = (2p-1)!! sum_l binom(j, l) binom(p, l) 2^l.
pub fn gue_partial_positive(p: u64, j: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for l in 0..=p {
        sum += binomial(j as i64, l as i64)
            * binomial(p as i64, l as i64)
            * BigInt::from(2u32).pow(l as u32);
    }
    double_factorial(2 * p as i64 - 1) * sum
}

/// Alternating sum:
/// m_{N,2p} = (2p-1)!! sum_{r=0}^{p-1} (-1)^r
///   [binom(N+2p-2r-1, 2p) + binom(N+2p-2r-2, 2p)] binom(p-1, r).
pub fn gue_moment_alternating(n: u64, p: u64) -> BigInt {
    assert!(p >= 1, "alternating total form needs p >= 1");
    let (n, p) = (n as i64, p as i64);
    let mut sum = BigInt::zero();
    for r in 0..p {
        let term = (binomial(n + 2 * p - 2 * r - 1, 2 * p) + binomial(n + 2 * p - 2 * r - 2, 2 * p))
            * binomial(p - 1, r);
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    double_factorial(2 * p - 1) * sum
}

/// Alternating per-polynomial increment:
/// m_{2p,j} = (2p-1)!! sum_{r=0}^{p} (-1)^r binom(j+2p-2r, 2p) binom(p, r).
pub fn gue_partial_alternating(p: u64, j: u64) -> BigInt {
    let (p, j) = (p as i64, j as i64);
    let mut sum = BigInt::zero();
    for r in 0..=p {
        let term = binomial(j + 2 * p - 2 * r, 2 * p) * binomial(p, r);
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    double_factorial(2 * p - 1) * sum
}

/// Hypergeometric form: m_{N,2p} = (2p-1)!! N 2F1(-p, 1-N; 2; 2).
pub fn gue_moment_hypergeometric(n: u64, p: u64) -> BigInt {
    let f = hyp_2f1_terminating(
        -(p as i64),
        &rat_int(1 - n as i64),
        &rat_int(2),
        &rat_int(2),
    )
    .expect("terminating by construction");
    let v = f * rat_int(n as i64) * BigRat::from_integer(double_factorial(2 * p as i64 - 1));
    assert!(v.is_integer(), "hypergeometric moment must be integral");
    v.to_integer()
}

/// Per-j double-counting identity between the positive and alternating
/// increments: sum_l binom(j,l) binom(p,l) 2^l
/// = sum_r (-1)^r binom(j+2p-2r, 2p) binom(p, r).
pub fn gue_identity_per_j_check(p_max: u64, j_max: u64) -> bool {
    for p in 0..=p_max {
        for j in 0..=j_max {
            if gue_partial_positive(p, j) != gue_partial_alternating(p, j) {
                return false;
            }
        }
    }
    true
}

/// Harer–Zagier three-term recurrence, exactly, over the whole grid:
/// (p+1) m_{N,2p} = (4p-2) N m_{N,2p-2} + (p-1)(2p-1)(2p-3) m_{N,2p-4}.
pub fn harer_zagier_check(p_max: u64, n_max: u64) -> bool {
    for n in 1..=n_max {
        for p in 2..=p_max {
            let lhs = BigInt::from(p + 1) * gue_moment_positive(n, p);
            let rhs = BigInt::from(4 * p - 2) * BigInt::from(n) * gue_moment_positive(n, p - 1)
                + BigInt::from(p as i64 - 1)
                    * BigInt::from(2 * p as i64 - 1)
                    * BigInt::from(2 * p as i64 - 3)
                    * gue_moment_positive(n, p - 2);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// m_{N,2p} as an exact polynomial in N (degree p+1), reconstructed by
/// Lagrange interpolation from p+2 integer evaluations. Coefficients
/// ascending in N.
pub fn gue_moment_poly_in_n(p: u64) -> Vec<BigRat> {
    let deg = (p + 1) as usize;
    let nodes: Vec<BigRat> = (1..=deg as i64 + 1).map(rat_int).collect();
    let values: Vec<BigRat> = (1..=deg as u64 + 1)
        .map(|n| BigRat::from_integer(gue_moment_positive(n, p)))
        .collect();
    lagrange_coeffs(&nodes, &values)
}

/// Dense Lagrange interpolation over the rationals; small degrees only.
fn lagrange_coeffs(nodes: &[BigRat], values: &[BigRat]) -> Vec<BigRat> {
    let n = nodes.len();
    let mut acc = vec![BigRat::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{k != i} (x - x_k) / (x_i - x_k)
        let mut basis = vec![BigRat::zero(); n];
        basis[0] = BigRat::one();
        let mut deg = 0usize;
        let mut denom = BigRat::one();
        for k in 0..n {
            if k == i {
                continue;
            }
            // multiply basis by (x - x_k)
            for d in (0..=deg).rev() {
                let c = basis[d].clone();
                basis[d + 1] += &c;
                basis[d] = -c * &nodes[k];
            }
            deg += 1;
            denom *= &nodes[i] - &nodes[k];
        }
        let scale = &values[i] / denom;
        for d in 0..n {
            acc[d] += &basis[d] * &scale;
        }
    }
    acc
}
