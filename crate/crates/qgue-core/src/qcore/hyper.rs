//! Terminating hypergeometric sums: the classical Gauss series with a
//! nonpositive-integer upper parameter (exact over the rationals), and the
//! basic q-hypergeometric series `r_phi_s` with `±q^m` parameters (f64).

use std::fmt;

use num_traits::{One, Zero};

use super::number::{rat_int, BigRat};

/// Error from a hypergeometric evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum HyperError {
    /// Exact mode needs a terminating series.
    NonTerminating,
    /// The partial sum did not settle under the tolerance within `max_terms`.
    NoConvergence { terms: usize },
}

impl fmt::Display for HyperError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperError::NonTerminating => {
                write!(f, "non-terminating hypergeometric series in exact mode")
            }
            HyperError::NoConvergence { terms } => {
                write!(f, "hypergeometric series not converged after {terms} terms")
            }
        }
    }
}

impl std::error::Error for HyperError {}

/// Exact terminating Gauss hypergeometric sum
/// `2F1(a, b; c; z) = sum_k (a)_k (b)_k / ((c)_k k!) z^k`
/// where the first upper parameter `a` must be a nonpositive integer.
pub fn hyp_2f1_terminating(a: i64, b: &BigRat, c: &BigRat, z: &BigRat) -> Result<BigRat, HyperError> {
    if a > 0 {
        return Err(HyperError::NonTerminating);
    }
    let kmax = (-a) as u64;
    let mut term = BigRat::one();
    let mut sum = BigRat::one();
    for k in 0..kmax {
        let kk = rat_int(k as i64);
        let den = (c + &kk) * rat_int(k as i64 + 1);
        term = term * (rat_int(a + k as i64)) * (b + &kk) * z / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// A parameter of the form `sign * q^exp` for the basic hypergeometric
/// series. Keeping the exponent as an integer lets termination be detected
/// structurally: `(q^{-m}; q)_k` vanishes exactly once `k > m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPow {
    pub sign: i8,
    pub exp: i64,
}

impl QPow {
    pub fn pos(exp: i64) -> Self {
        QPow { sign: 1, exp }
    }
    pub fn neg(exp: i64) -> Self {
        QPow { sign: -1, exp }
    }

    fn factor(&self, q: f64, k: i64) -> f64 {
        // 1 - (sign q^exp) q^k, exactly zero when sign = +1 and exp + k = 0
        if self.sign > 0 && self.exp + k == 0 {
            return 0.0;
        }
        1.0 - f64::from(self.sign) * q.powi((self.exp + k) as i32)
    }
}

/// Basic hypergeometric series
/// `r_phi_s(a_1..a_r; b_1..b_s; q, z)
///   = sum_k prod_i (a_i;q)_k / prod_j (b_j;q)_k
///     * z^k / (q;q)_k * ((-1)^k q^{k(k-1)/2})^{1+s-r}`,
/// with all parameters of the form `±q^m` and 0 < q < 1.
///
/// Terminates exactly when some upper parameter is a nonpositive power of q;
/// otherwise the partial sum must settle below `tol` within `max_terms`.
pub fn q_hyp_rphis_f64(
    upper: &[QPow],
    lower: &[QPow],
    q: f64,
    z: f64,
    max_terms: usize,
    tol: f64,
) -> Result<f64, HyperError> {
    if z == 0.0 {
        return Ok(1.0);
    }
    let correction_pow = 1 + lower.len() as i64 - upper.len() as i64;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 0..max_terms as i64 {
        // update term from index k to k+1
        let mut ratio = z;
        for a in upper {
            ratio *= a.factor(q, k);
        }
        for b in lower {
            ratio /= b.factor(q, k);
        }
        ratio /= 1.0 - q.powi((k + 1) as i32);
        if correction_pow != 0 {
            // ((-1) q^k)^{1+s-r} step of the correction factor
            let step = -q.powi(k as i32);
            ratio *= step.powi(correction_pow as i32);
        }
        term *= ratio;
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.abs() <= tol * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(HyperError::NoConvergence { terms: max_terms })
}
