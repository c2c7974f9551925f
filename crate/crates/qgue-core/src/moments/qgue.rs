//! Spectral moments of the discrete q-deformed GUE.
//!
//! Symbolic routes produce exact `QPoly` values of the scaled moments
//! `mhat_{N,2p}` and their per-polynomial increments `mhat_{2p,j}`:
//!
//! - positive sum over (j, l) with Gaussian binomial and q-factorial
//!   quotient weights;
//! - alternating sum with `q^2`-binomials.
//!
//! Numeric routes exist for cross-checking and for the large-N regime:
//! the FLSY double sum, the Cohen 3phi2 form (both per-j), and the scaled
//! moment `(q(1-q))^p mhat_{N,2p}` at `q = e^{-lambda/N}` via per-(j,l)
//! accumulation that never builds the polynomial.

use std::fmt;

use crate::qcore::hyper::{q_hyp_rphis_f64, QPow};
use crate::qcore::poly::{QPoly, QRat};
use crate::qcore::qfuncs::{q_binomial, q_double_factorial, q_factorial};

/// The exact positive-route weight [2p]_q! / ([2p-2l]_q!! [l]_q!),
/// carried as a transient quotient and collapsed by exact division.
fn positive_weight(p: usize, l: usize) -> QPoly {
    let mut w = QRat::from_poly(q_factorial(2 * p as u64));
    w.div_poly(&q_double_factorial(2 * (p - l) as i64));
    w.div_poly(&q_factorial(l as u64));
    w.into_poly()
}

/// Per-polynomial increment, positive route:
/// mhat_{2p,j} = sum_{l=0}^{min(p,j)} q^{(j-l)(2p-l) + l(l-1)/2}
///   [j choose l]_q [2p]_q! / ([2p-2l]_q!! [l]_q!).
///
/// Terms with l > j vanish through the binomial and are skipped before any
/// exponent is formed, so the whole route stays in the ordinary polynomial
/// subring.
pub fn qgue_partial_positive(p: usize, j: usize) -> QPoly {
    let mut acc = QPoly::zero();
    for l in 0..=p.min(j) {
        let e = ((j - l) * (2 * p - l) + l * l.saturating_sub(1) / 2) as i64;
        let term = (&q_binomial(j as u64, l as u64, 1) * &positive_weight(p, l)).shift(e);
        acc += &term;
    }
    acc
}

/// Total scaled moment, positive route: mhat_{N,2p} = sum_{j<N} mhat_{2p,j}.
pub fn qgue_moment_positive(n: usize, p: usize) -> QPoly {
    let mut acc = QPoly::zero();
    for j in 0..n {
        acc += &qgue_partial_positive(p, j);
    }
    acc
}

/// Per-polynomial increment, alternating route:
/// mhat_{2p,j} = [2p-1]_q!! sum_{r=0}^{p} (-1)^r q^{r(r-1)}
///   [j+2p-2r choose 2p]_q [p choose r]_{q^2}.
pub fn qgue_partial_alternating(p: usize, j: usize) -> QPoly {
    let dd = q_double_factorial(2 * p as i64 - 1);
    let mut acc = QPoly::zero();
    for r in 0..=p {
        let b1 = q_binomial((j + 2 * p - 2 * r) as u64, 2 * p as u64, 1);
        if b1.is_zero() {
            continue;
        }
        let term = (&b1 * &q_binomial(p as u64, r as u64, 2)).shift((r * r.saturating_sub(1)) as i64);
        if r % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    &dd * &acc
}

/// Total scaled moment, alternating route:
/// mhat_{N,2p} = [2p-1]_q!! sum_{r=0}^{p-1} (-1)^r q^{r(r+1)}
///   ([N+2p-2r-1 choose 2p]_q + [N+2p-2r-2 choose 2p]_q) [p-1 choose r]_{q^2}.
pub fn qgue_moment_alternating(n: usize, p: usize) -> QPoly {
    assert!(p >= 1 && n >= 1);
    let dd = q_double_factorial(2 * p as i64 - 1);
    let mut acc = QPoly::zero();
    for r in 0..p {
        let b = q_binomial((n + 2 * p - 2 * r - 1) as u64, 2 * p as u64, 1)
            + q_binomial((n + 2 * p - 2 * r - 2) as u64, 2 * p as u64, 1);
        if b.is_zero() {
            continue;
        }
        let term = (&b * &q_binomial(p as u64 - 1, r as u64, 2)).shift((r * (r + 1)) as i64);
        if r % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    &dd * &acc
}

/// Which alternative numeric formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlternativeForm {
    /// Double sum over (k, l) with (1-q)^{2l-p} weights.
    FlsyDoubleSum,
    /// Terminating 3phi2 form with the q^{-(p^2+p)/2} Laurent prefactor.
    Cohen3Phi2,
}

impl fmt::Display for AlternativeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlternativeForm::FlsyDoubleSum => write!(f, "flsy_double_sum"),
            AlternativeForm::Cohen3Phi2 => write!(f, "cohen_3phi2"),
        }
    }
}

/// Numeric [m]_q at a float q.
fn q_int_f64(m: i64, q: f64) -> f64 {
    // (1 - q^m) / (1 - q)
    let mut s = 0.0;
    for e in 0..m {
        s += q.powi(e as i32);
    }
    s
}

/// Numeric value of mhat_{2p,j} via one of the alternative closed forms,
/// for cross-checking the symbolic value at the same q in (0,1).
pub fn qgue_alternative_forms(
    p: usize,
    j: usize,
    mode: AlternativeForm,
    q: f64,
) -> Result<f64, crate::qcore::hyper::HyperError> {
    assert!(q > 0.0 && q < 1.0, "numeric q must lie in (0,1)");
    match mode {
        AlternativeForm::FlsyDoubleSum => Ok(flsy_double_sum(p, j, q)),
        AlternativeForm::Cohen3Phi2 => cohen_partial(p, j, q),
    }
}

/// mhat_{2p,j} = sum_{k=0}^p sum_{l=0}^{k} (-1)^k
///   q^{k^2 + 2kj + l(4l - 4k - 2j - 1)} (1-q)^{2l-p}
///   [p choose k]_{q^2} [k choose k-l]_{q^2}^2 [j]_q! / [j-2l]_q!,
/// where terms with 2l > j vanish (empty falling factorial convention).
fn flsy_double_sum(p: usize, j: usize, q: f64) -> f64 {
    let (p_i, j_i) = (p as i64, j as i64);
    let mut sum = 0.0f64;
    for k in 0..=p_i {
        for l in 0..=k.min(j_i / 2) {
            let expo = k * k + 2 * k * j_i + l * (4 * l - 4 * k - 2 * j_i - 1);
            let mut term = q.powi(expo as i32) * (1.0 - q).powi((2 * l - p_i) as i32);
            term *= q_binomial(p as u64, k as u64, 2).eval_f64(q);
            let inner = q_binomial(k as u64, (k - l) as u64, 2).eval_f64(q);
            term *= inner * inner;
            // [j]_q! / [j-2l]_q! = prod_{m=j-2l+1}^{j} [m]_q
            for m in (j_i - 2 * l + 1)..=j_i {
                term *= q_int_f64(m, q);
            }
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    sum
}

/// mhat_{2p,j} through the terminating 3phi2 series:
/// [2p-1]_q!! q^{-(p^2+p)/2} (-q;q)_p / ((1-q^p)(q;q)_p)
///   sum_{k=0}^{p} w_k q^{(k+p) j} (1 - q^{k+p}),
/// where w_k are the 3phi2(-q^{p+1}, q^p, q^{-p}; -q, q^{p+1}; q, q)
/// coefficients. The hypergeometric engine is exercised separately; here the
/// k-sum carries the extra per-j factor, so it is accumulated directly.
fn cohen_partial(p: usize, j: usize, q: f64) -> Result<f64, crate::qcore::hyper::HyperError> {
    let p_i = p as i64;
    // prefactor
    let mut pref = q_double_factorial(2 * p_i - 1).eval_f64(q);
    pref *= q.powi((-(p_i * p_i + p_i) / 2) as i32);
    let mut poch_negq = 1.0; // (-q;q)_p
    let mut poch_q = 1.0; // (q;q)_p
    for l in 0..p_i {
        poch_negq *= 1.0 + q.powi((1 + l) as i32);
        poch_q *= 1.0 - q.powi((1 + l) as i32);
    }
    pref *= poch_negq / ((1.0 - q.powi(p_i as i32)) * poch_q);

    // series coefficients w_k by term ratios, exactly terminating at k = p
    let upper = [QPow::neg(p_i + 1), QPow::pos(p_i), QPow::pos(-p_i)];
    let lower = [QPow::neg(1), QPow::pos(p_i + 1)];
    let mut sum = 0.0f64;
    let mut w = 1.0f64;
    for k in 0..=p_i {
        let tail = q.powi(((k + p_i) * j as i64) as i32) * (1.0 - q.powi((k + p_i) as i32));
        sum += w * tail;
        // ratio w_{k+1} / w_k, z = q (the correction power 1+s-r is zero)
        let mut ratio = q;
        for a in &upper {
            ratio *= match a.sign {
                1 if a.exp + k == 0 => 0.0,
                s => 1.0 - f64::from(s) * q.powi((a.exp + k) as i32),
            };
        }
        for b in &lower {
            ratio /= 1.0 - f64::from(b.sign) * q.powi((b.exp + k) as i32);
        }
        ratio /= 1.0 - q.powi((k + 1) as i32);
        w *= ratio;
    }
    Ok(pref * sum)
}

/// Total moment through the Cohen hypergeometric pair,
/// mhat_{N,2p} = [2p-1]_q!! q^{-(p^2+p)/2} (-q;q)_p / ((1-q^p)(q;q)_p)
///   (3phi2(...; q, q) - q^{Np} 3phi2(...; q, q^{N+1})).
pub fn qgue_cohen_total(
    n: usize,
    p: usize,
    q: f64,
) -> Result<f64, crate::qcore::hyper::HyperError> {
    assert!(q > 0.0 && q < 1.0 && p >= 1);
    let p_i = p as i64;
    let upper = [QPow::neg(p_i + 1), QPow::pos(p_i), QPow::pos(-p_i)];
    let lower = [QPow::neg(1), QPow::pos(p_i + 1)];
    let phi_q = q_hyp_rphis_f64(&upper, &lower, q, q, 64 + p, 1e-16)?;
    let phi_qn = q_hyp_rphis_f64(&upper, &lower, q, q.powi(n as i32 + 1), 64 + p, 1e-16)?;
    let mut pref = q_double_factorial(2 * p_i - 1).eval_f64(q);
    pref *= q.powi((-(p_i * p_i + p_i) / 2) as i32);
    let mut poch_negq = 1.0;
    let mut poch_q = 1.0;
    for l in 0..p_i {
        poch_negq *= 1.0 + q.powi((1 + l) as i32);
        poch_q *= 1.0 - q.powi((1 + l) as i32);
    }
    pref *= poch_negq / ((1.0 - q.powi(p_i as i32)) * poch_q);
    Ok(pref * (phi_q - q.powi((n * p) as i32) * phi_qn))
}

/// Total scaled moment at a numeric q by per-(j,l) accumulation of the
/// positive formula — all terms are positive, so plain compensated
/// summation keeps full relative precision even at N in the hundreds.
///
/// `ln_q` is passed instead of q so that `1 - q^m` can go through `expm1`
/// without cancellation; with the `q = e^{-lambda/N}` scaling, `ln q` is
/// known exactly.
pub fn mhat_numeric(n: usize, p: usize, ln_q: f64) -> f64 {
    // 1 - q^m = -expm1(m ln q)
    let one_minus_qpow = |m: f64| -> f64 { -f64::exp_m1(m * ln_q) };
    let qpow = |e: f64| -> f64 { f64::exp(e * ln_q) };

    // weight_l = [2p]_q! / ([2p-2l]_q!! [l]_q!), independent of j
    let mut weights = Vec::with_capacity(p + 1);
    for l in 0..=p {
        let mut w = 1.0f64;
        for m in 1..=2 * p {
            w *= one_minus_qpow(m as f64);
        }
        for m in 1..=(p - l) {
            w /= one_minus_qpow(2.0 * m as f64);
        }
        for m in 1..=l {
            w /= one_minus_qpow(m as f64);
        }
        // net (1-q) normalisation of the q-integers: 2p up, (p-l)+l down
        let count = 2 * p as i32 - (p - l) as i32 - l as i32;
        w /= one_minus_qpow(1.0).powi(count);
        weights.push(w);
    }

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for j in 0..n {
        for (l, w) in weights.iter().enumerate().take(p.min(j) + 1) {
            let e = ((j - l) * (2 * p - l) + l * l.saturating_sub(1) / 2) as f64;
            // [j choose l]_q = prod_{i=1}^{l} (1-q^{j-l+i}) / (1-q^i)
            let mut binom = 1.0f64;
            for i in 1..=l {
                binom *= one_minus_qpow((j - l + i) as f64) / one_minus_qpow(i as f64);
            }
            let term = qpow(e) * binom * w;
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    sum
}

/// `q^p m_{N,2p} = (q(1-q))^p mhat_{N,2p}` at `q = e^{-lambda/N}`.
///
/// Returns 0 for lambda = 0, p >= 1 (the `(1-q)^p` factor) and N for p = 0.
pub fn scaled_moment(n: usize, p: usize, lambda: f64) -> f64 {
    assert!(lambda >= 0.0 && n >= 1);
    if p == 0 {
        return n as f64;
    }
    if lambda == 0.0 {
        return 0.0;
    }
    let ln_q = -lambda / n as f64;
    let q = ln_q.exp();
    let one_minus_q = -f64::exp_m1(ln_q);
    (q * one_minus_q).powi(p as i32) * mhat_numeric(n, p, ln_q)
}
