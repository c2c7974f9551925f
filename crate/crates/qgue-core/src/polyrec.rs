//! Monic orthogonal polynomial families from the generic three-term
//! recurrence `P_{n+1}(x) = (x - b_n) P_n(x) - lambda_n P_{n-1}(x)`,
//! including all four Hermite-type conventions used by the moment formulas:
//!
//! | family | lambda_n |
//! |--------|----------|
//! | `He_n` (classical)     | `n`                 |
//! | `H_n(x;q)`             | `q^{n-1} (1 - q^n)` |
//! | `Hhat_n(x;q)`          | `q^{n-1} [n]_q`     |
//! | `Htilde_n(x;q)`        | `[n]_q`             |
//!
//! All four have `b_n = 0`. `H_n` and `Hhat_n` are related by the scaling
//! `Hhat_n(x;q) = (1-q)^{-n/2} H_n(sqrt(1-q) x; q)`; `Htilde_n` is not a
//! rescaling of either.

use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

use crate::qcore::number::BigRat;
use crate::qcore::poly::QPoly;
use crate::qcore::qfuncs::{q_integer, q_pochhammer_sym};

/// Coefficient ring for polynomial generation: exact (`BigRat`, `QPoly`)
/// or floating point (`f64`).
pub trait Coeff:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Polynomial in `x` with coefficients in `C`, ascending degree.
/// Every family member generated here is monic of exact degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> XPoly<C> {
    pub fn one() -> Self {
        XPoly { coeffs: vec![C::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "XPoly needs at least the constant term");
        XPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    /// P_n(-x) = (-1)^n P_n(x), i.e. only every other coefficient survives.
    pub fn has_parity(&self) -> bool {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| (k % 2 == n % 2) || c.is_zero())
    }
}

impl XPoly<f64> {
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl XPoly<QPoly> {
    /// Evaluate at a numeric point (x, q).
    pub fn eval_f64(&self, x: f64, q: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval_f64(q);
        }
        acc
    }

    /// Substitute q = 1 in every coefficient.
    pub fn at_q_one(&self) -> XPoly<BigRat> {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| c.eval_at_one()).collect(),
        }
    }

    /// Text form like `x^3 - (1+q+q^2)*x`, descending powers of `x`.
    pub fn display_string(&self) -> String {
        let mut out = String::new();
        for k in (0..=self.degree()).rev() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            // pull a global sign out of the lowest-exponent coefficient
            let neg = c
                .min_exp()
                .map(|e| c.coeff(e) < BigRat::zero())
                .unwrap_or(false);
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_str = if abs.is_one() && k > 0 {
                String::new()
            } else if abs.num_terms() > 1 {
                format!("({})", abs.compact_string())
            } else {
                abs.compact_string()
            };
            match (coeff_str.is_empty(), k) {
                (_, 0) => out.push_str(if coeff_str.is_empty() { "1" } else { &coeff_str }),
                (true, 1) => out.push('x'),
                (true, _) => out.push_str(&format!("x^{k}")),
                (false, 1) => out.push_str(&format!("{coeff_str}*x")),
                (false, _) => out.push_str(&format!("{coeff_str}*x^{k}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Recurrence data for a monic orthogonal family.
pub struct RecurrenceSpec<C> {
    b: Box<dyn Fn(usize) -> C>,
    lambda: Box<dyn Fn(usize) -> C>,
}

impl<C: Coeff> RecurrenceSpec<C> {
    pub fn new(
        b: impl Fn(usize) -> C + 'static,
        lambda: impl Fn(usize) -> C + 'static,
    ) -> Self {
        RecurrenceSpec { b: Box::new(b), lambda: Box::new(lambda) }
    }

    /// Generate P_0 .. P_{n_max}.
    pub fn generate(&self, n_max: usize) -> Vec<XPoly<C>> {
        let mut fam: Vec<XPoly<C>> = Vec::with_capacity(n_max + 1);
        fam.push(XPoly::one());
        for n in 0..n_max {
            let pn = &fam[n];
            assert!(
                n == 0 || !(self.lambda)(n).is_zero(),
                "lambda_{n} = 0 breaks positive-definiteness"
            );
            let mut next = vec![C::zero(); n + 2];
            let bn = (self.b)(n);
            for (k, c) in pn.coeffs().iter().enumerate() {
                // x * P_n
                next[k + 1] = next[k + 1].clone() + c.clone();
                // - b_n * P_n
                if !bn.is_zero() {
                    next[k] = next[k].clone() - mul(&bn, c);
                }
            }
            // - lambda_n * P_{n-1}; P_{-1} = 0
            if n >= 1 {
                let lam = (self.lambda)(n);
                for (k, c) in fam[n - 1].coeffs().iter().enumerate() {
                    next[k] = next[k].clone() - mul(&lam, c);
                }
            }
            fam.push(XPoly::from_coeffs(next));
        }
        fam
    }
}

fn mul<C: Coeff>(a: &C, b: &C) -> C {
    a.clone() * b.clone()
}

/// Classical monic Hermite polynomials He_0 .. He_{n_max}.
pub fn hermite_he(n_max: usize) -> Vec<XPoly<BigRat>> {
    RecurrenceSpec::new(
        |_| BigRat::zero(),
        |n| BigRat::from_integer(crate::qcore::number::BigInt::from(n as i64)),
    )
    .generate(n_max)
}

/// q-Hermite family H_n(x;q): lambda_n = q^{n-1}(1 - q^n).
pub fn q_hermite_h(n_max: usize) -> Vec<XPoly<QPoly>> {
    RecurrenceSpec::new(
        |_| QPoly::zero(),
        |n| {
            let n = n as i64;
            QPoly::monomial(BigRat::one(), n - 1) - QPoly::monomial(BigRat::one(), 2 * n - 1)
        },
    )
    .generate(n_max)
}

/// Scaled q-Hermite family Hhat_n(x;q): lambda_n = q^{n-1} [n]_q.
pub fn q_hermite_hat(n_max: usize) -> Vec<XPoly<QPoly>> {
    RecurrenceSpec::new(
        |_| QPoly::zero(),
        |n| q_integer(n as u64).shift(n as i64 - 1),
    )
    .generate(n_max)
}

/// The third convention Htilde_n(x;q): lambda_n = [n]_q.
pub fn q_hermite_tilde(n_max: usize) -> Vec<XPoly<QPoly>> {
    RecurrenceSpec::new(|_| QPoly::zero(), |n| q_integer(n as u64)).generate(n_max)
}

/// H_n(x;q) from its explicit 2phi0 sum form,
/// `H_n = sum_k (-1)^k (q^{-n};q^2)_k (q^{-n+1};q^2)_k q^{k(2n-k)} / (q^2;q^2)_k x^{n-2k}`.
pub fn explicit_q_hermite_h(n: usize) -> XPoly<QPoly> {
    let n_i = n as i64;
    let mut coeffs = vec![QPoly::zero(); n + 1];
    for k in 0..=(n / 2) {
        let k_i = k as i64;
        let a1 = q_pochhammer_sym(&QPoly::monomial(BigRat::one(), -n_i), 2, k as u64);
        let a2 = q_pochhammer_sym(&QPoly::monomial(BigRat::one(), -n_i + 1), 2, k as u64);
        let den = q_pochhammer_sym(&QPoly::monomial(BigRat::one(), 2), 2, k as u64);
        let mut num = (&a1 * &a2).shift(k_i * (2 * n_i - k_i));
        if k % 2 == 1 {
            num = -num;
        }
        coeffs[n - 2 * k] = num.div_exact(&den);
    }
    XPoly::from_coeffs(coeffs)
}

/// True iff the recurrence-generated H_n equals the explicit sum form,
/// coefficient by coefficient.
pub fn explicit_h_check(n: usize) -> bool {
    let fam = q_hermite_h(n);
    fam[n] == explicit_q_hermite_h(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::number::rat_int;

    #[test]
    fn hermite_small() {
        let fam = hermite_he(4);
        // He_2 = x^2 - 1
        assert_eq!(fam[2].coeffs(), &[rat_int(-1), rat_int(0), rat_int(1)]);
        // He_3 = x^3 - 3x
        assert_eq!(
            fam[3].coeffs(),
            &[rat_int(0), rat_int(-3), rat_int(0), rat_int(1)]
        );
        // He_4 = x^4 - 6x^2 + 3
        assert_eq!(
            fam[4].coeffs(),
            &[rat_int(3), rat_int(0), rat_int(-6), rat_int(0), rat_int(1)]
        );
        assert!(fam[0].is_monic() && fam[0].degree() == 0);
    }

    #[test]
    fn q_hermite_h_small() {
        let fam = q_hermite_h(3);
        // H_2 = x^2 - (1 - q)
        let want = QPoly::from_int(-1) + QPoly::q();
        assert_eq!(fam[2].coeff(0), want);
        // H_3 = x^3 - (1 - q^3) x
        let want = QPoly::q().pow(3) - QPoly::one();
        assert_eq!(fam[3].coeff(1), want);
    }

    #[test]
    fn q_hermite_hat_small() {
        let fam = q_hermite_hat(3);
        // Hhat_3 = x^3 - [3]_q x
        assert_eq!(fam[3].coeff(1), -q_integer(3));
        assert_eq!(
            fam[3].display_string(),
            "x^3 - (1+q+q^2)*x"
        );
    }

    #[test]
    fn hat_family_degenerates_to_hermite() {
        let hat = q_hermite_hat(10);
        let he = hermite_he(10);
        for n in 0..=10 {
            assert_eq!(hat[n].at_q_one(), he[n], "n = {n}");
        }
    }

    #[test]
    fn explicit_sum_matches_recurrence() {
        for n in 0..=12 {
            assert!(explicit_h_check(n), "H_{n} explicit form mismatch");
        }
    }

    #[test]
    fn parity_and_monicity() {
        for fam in [q_hermite_h(20), q_hermite_hat(20), q_hermite_tilde(20)] {
            for (n, p) in fam.iter().enumerate() {
                assert_eq!(p.degree(), n);
                assert!(p.is_monic(), "degree {n} not monic");
                assert!(p.has_parity(), "degree {n} fails parity");
            }
        }
        for (n, p) in hermite_he(20).iter().enumerate() {
            assert_eq!(p.degree(), n);
            assert!(p.is_monic() && p.has_parity(), "He_{n}");
        }
    }

    #[test]
    fn scaling_relation_hat_vs_h() {
        // Hhat_n(x;q) = (1-q)^{-n/2} H_n(sqrt(1-q) x; q), tested numerically
        // (the sqrt lives outside the exact coefficient field).
        for &q in &[0.3f64, 0.7] {
            let hat = q_hermite_hat(10);
            let h = q_hermite_h(10);
            let s = (1.0 - q).sqrt();
            for n in 0..=10usize {
                for &x in &[-2.0, -0.7, 0.1, 1.3, 2.9] {
                    let lhs = hat[n].eval_f64(x, q);
                    let rhs = h[n].eval_f64(s * x, q) / s.powi(n as i32);
                    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                    assert!(
                        ((lhs - rhs) / scale).abs() < 1e-12,
                        "n={n} q={q} x={x}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn tilde_is_not_a_rescaling_of_h() {
        // For an even monic quartic x^4 + c2 x^2 + c0, the combination
        // c2^2 / c0 is invariant under x -> s x rescaling; it separates
        // Htilde_4 from H_4 at sampled q.
        let q = 0.5;
        let h4 = &q_hermite_h(4)[4];
        let t4 = &q_hermite_tilde(4)[4];
        let inv = |p: &XPoly<QPoly>| {
            let c2 = p.coeff(2).eval_f64(q);
            let c0 = p.coeff(0).eval_f64(q);
            c2 * c2 / c0
        };
        assert!((inv(h4) - inv(t4)).abs() > 1e-6);
    }

    #[test]
    fn float_recurrence_matches_exact_evaluation() {
        let spec = RecurrenceSpec::<f64>::new(|_| 0.0, |n| n as f64);
        let fam = spec.generate(6);
        let exact = hermite_he(6);
        for n in 0..=6usize {
            for &x in &[-1.5f64, 0.0, 2.25] {
                let want: f64 = exact[n]
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        use num_traits::ToPrimitive;
                        c.to_f64().unwrap() * x.powi(k as i32)
                    })
                    .sum();
                assert!((fam[n].eval(x) - want).abs() < 1e-9);
            }
        }
    }
}
