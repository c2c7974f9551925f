//! Genus expansion of the GUE moments: m_{N,2p} = sum_g E_g(p) N^{p+1-2g},
//! with the Stirling-number coefficient formula, the odd-power vanishing
//! identity, and the two-parameter (topological) recurrence.

use num_traits::Zero;

use crate::qcore::number::{binomial, catalan, double_factorial, factorial, BigInt, BigRat};
use crate::qcore::qfuncs::stirling_first;

use super::gue::gue_moment_poly_in_n;

/// One genus-expansion coefficient with its indices. In the map-counting
/// range `0 <= g <= (p+1)/2` the value is a nonnegative integer.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusCoefficient {
    pub g: u64,
    pub p: u64,
    pub value: BigRat,
}

impl GenusCoefficient {
    pub fn compute(g: u64, p: u64) -> Self {
        GenusCoefficient { g, p, value: genus_coefficient(g, p) }
    }

    /// True when (g, p) lies in the range where the coefficient counts
    /// polygon gluings.
    pub fn in_map_range(&self) -> bool {
        self.g <= self.p.div_ceil(2)
    }
}

/// The table E_g(p) for p <= p_max, g <= min(g_max, (p+1)/2), in (p, g)
/// order.
pub fn genus_table(p_max: u64, g_max: Option<u64>) -> Vec<GenusCoefficient> {
    let mut out = Vec::new();
    for p in 0..=p_max {
        let top = g_max.unwrap_or(u64::MAX).min(p.div_ceil(2));
        for g in 0..=top {
            out.push(GenusCoefficient::compute(g, p));
        }
    }
    out
}

/// E_g(p) = (2p-1)!! sum_{m=0}^{2g} s(p+1-m, p+1-2g) / (p+1-m)!
///          binom(p, m) 2^{p-m}.
///
/// Zero whenever 2g > p+1 (all Stirling factors vanish).
pub fn genus_coefficient(g: u64, p: u64) -> BigRat {
    let mut sum = BigRat::zero();
    let target = p as i64 + 1 - 2 * g as i64;
    if target < 0 {
        return sum;
    }
    for m in 0..=(2 * g).min(p) {
        let n_up = p + 1 - m;
        let s = stirling_first(n_up, target as u64);
        if s.is_zero() {
            continue;
        }
        let term = BigRat::new(
            s * binomial(p as i64, m as i64) * BigInt::from(2u32).pow((p - m) as u32),
            factorial(n_up),
        );
        sum += term;
    }
    sum * BigRat::from_integer(double_factorial(2 * p as i64 - 1))
}

/// Closed forms for the first few genus coefficients, used as an independent
/// route in tests: E_0 = C_p, E_1 = C_p (p+1)!/(p-2)!/12, and so on.
pub fn genus_closed_form(g: u64, p: u64) -> Option<BigRat> {
    let cp = BigRat::from_integer(catalan(p));
    let falling = |k: u64| -> BigRat {
        // (p+1)! / (p+1-k)! as a rational, zero when k > p+1
        if k > p + 1 {
            return BigRat::zero();
        }
        BigRat::from_integer(factorial(p + 1) / factorial(p + 1 - k))
    };
    let p_i = p as i64;
    match g {
        0 => Some(cp),
        1 => Some(cp * falling(3) / BigRat::from_integer(BigInt::from(12))),
        2 => Some(
            cp * falling(5) * BigRat::new(BigInt::from(5 * p_i - 2), BigInt::from(1440)),
        ),
        3 => Some(
            cp * falling(7)
                * BigRat::new(
                    BigInt::from(35 * p_i * p_i - 77 * p_i + 12),
                    BigInt::from(362_880),
                ),
        ),
        4 => Some(
            cp * falling(9)
                * BigRat::new(
                    BigInt::from(175 * p_i.pow(3) - 945 * p_i.pow(2) + 1094 * p_i - 72),
                    BigInt::from(87_091_200),
                ),
        ),
        _ => None,
    }
}

/// True iff m_{N,2p} = sum_g E_g(p) N^{p+1-2g} as a polynomial identity in
/// N: the interpolated moment polynomial must match the genus coefficients
/// slot for slot, with odd-power slots vanishing.
pub fn genus_expansion_check(p: u64) -> bool {
    let coeffs = gue_moment_poly_in_n(p);
    let deg = (p + 1) as usize;
    debug_assert_eq!(coeffs.len(), deg + 1);
    for (k, c) in coeffs.iter().enumerate() {
        if k == 0 {
            if !c.is_zero() {
                return false;
            }
            continue;
        }
        let from_genus = if (deg - k).is_multiple_of(2) {
            genus_coefficient(((deg - k) / 2) as u64, p)
        } else {
            BigRat::zero()
        };
        if *c != from_genus {
            return false;
        }
    }
    true
}

/// The odd-r vanishing identity behind the 1/N^2 structure:
/// sum_{m=0}^{r} s(p+1-m, p+1-r)/(p+1-m)! binom(p,m) 2^{p-m} = 0 for odd r.
pub fn odd_vanishing_check(p: u64) -> bool {
    for r in (1..=p + 1).step_by(2) {
        let mut sum = BigRat::zero();
        for m in 0..=r.min(p) {
            let n_up = p + 1 - m;
            let target = p + 1 - r;
            let s = stirling_first(n_up, target);
            if s.is_zero() {
                continue;
            }
            sum += BigRat::new(
                s * binomial(p as i64, m as i64) * BigInt::from(2u32).pow((p - m) as u32),
                factorial(n_up),
            );
        }
        if !sum.is_zero() {
            return false;
        }
    }
    true
}

/// Two-parameter recurrence
/// (p+2) E_g(p+1) = 2(2p+1) E_g(p) + p(2p+1)(2p-1) E_{g-1}(p-1),
/// with E_{-1} = 0.
pub fn topological_recursion_check(g_max: u64, p_max: u64) -> bool {
    for g in 0..=g_max {
        for p in 1..=p_max {
            let lhs = BigRat::from_integer(BigInt::from(p + 2)) * genus_coefficient(g, p + 1);
            let mut rhs = BigRat::from_integer(BigInt::from(2 * (2 * p + 1)))
                * genus_coefficient(g, p);
            if g >= 1 {
                rhs += BigRat::from_integer(
                    BigInt::from(p) * BigInt::from(2 * p + 1) * BigInt::from(2 * p as i64 - 1),
                ) * genus_coefficient(g - 1, p - 1);
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::number::rat_int;

    #[test]
    fn coefficient_spot_values() {
        assert_eq!(genus_coefficient(0, 3), rat_int(5));
        assert_eq!(genus_coefficient(1, 3), rat_int(10));
        assert_eq!(genus_coefficient(1, 4), rat_int(70));
        assert_eq!(genus_coefficient(2, 4), rat_int(21));
        assert_eq!(genus_coefficient(1, 2), rat_int(1));
        assert_eq!(genus_coefficient(0, 1), rat_int(1));
    }

    #[test]
    fn coefficient_is_catalan_at_genus_zero() {
        for p in 0..=12u64 {
            assert_eq!(genus_coefficient(0, p), BigRat::from_integer(catalan(p)));
        }
    }

    #[test]
    fn closed_forms_match_stirling_formula() {
        for g in 0..=4u64 {
            for p in 0..=12u64 {
                if let Some(cf) = genus_closed_form(g, p) {
                    assert_eq!(genus_coefficient(g, p), cf, "g={g} p={p}");
                }
            }
        }
    }

    #[test]
    fn coefficients_are_nonnegative_integers_in_range() {
        for p in 0..=10u64 {
            for g in 0..=p.div_ceil(2) {
                let e = genus_coefficient(g, p);
                assert!(e.is_integer(), "E_{g}({p}) = {e} not integral");
                assert!(e >= BigRat::zero());
            }
        }
    }

    #[test]
    fn expansion_reconstructs_moments() {
        for p in 0..=10u64 {
            assert!(genus_expansion_check(p), "p = {p}");
        }
    }

    #[test]
    fn odd_terms_vanish() {
        for p in 0..=12u64 {
            assert!(odd_vanishing_check(p), "p = {p}");
        }
    }

    #[test]
    fn recursion_holds_with_spot_case() {
        // 4 E_1(3) = 10 E_1(2) + 30 E_0(1)  ->  40 = 10 + 30
        let lhs = rat_int(4) * genus_coefficient(1, 3);
        let rhs = rat_int(10) * genus_coefficient(1, 2) + rat_int(30) * genus_coefficient(0, 1);
        assert_eq!(lhs, rat_int(40));
        assert_eq!(lhs, rhs);
        assert!(topological_recursion_check(4, 10));
    }
}
