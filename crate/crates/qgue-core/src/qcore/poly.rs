//! Laurent polynomials in the formal variable `q` with exact rational
//! coefficients — the universal carrier for symbolic moment values.
//!
//! Storage is a sparse exponent → coefficient map. The map never holds a
//! zero coefficient, so equality of maps is equality of mathematical values.
//! Negative exponents are allowed: the Cohen-form cross-checks carry
//! `q^{-(p^2+p)/2}` prefactors, while all positive-formula routes stay in the
//! ordinary polynomial subring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::number::{BigInt, BigRat};

/// Laurent polynomial in `q` over the rationals, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    terms: BTreeMap<i64, BigRat>,
}

impl QPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        QPoly::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        QPoly::constant(BigRat::one())
    }

    /// The monomial `q`.
    pub fn q() -> Self {
        QPoly::monomial(BigRat::one(), 1)
    }

    /// Constant polynomial.
    pub fn constant(c: BigRat) -> Self {
        QPoly::monomial(c, 0)
    }

    /// Constant polynomial from a machine integer.
    pub fn from_int(n: i64) -> Self {
        QPoly::constant(BigRat::from_integer(BigInt::from(n)))
    }

    /// The monomial `c * q^e`.
    pub fn monomial(c: BigRat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of `q^e` (zero if absent).
    pub fn coeff(&self, e: i64) -> BigRat {
        self.terms.get(&e).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True iff every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True iff every coefficient is >= 0.
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn insert_add(&mut self, e: i64, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &BigRat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by `q^e` (exponent shift).
    pub fn shift(&self, e: i64) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect(),
        }
    }

    /// Substitute `q -> q^b`, i.e. scale every exponent by `b` (b >= 1).
    ///
    /// Sound because all our base-`q^b` objects (the `q^2`-binomials) are
    /// polynomials in their base.
    pub fn subst_q_pow(&self, b: i64) -> QPoly {
        assert!(b >= 1, "substitution exponent must be positive");
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (e * b, c.clone())).collect(),
        }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation at a rational point (x != 0 when negative exponents
    /// are present).
    pub fn eval_rat(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for (e, c) in self.iter() {
            acc += c * rat_pow(x, e);
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at q = 1.
    pub fn eval_at_one(&self) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Float evaluation with compensated (Kahan) summation over terms in
    /// ascending exponent order. Coefficients of the alternating forms are
    /// large with heavy cancellation near q = 1, so the compensation matters.
    pub fn eval_f64(&self, q: f64) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (e, c) in self.iter() {
            let term = rat_to_f64(c) * q.powi(e as i32);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    }

    /// Exact long division, panicking if the remainder is nonzero.
    ///
    /// Every in-scope quotient (Gaussian binomials, the
    /// `[2p]_q!/([2p-2l]_q!! [l]_q!)` factors) is a genuine polynomial, so a
    /// nonzero remainder signals a transcription bug in a formula.
    pub fn div_exact(&self, den: &QPoly) -> QPoly {
        assert!(!den.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return QPoly::zero();
        }
        let min_quot = self.min_exp().unwrap() - den.min_exp().unwrap();
        let den_top = den.max_exp().unwrap();
        let den_lead = den.coeff(den_top);
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(rem_top) = rem.max_exp() {
            let e = rem_top - den_top;
            assert!(
                e >= min_quot,
                "non-exact polynomial division: {} by {}",
                self,
                den
            );
            let c = rem.coeff(rem_top) / &den_lead;
            for (de, dc) in den.iter() {
                rem.insert_add(de + e, -(dc * &c));
            }
            quot.insert_add(e, c);
        }
        quot
    }
}

fn rat_pow(x: &BigRat, e: i64) -> BigRat {
    if e == 0 {
        return BigRat::one();
    }
    let base = if e > 0 {
        x.clone()
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        x.recip()
    };
    let mut n = e.unsigned_abs();
    let mut acc = BigRat::one();
    let mut b = base;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &b;
        }
        n >>= 1;
        if n > 0 {
            b = &b * &b;
        }
    }
    acc
}

fn rat_to_f64(c: &BigRat) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::one()
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.insert_add(e, -c.clone());
        }
        out
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (e, c) in rhs.iter() {
            self.insert_add(e, c.clone());
        }
    }
}

impl AddAssign for QPoly {
    fn add_assign(&mut self, rhs: QPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        for (e, c) in rhs.iter() {
            self.insert_add(e, -c.clone());
        }
    }
}

impl MulAssign<&QPoly> for QPoly {
    fn mul_assign(&mut self, rhs: &QPoly) {
        *self = &*self * rhs;
    }
}

fn push_coeff(out: &mut String, c: &BigRat) {
    out.push_str(&c.to_string());
}

fn format_terms(poly: &QPoly, spaced: bool) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in poly.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if spaced {
            out.push_str(if neg { " - " } else { " + " });
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = abs.is_one();
        if e == 0 {
            push_coeff(&mut out, &abs);
        } else {
            if !unit {
                push_coeff(&mut out, &abs);
                out.push('*');
            }
            out.push('q');
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
    out
}

impl fmt::Display for QPoly {
    /// Canonical text form: exponents ascending, rationals as `a/b`,
    /// e.g. `2 + q + q^2` or `1/2*q^-2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self, true))
    }
}

impl QPoly {
    /// Compact (space-free) form used inside larger expressions,
    /// e.g. `1+q+q^2`.
    pub fn compact_string(&self) -> String {
        format_terms(self, false)
    }
}

/// Transient quotient of two `QPoly`. Any value asserted to be polynomial
/// must divide with zero remainder.
#[derive(Clone, Debug)]
pub struct QRat {
    pub num: QPoly,
    pub den: QPoly,
}

impl QRat {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "QRat with zero denominator");
        QRat { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRat::new(p, QPoly::one())
    }

    pub fn mul_poly(&mut self, p: &QPoly) {
        self.num *= p;
    }

    pub fn div_poly(&mut self, p: &QPoly) {
        assert!(!p.is_zero(), "QRat division by zero polynomial");
        self.den *= p;
    }

    /// Collapse to a polynomial, asserting exact division.
    pub fn into_poly(self) -> QPoly {
        self.num.div_exact(&self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::number::rat;

    #[test]
    fn canonical_form_drops_zeros() {
        let a = QPoly::q() - QPoly::q();
        assert!(a.is_zero());
        assert_eq!(a, QPoly::zero());
    }

    #[test]
    fn arithmetic_small() {
        // (1 - q)(1 + q) = 1 - q^2
        let one = QPoly::one();
        let q = QPoly::q();
        let prod = (&one - &q) * (&one + &q);
        let want = &one - &q.pow(2);
        assert_eq!(prod, want);
    }

    #[test]
    fn exact_division() {
        // (1 - q^4) / (1 - q) = 1 + q + q^2 + q^3
        let one = QPoly::one();
        let num = &one - &QPoly::q().pow(4);
        let den = &one - &QPoly::q();
        let quot = num.div_exact(&den);
        let mut want = QPoly::zero();
        for e in 0..4 {
            want += &QPoly::monomial(BigRat::one(), e);
        }
        assert_eq!(quot, want);
    }

    #[test]
    #[should_panic(expected = "non-exact")]
    fn inexact_division_panics() {
        let num = QPoly::one() + QPoly::q();
        let den = QPoly::one() - QPoly::q();
        let _ = num.div_exact(&den);
    }

    #[test]
    fn laurent_division() {
        // q^-2 (1 - q^2) / (1 - q) = q^-2 (1 + q)
        let num = (QPoly::one() - QPoly::q().pow(2)).shift(-2);
        let den = QPoly::one() - QPoly::q();
        let quot = num.div_exact(&den);
        let want = QPoly::monomial(BigRat::one(), -2) + QPoly::monomial(BigRat::one(), -1);
        assert_eq!(quot, want);
    }

    #[test]
    fn display_canonical() {
        let p = QPoly::from_int(2) + QPoly::q() + QPoly::q().pow(2);
        assert_eq!(p.to_string(), "2 + q + q^2");
        let lau = QPoly::monomial(rat(1, 2), -2) + QPoly::from_int(3);
        assert_eq!(lau.to_string(), "1/2*q^-2 + 3");
        let neg = QPoly::from_int(1) - QPoly::q();
        assert_eq!(neg.to_string(), "1 - q");
        assert_eq!(neg.compact_string(), "1-q");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_routes_agree() {
        let p = QPoly::from_int(2) + QPoly::q().pow(3).scale(&rat(5, 7)) - QPoly::q();
        let x = rat(1, 3);
        let exact = p.eval_rat(&x);
        let float = p.eval_f64(1.0 / 3.0);
        let exact_f = exact.to_f64().unwrap();
        assert!((exact_f - float).abs() < 1e-15);
        assert_eq!(p.eval_at_one(), p.eval_rat(&BigRat::one()));
    }
}
