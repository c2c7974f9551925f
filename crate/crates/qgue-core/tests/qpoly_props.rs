//! Randomized algebraic laws for the exact polynomial layer.

use proptest::prelude::*;
use qgue_core::qcore::number::{rat, BigRat};
use qgue_core::QPoly;

fn arb_qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-6i64..=6, -9i64..=9, 1i64..=4), 0..6).prop_map(|terms| {
        let mut p = QPoly::zero();
        for (e, num, den) in terms {
            p += &QPoly::monomial(rat(num, den), e);
        }
        p
    })
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_qpoly(), b in arb_qpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_associates(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in arb_qpoly(), b in arb_qpoly(), num in -5i64..=5, den in 1i64..=4) {
        let x = rat(num, den);
        // negative exponents need x != 0
        prop_assume!(num != 0 || (a.min_exp().unwrap_or(0) >= 0 && b.min_exp().unwrap_or(0) >= 0));
        let prod = (&a * &b).eval_rat(&x);
        prop_assert_eq!(prod, a.eval_rat(&x) * b.eval_rat(&x));
        let sum = (&a + &b).eval_rat(&x);
        prop_assert_eq!(sum, a.eval_rat(&x) + b.eval_rat(&x));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_qpoly(), b in arb_qpoly()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b), a);
    }

    #[test]
    fn scalar_ops_match_constant_polys(a in arb_qpoly(), num in -5i64..=5, den in 1i64..=4) {
        let c = rat(num, den);
        prop_assert_eq!(a.scale(&c), &a * &QPoly::constant(c.clone()));
    }

    #[test]
    fn float_eval_tracks_exact_eval(a in arb_qpoly()) {
        // stay away from 0 so negative exponents are safe
        let q = 0.625f64; // exactly representable
        let exact = a.eval_rat(&rat(5, 8));
        let float = a.eval_f64(q);
        let e = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        prop_assert!((e - float).abs() <= 1e-12 * e.abs().max(1.0));
    }
}

#[test]
fn display_round_trips_by_eye() {
    // canonical serialization shape: ascending exponents, a/b rationals
    let p = QPoly::monomial(rat(-1, 2), -1) + QPoly::from_int(3) + QPoly::q().pow(2);
    assert_eq!(p.to_string(), "-1/2*q^-1 + 3 + q^2");
    assert_eq!(
        QPoly::constant(BigRat::new(7.into(), 3.into())).to_string(),
        "7/3"
    );
}
