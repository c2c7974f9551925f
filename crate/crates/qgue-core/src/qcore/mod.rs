//! Exact arithmetic foundation: big rationals, Laurent polynomials in `q`,
//! and the q-combinatorial primitives every moment formula is built from.

pub mod hyper;
pub mod number;
pub mod poly;
pub mod qfuncs;

pub use hyper::{hyp_2f1_terminating, q_hyp_rphis_f64, QPow};
pub use number::{binomial, catalan, double_factorial, factorial, BigInt, BigRat};
pub use poly::{QPoly, QRat};
pub use qfuncs::{
    q_binomial, q_double_factorial, q_factorial, q_integer, q_pochhammer_f64, q_pochhammer_sym,
    stirling_first, PochhammerOrder,
};
