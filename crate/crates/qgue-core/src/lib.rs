//! Spectral moments of the discrete q-deformed GUE, three independent ways.
//!
//! The crate is organised around one goal: compute every quantity by at least
//! two unrelated routes and check them against each other at desk scale.
//!
//! - [`qcore`] — exact arithmetic: big rationals, Laurent polynomials in `q`,
//!   q-integers/factorials/binomials, Stirling and Catalan numbers, and
//!   terminating (q-)hypergeometric sums.
//! - [`polyrec`] — monic orthogonal polynomial families from a generic
//!   three-term recurrence: classical Hermite `He_n` and the three q-Hermite
//!   conventions `H_n`, `Ĥ_n`, `H̃_n`.
//! - [`enumor`] — brute-force combinatorial ground truth: matchings with
//!   crossing/nesting statistics and weighted Motzkin-path enumeration.
//! - [`moments`] — closed-form moment evaluators (positive, alternating,
//!   hypergeometric) for the GUE and its q-deformation, the genus expansion,
//!   and the Harer–Zagier and topological recurrences.
//! - [`spectral`] — the floating-point side: discrete q-Hermite weight and
//!   lattice density, Jackson integrals, regularised incomplete beta, the
//!   two-term large-N coefficients, and the limiting densities with the
//!   genus-one (Hadamard-regularised) correction.

pub mod enumor;
pub mod moments;
pub mod polyrec;
pub mod qcore;
pub mod spectral;

pub use qcore::number::{BigInt, BigRat};
pub use qcore::poly::QPoly;
