//! Floating-point side: discrete q-Hermite weight and lattice density,
//! Jackson quadrature, regularised incomplete beta, the two-term large-N
//! moment coefficients, and the limiting densities with the genus-one
//! correction.

pub mod asym;
pub mod beta;
pub mod density;
pub mod jackson;
pub mod quad;

use std::fmt;

pub use asym::{continuum_limit_check, convergence_error, AsymptoticCoeffs};
pub use beta::{incomplete_beta_reg, ln_gamma};
pub use density::{
    b_edge, density_hat, density_moment_check, density_rho0, density_rho1, sample_profile,
    semicircle, semicircle_limit_check, DensityProfile,
};
pub use jackson::{jackson_integral, lattice_density, weight_dh, LatticeDensity, LatticeRow};
pub use quad::adaptive_quad;

/// Central tolerance configuration. One tuning point for the whole float
/// layer.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Special-function evaluations (incomplete beta, weight products).
    pub special_fn: f64,
    /// Quadrature targets.
    pub quadrature: f64,
    /// Acceptance-level comparisons.
    pub acceptance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { special_fn: 1e-13, quadrature: 1e-10, acceptance: 1e-8 }
    }
}

/// Error type of the float layer.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectralError {
    /// Argument outside the documented domain.
    Domain(String),
    /// A truncation tail bound could not be met.
    TailBound { bound: f64, tol: f64 },
    /// Adaptive quadrature or an iteration failed to converge.
    NonConvergence(String),
    /// Evaluation exactly at a non-integrable singular point.
    SingularPoint { x: f64, lambda: f64 },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::Domain(msg) => write!(f, "domain error: {msg}"),
            SpectralError::TailBound { bound, tol } => {
                write!(f, "tail bound {bound:e} exceeds tolerance {tol:e}")
            }
            SpectralError::NonConvergence(msg) => write!(f, "no convergence: {msg}"),
            SpectralError::SingularPoint { x, lambda } => {
                write!(f, "singular point x = {x} at lambda = {lambda}")
            }
        }
    }
}

impl std::error::Error for SpectralError {}

impl From<crate::qcore::qfuncs::PochhammerError> for SpectralError {
    fn from(e: crate::qcore::qfuncs::PochhammerError) -> Self {
        match e {
            crate::qcore::qfuncs::PochhammerError::BadModulus(q) => {
                SpectralError::Domain(format!("q = {q} outside (-1, 1)"))
            }
            crate::qcore::qfuncs::PochhammerError::TailBound { bound, tol } => {
                SpectralError::TailBound { bound, tol }
            }
        }
    }
}
