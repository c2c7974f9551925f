//! Limiting spectral density of the scaled ensemble and its genus-one
//! correction.
//!
//! Order 0: on `(-b, b)` the density is an argument of a complex quotient;
//! for `lambda > log 2` a plateau `1/(lambda |x|)` appears on `b < |x| < 1`.
//! The transition `lambda = log 2` has `b = 1`, so the plateau is empty and
//! both branch expressions coincide there.
//!
//! Order 1: a closed term on `(-b, b)` plus a t-integral whose integrand
//! carries a non-integrable `(t - t0)^{-5/2}` endpoint singularity. The
//! integral is a Hadamard finite part: subtract the two divergent endpoint
//! orders (-5/2 and -3/2), integrate the regular remainder adaptively after
//! a square-root substitution, and reinstate the finite parts
//! `-(2/3) A0 D^{-3/2} - 2 A1 D^{-1/2}` in closed form.

use std::f64::consts::{LN_2, PI};

use super::beta::{incomplete_beta_reg, ln_gamma};
use super::quad::adaptive_quad;
use super::{SpectralError, Tolerances};

/// Support edge of the bulk, b(lambda) = 2 sqrt((1 - e^{-lambda}) e^{-lambda}).
pub fn b_edge(lambda: f64) -> f64 {
    let em = (-lambda).exp();
    let x = -f64::exp_m1(-lambda);
    2.0 * (x * em).sqrt()
}

/// The bulk (argument) part of the order-0 density, valid for 0 < |x| <= b.
///
/// The two phases are combined into a single `atan2` of the product,
/// `arg = atan2(2 s |x|, 4 e^{-lambda} - 2 x^2)` with `s = sqrt(b^2 - x^2)`,
/// which avoids the cancellation of subtracting two nearly equal angles at
/// small |x|.
fn rho0_bulk(x: f64, lambda: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-12 {
        // limit sqrt(e^lambda - 1) / (pi lambda)
        return lambda.exp_m1().sqrt() / (PI * lambda);
    }
    let b = b_edge(lambda);
    let em = (-lambda).exp();
    let s = ((b - ax).max(0.0) * (b + ax)).sqrt();
    let phi = (2.0 * s * ax).atan2(4.0 * em - 2.0 * x * x);
    phi / (PI * lambda * ax)
}

/// Order-0 limiting density with an explicit plateau switch; the public
/// entry point picks the branch from `lambda`, the transition-point test
/// exercises both.
pub(crate) fn rho0_branch(x: f64, lambda: f64, plateau: bool) -> f64 {
    let ax = x.abs();
    if ax >= 1.0 {
        return 0.0;
    }
    let b = b_edge(lambda);
    let mut val = 0.0;
    if ax <= b {
        val = rho0_bulk(x, lambda);
    }
    if plateau && ax > b {
        val += 1.0 / (lambda * ax);
    }
    val
}

/// Limiting spectral density (order 0). Zero outside `(-1, 1)`; for
/// `lambda <= log 2` also zero outside `(-b, b)`.
pub fn density_rho0(x: f64, lambda: f64) -> f64 {
    rho0_branch(x, lambda, lambda > LN_2)
}

/// The unscaled-variable form of the limiting density with support edge
/// `a(lambda) = b(lambda)/sqrt(lambda)`, kept as an independent code path
/// (raw two-angle difference) for the rescaling cross-check
/// `rho0(x) = a^{-1/2}-style identity`.
pub fn density_hat(y: f64, lambda: f64) -> f64 {
    let sl = lambda.sqrt();
    let ay = y.abs();
    if ay >= 1.0 / sl {
        return 0.0;
    }
    let a = b_edge(lambda) / sl;
    let em = (-lambda).exp();
    let mut val = 0.0;
    if ay <= a {
        if ay < 1e-14 {
            val = sl * lambda.exp_m1().sqrt() / (PI * lambda);
        } else {
            let s2 = 4.0 * (-f64::exp_m1(-lambda)) * em - lambda * y * y;
            let s = s2.max(0.0).sqrt();
            let th1 = s.atan2(2.0 * em - sl * ay);
            let th2 = s.atan2(2.0 * em + sl * ay);
            val = (th1 - th2) / (PI * lambda * ay);
        }
    }
    if lambda > LN_2 && ay > a {
        val += 1.0 / (lambda * ay);
    }
    val
}

/// Wigner semicircle density on [-2, 2].
pub fn semicircle(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

/// |sqrt(lambda) rho0(sqrt(lambda) x) - semicircle(x)|, the continuum-limit
/// discrepancy at one point.
pub fn semicircle_limit_check(lambda: f64, x: f64) -> f64 {
    (lambda.sqrt() * density_rho0(lambda.sqrt() * x, lambda) - semicircle(x)).abs()
}

// ---------------------------------------------------------------------------
// Genus-one correction
// ---------------------------------------------------------------------------

const QUARTIC_NORM: f64 = 0.031_25; // 4^{-5/2}

fn p_cubic(x2: f64, t: f64) -> f64 {
    t * (x2 + 2.0 * t * (1.0 - t))
}

/// ((1 - y)^{-5/2} - 1 - 5y/2) / y^2, computed without cancellation: the
/// binomial series for small y, the direct expression otherwise.
fn pow_m52_tail(y: f64) -> f64 {
    if y.abs() < 0.25 {
        // (1-y)^{-5/2} = sum c_k y^k, c_0 = 1, c_k = c_{k-1} (k + 3/2) / k
        let mut c = 2.5; // c_1
        let mut sum = 0.0;
        let mut ypow = 1.0;
        for k in 2..40 {
            c *= (k as f64 + 1.5) / k as f64;
            sum += c * ypow;
            ypow *= y;
            if (c * ypow).abs() < 1e-18 * sum.abs().max(1.0) {
                break;
            }
        }
        sum
    } else {
        ((1.0 - y).powf(-2.5) - 1.0 - 2.5 * y) / (y * y)
    }
}

/// Hadamard finite part of
/// `int_0^{delta_max} P(d) (D - d)^{-5/2} d^{-5/2} dd`
/// where `P(d) = p0 + p1 d + p2 d^2 + p3 d^3` is the cubic numerator
/// expanded about the singular endpoint and `D` is the distance to the
/// opposite root of the quartic.
///
/// The two divergent endpoint orders are reinstated in closed form as
/// `-(2/3) A0 Delta^{-3/2} - 2 A1 Delta^{-1/2}` with
/// `A0 = p0 D^{-5/2}`, `A1 = (p1 + (5/2) p0 / D) D^{-5/2}`; the remainder is
/// integrated after `d = s^2`, with the subtraction carried out analytically
/// so no digit cancellation occurs near `s = 0`.
fn fp_endpoint(p: [f64; 4], d_big: f64, delta_max: f64) -> Result<f64, SpectralError> {
    let scale = d_big.powf(-2.5);
    let a0 = p[0] * scale;
    let a1 = (p[1] + 2.5 * p[0] / d_big) * scale;
    let finite = -(2.0 / 3.0) * a0 * delta_max.powf(-1.5) - 2.0 * a1 * delta_max.powf(-0.5);
    let integrand = |s: f64| -> f64 {
        let delta = s * s;
        let y = delta / d_big;
        let g = (1.0 - y).powf(-2.5);
        let h2 = pow_m52_tail(y);
        2.0 * scale
            * (p[0] * h2 / (d_big * d_big)
                + 2.5 * p[1] / d_big
                + p[2] * g
                + delta * (p[1] * h2 / (d_big * d_big) + p[3] * g))
    };
    let remainder = adaptive_quad(
        &integrand,
        0.0,
        delta_max.sqrt(),
        1e-12 * (1.0 + finite.abs()),
        1e-10,
    )?;
    Ok(finite + remainder)
}

/// Taylor coefficients of P(t) = t (x^2 + 2t(1-t)) about t0, in the
/// direction `dir` (+1 expands in (t - t0), -1 in (t0 - t)).
fn p_cubic_taylor(x2: f64, t0: f64, dir: f64) -> [f64; 4] {
    let p0 = p_cubic(x2, t0);
    let p1 = x2 + 4.0 * t0 - 6.0 * t0 * t0;
    let p2 = 2.0 - 6.0 * t0;
    let p3 = -2.0;
    [p0, dir * p1, p2, dir * p3]
}

/// Finite part of int_{tau_lo}^{t_end} of the rho1 integrand, singular at
/// tau_lo only.
fn fp_lower(x2: f64, tau_lo: f64, tau_hi: f64, t_end: f64) -> Result<f64, SpectralError> {
    let p = p_cubic_taylor(x2, tau_lo, 1.0);
    fp_endpoint(
        [
            QUARTIC_NORM * p[0],
            QUARTIC_NORM * p[1],
            QUARTIC_NORM * p[2],
            QUARTIC_NORM * p[3],
        ],
        tau_hi - tau_lo,
        t_end - tau_lo,
    )
}

/// Finite part of int_{t_start}^{tau_hi} of the rho1 integrand, singular at
/// tau_hi only.
fn fp_upper(x2: f64, tau_lo: f64, tau_hi: f64, t_start: f64) -> Result<f64, SpectralError> {
    let p = p_cubic_taylor(x2, tau_hi, -1.0);
    fp_endpoint(
        [
            QUARTIC_NORM * p[0],
            QUARTIC_NORM * p[1],
            QUARTIC_NORM * p[2],
            QUARTIC_NORM * p[3],
        ],
        tau_hi - tau_lo,
        tau_hi - t_start,
    )
}

/// Genus-one density correction. Singular exactly at |x| = b(lambda);
/// defined for |x| < 1.
pub fn density_rho1(x: f64, lambda: f64) -> Result<f64, SpectralError> {
    if lambda <= 0.0 {
        return Err(SpectralError::Domain(format!("lambda = {lambda} must be > 0")));
    }
    let ax = x.abs();
    if ax >= 1.0 {
        return Err(SpectralError::Domain(format!("|x| = {ax} outside (-1, 1)")));
    }
    let b = b_edge(lambda);
    if (ax - b).abs() < 1e-12 {
        return Err(SpectralError::SingularPoint { x, lambda });
    }
    let em = (-lambda).exp();
    let u = -f64::exp_m1(-lambda); // 1 - e^{-lambda}
    let x2 = x * x;
    let xs = 0.5 * (1.0 - x2).sqrt();
    let tau_lo = 0.5 - xs;
    let tau_hi = 0.5 + xs;

    let mut val = 0.0;
    if ax < b {
        val -= (1.0 / PI)
            * lambda
            * (em * u / 2.0)
            * (x2 - 2.0 * em)
            * (b * b - x2).powf(-2.5);
    }
    let t_up = u.min(tau_hi);
    if t_up > tau_lo {
        let fp = if u < tau_hi {
            // |x| < b: only the lower endpoint is singular
            fp_lower(x2, tau_lo, tau_hi, t_up)?
        } else {
            // b < |x| < 1 (lambda > log 2): both endpoints singular;
            // split at the symmetry point 1/2
            fp_lower(x2, tau_lo, tau_hi, 0.5)? + fp_upper(x2, tau_lo, tau_hi, 0.5)?
        };
        val -= (1.0 / PI) * (lambda / 3.0) * fp;
    }
    Ok(val)
}

// ---------------------------------------------------------------------------
// Moments of the order-0 density
// ---------------------------------------------------------------------------

/// M0(p, lambda) for real p > -1/2, with M0(0) = 1 by the normalisation
/// convention. Positive p goes through the continued fraction; p in
/// (-1/2, 0) through a gamma-weighted quadrature (all gamma arguments
/// positive).
pub fn m0_real(p: f64, lambda: f64) -> Result<f64, SpectralError> {
    if p <= -0.5 {
        return Err(SpectralError::Domain(format!("p = {p} must be > -1/2")));
    }
    if p == 0.0 {
        return Ok(1.0);
    }
    let x = -f64::exp_m1(-lambda);
    if p > 0.0 {
        Ok(incomplete_beta_reg(x, p + 1.0, p)? / (lambda * p))
    } else {
        // M0 = Gamma(2p+1) / (lambda Gamma(p+1)^2) B_x(p+1, p); substitute
        // t = v^2 so the t^p edge becomes v^{2p+1}, integrable smoothly
        let norm = (ln_gamma(2.0 * p + 1.0) - 2.0 * ln_gamma(p + 1.0)).exp();
        let integral = adaptive_quad(
            &|v: f64| 2.0 * v.powf(2.0 * p + 1.0) * (1.0 - v * v).powf(p - 1.0),
            0.0,
            x.sqrt(),
            1e-13,
            1e-12,
        )?;
        Ok(norm * integral / lambda)
    }
}

/// |int_{-1}^{1} |x|^{2p} rho0 dx - M0(p, lambda)|, the moment-consistency
/// discrepancy. Real p > -1/2 supported; the square-root edge of the bulk is
/// absorbed by x = b sin(theta), and for p < 0 the remaining x^{2p} edge by a
/// further power substitution.
pub fn density_moment_check(p: f64, lambda: f64, tols: &Tolerances) -> Result<f64, SpectralError> {
    if p <= -0.5 {
        return Err(SpectralError::Domain(format!("p = {p} must be > -1/2")));
    }
    let b = b_edge(lambda);
    let quad_abs = tols.quadrature * 1e-2;
    // bulk: 2 int_0^b x^{2p} rho0_bulk dx with x = b sin(theta)
    let bulk_theta = |theta: f64| -> f64 {
        let x = b * theta.sin();
        2.0 * x.powf(2.0 * p) * rho0_bulk(x, lambda) * b * theta.cos()
    };
    let bulk = if p >= 0.0 {
        adaptive_quad(&bulk_theta, 0.0, PI / 2.0, quad_abs, tols.quadrature)?
    } else {
        // theta = tau^m with m(2p+1) >= 2 smooths the theta^{2p} edge
        let m = (2.0 / (2.0 * p + 1.0)).ceil().max(2.0);
        adaptive_quad(
            &|tau: f64| {
                let theta = tau.powf(m) * PI / 2.0;
                bulk_theta(theta) * m * tau.powf(m - 1.0) * PI / 2.0
            },
            0.0,
            1.0,
            quad_abs,
            tols.quadrature,
        )?
    };
    // plateau: 2 int_b^1 x^{2p} / (lambda x) dx in closed form
    let plateau = if lambda > LN_2 && b < 1.0 {
        if p == 0.0 {
            2.0 * (1.0 / b).ln() / lambda
        } else {
            (1.0 - b.powf(2.0 * p)) / (lambda * p)
        }
    } else {
        0.0
    };
    let m0 = m0_real(p, lambda)?;
    Ok((bulk + plateau - m0).abs())
}

// ---------------------------------------------------------------------------
// Sampled profiles
// ---------------------------------------------------------------------------

/// Sampled values of a limiting density on a symmetric grid in (-1, 1).
#[derive(Clone, Debug)]
pub struct DensityProfile {
    pub lambda: f64,
    /// 0 for the limit, 1 for the genus-one correction.
    pub order: u8,
    pub grid: Vec<(f64, f64)>,
    pub support_edge: f64,
    /// True when singular points were masked out of the grid (order 1).
    pub regularized: bool,
}

/// Sample a density profile on `resolution` cell centers of (-1, 1).
/// For order 1 the grid points too close to `±b` are masked off.
pub fn sample_profile(
    lambda: f64,
    order: u8,
    resolution: usize,
) -> Result<DensityProfile, SpectralError> {
    if !(order == 0 || order == 1) {
        return Err(SpectralError::Domain(format!("order {order} not in {{0, 1}}")));
    }
    if resolution < 2 {
        return Err(SpectralError::Domain("resolution must be >= 2".into()));
    }
    let b = b_edge(lambda);
    let mask = (2.0 / resolution as f64).max(1e-6);
    let mut grid = Vec::with_capacity(resolution);
    let mut masked = false;
    for i in 0..resolution {
        let x = -1.0 + 2.0 * (i as f64 + 0.5) / resolution as f64;
        if order == 1 {
            if (x.abs() - b).abs() < mask {
                masked = true;
                continue;
            }
            grid.push((x, density_rho1(x, lambda)?));
        } else {
            grid.push((x, density_rho0(x, lambda)));
        }
    }
    Ok(DensityProfile {
        lambda,
        order,
        grid,
        support_edge: b,
        regularized: masked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_values() {
        // b(log 2) = 1 exactly
        assert_eq!(b_edge(LN_2), 1.0);
        // b is maximal at log 2 and below 1 elsewhere
        assert!(b_edge(0.3) < 1.0);
        assert!(b_edge(2.0) < 1.0);
    }

    #[test]
    fn rho0_center_value() {
        for &lambda in &[0.3, LN_2, 2.0] {
            let want = lambda.exp_m1().sqrt() / (PI * lambda);
            assert!((density_rho0(0.0, lambda) - want).abs() < 1e-14);
            // the atan2 route approaches the same limit
            assert!(
                (density_rho0(1e-9, lambda) - want).abs() < 1e-9 * want,
                "lambda = {lambda}"
            );
        }
    }

    #[test]
    fn plateau_form_and_continuity() {
        let lambda = 2.0;
        let b = b_edge(lambda);
        for &x in &[b + 0.01, 0.5 * (b + 1.0), 0.99] {
            assert!((density_rho0(x, lambda) - 1.0 / (lambda * x)).abs() < 1e-14);
        }
        // continuity across the edge for lambda > log 2
        let eps = 1e-8;
        let inside = density_rho0(b - eps, lambda);
        let outside = density_rho0(b + eps, lambda);
        assert!(
            (inside - outside).abs() < 1e-3,
            "jump at b: {inside} vs {outside}"
        );
        // and the exact edge value matches the plateau limit
        assert!((density_rho0(b, lambda) - 1.0 / (lambda * b)).abs() < 1e-10);
    }

    #[test]
    fn vanishing_outside_support() {
        assert_eq!(density_rho0(1.2, 0.5), 0.0);
        // lambda < log 2: zero between b and 1
        let lambda = 0.3;
        let b = b_edge(lambda);
        assert_eq!(density_rho0(0.5 * (b + 1.0), lambda), 0.0);
    }

    #[test]
    fn transition_point_branches_agree() {
        for &x in &[0.0, 0.2, -0.7, 0.97, 0.999] {
            let lo = rho0_branch(x, LN_2, false);
            let hi = rho0_branch(x, LN_2, true);
            assert_eq!(lo, hi, "x = {x}");
        }
    }

    #[test]
    fn evenness_and_nonnegativity_on_grid() {
        for &lambda in &[0.3, LN_2, 2.0] {
            for i in 0..=2000 {
                let x = -1.0 + 2.0 * i as f64 / 2000.0;
                let v = density_rho0(x, lambda);
                assert!(v >= 0.0, "negative density at x={x} lambda={lambda}");
                let w = density_rho0(-x, lambda);
                assert!((v - w).abs() < 1e-15, "odd part at x={x}");
            }
        }
    }

    #[test]
    fn hat_rescaling_identity() {
        // rho0(x) = lambda^{-1/2} rho_hat(x / sqrt(lambda))
        for &lambda in &[0.3, 1.0, 2.0] {
            for &x in &[0.05, 0.3, 0.6, 0.9, 0.95] {
                let lhs = density_rho0(x, lambda);
                let rhs = density_hat(x / lambda.sqrt(), lambda) / lambda.sqrt();
                assert!(
                    (lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0),
                    "x={x} lambda={lambda}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn semicircle_values() {
        assert!((semicircle(0.0) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(semicircle(2.0), 0.0);
        assert_eq!(semicircle(-2.0), 0.0);
        // continuum limit of rho0
        for &x in &[0.0, 1.0, -1.0, 1.9, -1.9] {
            assert!(semicircle_limit_check(1e-3, x) < 1e-2, "x = {x}");
        }
    }

    #[test]
    fn normalization_and_low_moments() {
        let tols = Tolerances::default();
        for &lambda in &[0.3, LN_2, 2.0] {
            let d0 = density_moment_check(0.0, lambda, &tols).unwrap();
            assert!(d0 < 1e-10, "normalization off by {d0} at lambda={lambda}");
            for p in 1..=6u32 {
                let d = density_moment_check(p as f64, lambda, &tols).unwrap();
                assert!(d < 1e-8, "p={p} lambda={lambda}: {d}");
            }
        }
        // p = 2, lambda = log 2: M0 = 5 / (32 log 2) via I_{1/2}(3,2) = 5/16
        let m0 = m0_real(2.0, LN_2).unwrap();
        assert!((m0 - 5.0 / (32.0 * LN_2)).abs() < 1e-14);
    }

    #[test]
    fn fractional_moment_carlson_extension() {
        let tols = Tolerances::default();
        for &p in &[-0.25, 0.5, 1.5] {
            let d = density_moment_check(p, LN_2, &tols).unwrap();
            assert!(d < 1e-6, "p={p}: {d}");
        }
        assert!(density_moment_check(-0.5, 1.0, &tols).is_err());
    }

    #[test]
    fn rho1_evenness_and_errors() {
        for &(x, lambda) in &[(0.3f64, 0.5f64), (0.55, 1.0), (0.8, 2.0)] {
            let a = density_rho1(x, lambda).unwrap();
            let b = density_rho1(-x, lambda).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "x={x}");
        }
        let lambda = 2.0;
        let b = b_edge(lambda);
        assert!(matches!(
            density_rho1(b, lambda).unwrap_err(),
            SpectralError::SingularPoint { .. }
        ));
        assert!(density_rho1(1.5, lambda).is_err());
        assert!(density_rho1(0.1, -1.0).is_err());
    }

    #[test]
    fn rho1_vanishes_on_gap_for_small_lambda() {
        let lambda = 0.3;
        let b = b_edge(lambda);
        let x = 0.5 * (b + 1.0);
        let v = density_rho1(x, lambda).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn rho1_vanishes_on_plateau() {
        // for lambda > log 2 and b < |x| < 1 the finite part runs over the
        // whole interval between the quartic roots; term by term it
        // continues to B(k - 3/2, -3/2) = 0, so the correction is exactly
        // zero there and the evaluator must reproduce that up to rounding
        for &lambda in &[1.0f64, 1.5, 2.0] {
            let b = b_edge(lambda);
            for frac in [0.15, 0.5, 0.9] {
                let x = b + frac * (1.0 - b);
                let v = density_rho1(x, lambda).unwrap();
                assert!(v.abs() < 1e-8, "lambda={lambda} x={x}: {v}");
            }
        }
    }

    #[test]
    fn rho1_small_lambda_limit() {
        // sqrt(lambda) rho1(sqrt(lambda) x) -> (1/pi) (4 - x^2)^{-5/2}
        let lambda = 1e-2f64;
        let x = 1.0;
        let got = lambda.sqrt() * density_rho1(lambda.sqrt() * x, lambda).unwrap();
        let want = (1.0 / PI) * (4.0f64 - 1.0).powf(-2.5);
        assert!(
            ((got - want) / want).abs() < 0.03,
            "{got} vs {want} (rel {})",
            ((got - want) / want).abs()
        );
    }

    #[test]
    fn rho1_sign_at_center_small_lambda() {
        // the closed term dominates and is positive at x = 0 as lambda -> 0
        let v = density_rho1(0.0, 0.05).unwrap();
        assert!(v > 0.0);
    }

    #[test]
    fn profile_sampling() {
        let p0 = sample_profile(0.3, 0, 101).unwrap();
        assert_eq!(p0.grid.len(), 101);
        assert!(!p0.regularized);
        let p1 = sample_profile(2.0, 1, 101).unwrap();
        assert!(p1.regularized);
        assert!(p1.grid.len() < 101);
        assert!(p1.grid.iter().all(|(x, v)| x.abs() < 1.0 && v.is_finite()));
    }
}
