//! Two-term large-N expansion of the scaled moments under `q = e^{-lambda/N}`:
//! `q^p m_{N,2p} = M0 N + M1/N + O(1/N^3)`, with both coefficients carried
//! by the regularised incomplete beta at `x = 1 - e^{-lambda}`.

use super::beta::incomplete_beta_reg;
use super::SpectralError;
use crate::moments::qgue::scaled_moment;

/// The pair (M_{2p,0}, M_{2p,1}) at a given order and scaling parameter.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticCoeffs {
    pub p: u32,
    pub lambda: f64,
    pub m0: f64,
    pub m1: f64,
}

/// (2p-1)! / (p! (p-1)!) in f64, exact for the small p used here.
fn central_factor(p: u32) -> f64 {
    let mut v = 1.0f64;
    for k in 1..=(2 * p - 1) {
        v *= k as f64;
    }
    for k in 1..=p {
        v /= k as f64;
    }
    for k in 1..p {
        v /= k as f64;
    }
    v
}

/// M0 = I_{1-e^{-lambda}}(p+1, p) / (lambda p);
/// M1 = -(lambda p / 6) [ I_{1-e^{-lambda}}(p+1, p)
///   + (2p-1)!/(p!(p-1)!) e^{-p lambda} (1-e^{-lambda})^{p-1}
///     (2 + p - (2p+1) e^{-lambda}) ].
pub fn asym_coeffs(p: u32, lambda: f64) -> Result<AsymptoticCoeffs, SpectralError> {
    if p == 0 || lambda <= 0.0 {
        return Err(SpectralError::Domain(format!(
            "asymptotic coefficients need p >= 1, lambda > 0; got p = {p}, lambda = {lambda}"
        )));
    }
    let em = (-lambda).exp();
    let x = -f64::exp_m1(-lambda); // 1 - e^{-lambda} without cancellation
    let ibeta = incomplete_beta_reg(x, p as f64 + 1.0, p as f64)?;
    let m0 = ibeta / (lambda * p as f64);
    let bulk = central_factor(p)
        * (-(p as f64) * lambda).exp()
        * x.powi(p as i32 - 1)
        * (2.0 + p as f64 - (2.0 * p as f64 + 1.0) * em);
    let m1 = -(lambda * p as f64 / 6.0) * (ibeta + bulk);
    Ok(AsymptoticCoeffs { p, lambda, m0, m1 })
}

/// The continuum-limit pair of Thm-level checks:
/// returns `(M0 / lambda^p, lambda^{-p} [ (27p-1)p/24 lambda^2 M0 + M1 ])`,
/// which tend to E_0(p) = C_p and E_1(p) as lambda -> 0.
pub fn continuum_limit_check(p: u32, lambda: f64) -> Result<(f64, f64), SpectralError> {
    let c = asym_coeffs(p, lambda)?;
    let lam_p = lambda.powi(p as i32);
    let first = c.m0 / lam_p;
    let combo = (27.0 * p as f64 - 1.0) * p as f64 / 24.0 * lambda * lambda * c.m0 + c.m1;
    Ok((first, combo / lam_p))
}

/// E(N) = |q^p m_{N,2p} - M0 N - M1/N| at q = e^{-lambda/N}.
pub fn convergence_error(n: usize, p: u32, lambda: f64) -> Result<f64, SpectralError> {
    let c = asym_coeffs(p, lambda)?;
    let scaled = scaled_moment(n, p as usize, lambda);
    Ok((scaled - c.m0 * n as f64 - c.m1 / n as f64).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_closed_forms() {
        for &lambda in &[0.3, 1.0, 2.0] {
            let c = asym_coeffs(1, lambda).unwrap();
            let em = (-lambda).exp();
            // M0 = (1 - e^{-lambda})^2 / lambda
            let want0 = (1.0 - em).powi(2) / lambda;
            assert!((c.m0 - want0).abs() < 1e-14 * want0, "lambda = {lambda}");
            // M1 = -(lambda/6)(1 + e^{-lambda} - 2 e^{-2 lambda})
            let want1 = -(lambda / 6.0) * (1.0 + em - 2.0 * em * em);
            assert!((c.m1 - want1).abs() < 1e-14 * want1.abs(), "lambda = {lambda}");
        }
    }

    #[test]
    fn small_lambda_catalan_limit() {
        // M0 lambda^{-p} -> C_p
        let catalan = [1.0, 1.0, 2.0, 5.0, 14.0, 42.0];
        for p in 1..=5u32 {
            let c = asym_coeffs(p, 1e-4).unwrap();
            let got = c.m0 / 1e-4f64.powi(p as i32);
            let want = catalan[p as usize];
            assert!(
                ((got - want) / want).abs() < 1e-3,
                "p = {p}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn continuum_limit_pairs() {
        // (p=2, lambda=1e-3) -> (~2, ~1)
        let (e0, e1) = continuum_limit_check(2, 1e-3).unwrap();
        assert!((e0 - 2.0).abs() < 1e-2);
        assert!((e1 - 1.0).abs() < 1e-2);
        // (p=3, lambda=1e-3) -> (~5, ~10)
        let (e0, e1) = continuum_limit_check(3, 1e-3).unwrap();
        assert!((e0 - 5.0).abs() < 1e-2 * 5.0);
        assert!((e1 - 10.0).abs() < 1e-2 * 10.0);
        // p = 1: second component vanishes as O(lambda)
        let (_, e1) = continuum_limit_check(1, 1e-3).unwrap();
        assert!(e1.abs() < 1e-2);
    }

    #[test]
    fn two_term_expansion_converges_at_cubic_rate() {
        for &p in &[1u32, 3] {
            for &lambda in &[0.3, 2.0] {
                let e100 = convergence_error(100, p, lambda).unwrap();
                let e200 = convergence_error(200, p, lambda).unwrap();
                assert!(
                    e100 / e200 >= 6.0,
                    "p={p} lambda={lambda}: ratio {}",
                    e100 / e200
                );
            }
        }
    }

    #[test]
    fn domain_guard() {
        assert!(asym_coeffs(0, 1.0).is_err());
        assert!(asym_coeffs(2, 0.0).is_err());
    }
}
