//! Adaptive Gauss–Kronrod 15(7) quadrature with interval bisection.

use super::SpectralError;

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_9,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_69,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// One GK15 panel: returns (integral, error estimate).
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut result_gauss = WG[3] * fc;
    let mut result_kronrod = WGK[7] * fc;
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let fsum = f(center - dx) + f(center + dx);
        result_kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            result_gauss += WG[i / 2] * fsum;
        }
    }
    let integral = result_kronrod * half;
    let err = ((result_kronrod - result_gauss) * half).abs();
    (integral, err)
}

const MAX_DEPTH: usize = 52;

fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    depth: usize,
) -> Result<f64, SpectralError> {
    let (val, err) = gk15(f, a, b);
    if err <= abs_tol.max(rel_tol * val.abs()) || b - a < 1e-15 * (a.abs() + b.abs() + 1.0) {
        if err.is_nan() || val.is_nan() {
            return Err(SpectralError::NonConvergence(format!(
                "NaN integrand on [{a}, {b}]"
            )));
        }
        return Ok(val);
    }
    if depth >= MAX_DEPTH {
        return Err(SpectralError::NonConvergence(format!(
            "quadrature depth exhausted on [{a}, {b}], err {err:e}"
        )));
    }
    let mid = 0.5 * (a + b);
    let left = adapt(f, a, mid, 0.5 * abs_tol, rel_tol, depth + 1)?;
    let right = adapt(f, mid, b, 0.5 * abs_tol, rel_tol, depth + 1)?;
    Ok(left + right)
}

/// Integrate `f` over `[a, b]` to the requested absolute/relative accuracy.
pub fn adaptive_quad(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64, SpectralError> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return adaptive_quad(f, b, a, abs_tol, rel_tol).map(|v| -v);
    }
    adapt(f, a, b, abs_tol, rel_tol, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = adaptive_quad(&|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12, 1e-12).unwrap();
        // antiderivative x^4/4 - x^2 + x
        let want = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!((v - want).abs() < 1e-10);
    }

    #[test]
    fn oscillatory() {
        let v = adaptive_quad(&|x: f64| (10.0 * x).sin(), 0.0, std::f64::consts::PI, 1e-13, 1e-13)
            .unwrap();
        let want = (1.0 - (10.0 * std::f64::consts::PI).cos()) / 10.0;
        assert!((v - want).abs() < 1e-11);
    }

    #[test]
    fn sqrt_edge_after_substitution() {
        // int_0^1 dx / sqrt(x) = 2, via x = u^2
        let v = adaptive_quad(&|_u: f64| 2.0, 0.0, 1.0, 1e-13, 1e-13).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        // and the raw sqrt integrand still converges adaptively
        let v = adaptive_quad(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-12, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn reversed_limits_negate() {
        let a = adaptive_quad(&|x: f64| x.exp(), 0.0, 1.0, 1e-12, 1e-12).unwrap();
        let b = adaptive_quad(&|x: f64| x.exp(), 1.0, 0.0, 1e-12, 1e-12).unwrap();
        assert!((a + b).abs() < 1e-14);
    }
}
