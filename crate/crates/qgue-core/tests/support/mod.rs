//! Shared test oracles, independent of the library's evaluation paths.

use std::f64::consts::PI;

/// Independent genus-one density evaluator: the Hadamard finite part is
/// taken by analytic continuation in the exponent (two integrations by
/// parts move the `-5/2` endpoint power to an integrable `-1/2`, dropping
/// the continued-away boundary terms), and the leftover smooth integral is
/// done by plain composite Simpson rather than the library quadrature.
pub fn rho1_oracle(x: f64, lambda: f64) -> f64 {
    let em = (-lambda).exp();
    let u = 1.0 - em;
    let x2 = x * x;
    let b2 = 4.0 * em * u;
    let xs = 0.5 * (1.0 - x2).sqrt();
    let (tau_lo, tau_hi) = (0.5 - xs, 0.5 + xs);

    let mut val = 0.0;
    if x2 < b2 {
        val -= (1.0 / PI) * lambda * (em * u / 2.0) * (x2 - 2.0 * em) * (b2 - x2).powf(-2.5);
    }
    let t_up = u.min(tau_hi);
    if t_up > tau_lo {
        let fp = if u < tau_hi {
            ibp_lower(x2, tau_lo, tau_hi, t_up)
        } else {
            ibp_lower(x2, tau_lo, tau_hi, 0.5) + ibp_upper(x2, tau_lo, tau_hi, 0.5)
        };
        val -= (1.0 / PI) * (lambda / 3.0) * fp;
    }
    val
}

const C: f64 = 0.03125; // 4^{-5/2}

fn p0(x2: f64, t: f64) -> f64 {
    t * (x2 + 2.0 * t * (1.0 - t))
}
fn p1(x2: f64, t: f64) -> f64 {
    x2 + 4.0 * t - 6.0 * t * t
}
fn p2(t: f64) -> f64 {
    4.0 - 12.0 * t
}

/// w, w', w'' for w(t) = C P(t) (tau_hi - t)^{-5/2}.
fn w_lo(x2: f64, tau_hi: f64, t: f64) -> (f64, f64, f64) {
    let d = tau_hi - t;
    let g = d.powf(-2.5);
    let w = C * p0(x2, t) * g;
    let w1 = C * g * (p1(x2, t) + 2.5 * p0(x2, t) / d);
    let w2 = C * g * (p2(t) + 5.0 * p1(x2, t) / d + 8.75 * p0(x2, t) / (d * d));
    (w, w1, w2)
}

/// v, v', v'' for v(t) = C P(t) (t - tau_lo)^{-5/2}.
fn v_hi(x2: f64, tau_lo: f64, t: f64) -> (f64, f64, f64) {
    let e = t - tau_lo;
    let g = e.powf(-2.5);
    let v = C * p0(x2, t) * g;
    let v1 = C * g * (p1(x2, t) - 2.5 * p0(x2, t) / e);
    let v2 = C * g * (p2(t) - 5.0 * p1(x2, t) / e + 8.75 * p0(x2, t) / (e * e));
    (v, v1, v2)
}

/// FP int_{tau_lo}^{t_end} w(t) (t - tau_lo)^{-5/2} dt
///  = -(2/3) w(T) D^{-3/2} - (4/3) w'(T) D^{-1/2}
///    + (4/3) int w''(t) (t - tau_lo)^{-1/2} dt.
fn ibp_lower(x2: f64, tau_lo: f64, tau_hi: f64, t_end: f64) -> f64 {
    let delta = t_end - tau_lo;
    let (w, w1, _) = w_lo(x2, tau_hi, t_end);
    let boundary = -(2.0 / 3.0) * w * delta.powf(-1.5) - (4.0 / 3.0) * w1 * delta.powf(-0.5);
    // t = tau_lo + s^2 turns the -1/2 power into 2 ds
    let integral = simpson(
        |s| {
            let (_, _, w2) = w_lo(x2, tau_hi, tau_lo + s * s);
            2.0 * w2
        },
        0.0,
        delta.sqrt(),
        20_000,
    );
    boundary + (4.0 / 3.0) * integral
}

/// FP int_{t_start}^{tau_hi} v(t) (tau_hi - t)^{-5/2} dt
///  = -(2/3) v(m) D^{-3/2} + (4/3) v'(m) D^{-1/2}
///    + (4/3) int v''(t) (tau_hi - t)^{-1/2} dt.
fn ibp_upper(x2: f64, tau_lo: f64, tau_hi: f64, t_start: f64) -> f64 {
    let delta = tau_hi - t_start;
    let (v, v1, _) = v_hi(x2, tau_lo, t_start);
    let boundary = -(2.0 / 3.0) * v * delta.powf(-1.5) + (4.0 / 3.0) * v1 * delta.powf(-0.5);
    let integral = simpson(
        |s| {
            let (_, _, v2) = v_hi(x2, tau_lo, tau_hi - s * s);
            2.0 * v2
        },
        0.0,
        delta.sqrt(),
        20_000,
    );
    boundary + (4.0 / 3.0) * integral
}

/// Composite Simpson on 2n panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let m = 2 * n;
    let h = (b - a) / m as f64;
    let mut sum = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}
