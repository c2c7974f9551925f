//! Discrete q-Hermite weight, Jackson q-integrals, and the finite-N lattice
//! density on the q-lattice `±q^k`.

use crate::qcore::qfuncs::{q_pochhammer_f64, PochhammerOrder};

use super::SpectralError;

/// Discrete q-Hermite weight
/// `w(x) = (qx, -qx; q)_inf / (q, -1, -q; q)_inf`,
/// positive on the lattice `±q^k`. Each infinite product is truncated with
/// tail below `tol / 5`.
pub fn weight_dh(x: f64, q: f64, tol: f64) -> Result<f64, SpectralError> {
    if !(0.0 < q && q < 1.0) {
        return Err(SpectralError::Domain(format!("q = {q} outside (0, 1)")));
    }
    let part = tol / 5.0;
    let inf = PochhammerOrder::Infinite;
    let num =
        q_pochhammer_f64(q * x, q, inf, part)? * q_pochhammer_f64(-q * x, q, inf, part)?;
    let den = q_pochhammer_f64(q, q, inf, part)?
        * q_pochhammer_f64(-1.0, q, inf, part)?
        * q_pochhammer_f64(-q, q, inf, part)?;
    Ok(num / den)
}

/// Jackson q-integral over `[a, b]`:
/// `int_0^alpha f d_q x = (1-q) sum_{k=0}^{K} alpha q^k f(alpha q^k)`,
/// and `int_a^b = int_0^b - int_0^a`.
pub fn jackson_integral(f: impl Fn(f64) -> f64, a: f64, b: f64, q: f64, k_max: usize) -> f64 {
    let half = |alpha: f64| -> f64 {
        if alpha == 0.0 {
            return 0.0;
        }
        let mut sum = 0.0;
        let mut comp = 0.0;
        let mut aqk = alpha;
        for _ in 0..=k_max {
            let term = aqk * f(aqk);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            aqk *= q;
        }
        (1.0 - q) * sum
    };
    half(b) - half(a)
}

/// One lattice point of the finite-N density.
#[derive(Clone, Copy, Debug)]
pub struct LatticeRow {
    pub k: usize,
    /// Signed lattice point `x = ±q^k`.
    pub x: f64,
    pub weight: f64,
    pub density: f64,
}

/// Finite-N spectral density sampled on the lattice `±q^k`, `k = 0..=K`.
#[derive(Clone, Debug)]
pub struct LatticeDensity {
    pub n: usize,
    pub q: f64,
    /// Rows ordered by k, the `+q^k` point before the `-q^k` point.
    pub rows: Vec<LatticeRow>,
    pub truncation: usize,
    /// Estimated mass dropped beyond `K` in the Jackson normalisation sum.
    pub tail_bound: f64,
}

impl LatticeDensity {
    /// Jackson integral of `|x|^{2p}` against the stored density.
    pub fn jackson_moment(&self, p: usize) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for row in &self.rows {
            // measure factor |x| q^0 relative weight: the Jackson sum over
            // both signs carries (1-q) q^k per point
            let term = row.x.abs().powi(2 * p as i32 + 1) * row.density;
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        (1.0 - self.q) * sum
    }

    /// Normalisation = p = 0 moment; should equal N.
    pub fn normalization(&self) -> f64 {
        self.jackson_moment(0)
    }
}

/// `rho_N` on the lattice via the orthonormal-polynomial sum
/// `rho_N(x) = w(x)/(1-q) sum_{j<N} H_j(x;q)^2 / ((q;q)_j q^{j(j-1)/2})`,
/// with `H_j` evaluated by its three-term recurrence.
pub fn lattice_density(
    n: usize,
    q: f64,
    k_max: usize,
    tol: f64,
) -> Result<LatticeDensity, SpectralError> {
    if !(0.0 < q && q < 1.0) {
        return Err(SpectralError::Domain(format!("q = {q} outside (0, 1)")));
    }
    if n == 0 {
        return Err(SpectralError::Domain("N must be >= 1".into()));
    }
    // norms (q;q)_j q^{j(j-1)/2}
    let mut norms = Vec::with_capacity(n);
    let mut poch = 1.0;
    for j in 0..n {
        if j > 0 {
            poch *= 1.0 - q.powi(j as i32);
        }
        norms.push(poch * q.powi((j * (j.max(1) - 1) / 2) as i32));
    }
    let density_at = |x: f64| -> Result<f64, SpectralError> {
        let w = weight_dh(x, q, tol * 1e-3)?;
        // H_{j+1} = x H_j - q^{j-1} (1 - q^j) H_{j-1}
        let mut h_prev = 0.0f64;
        let mut h = 1.0f64;
        let mut sum = 0.0f64;
        for (j, nj) in norms.iter().enumerate() {
            sum += h * h / nj;
            let lam = if j >= 1 {
                q.powi(j as i32 - 1) * (1.0 - q.powi(j as i32))
            } else {
                0.0
            };
            let next = x * h - lam * h_prev;
            h_prev = h;
            h = next;
        }
        Ok(w / (1.0 - q) * sum)
    };

    let mut rows = Vec::with_capacity(2 * (k_max + 1));
    for k in 0..=k_max {
        let xk = q.powi(k as i32);
        for x in [xk, -xk] {
            let weight = weight_dh(x, q, tol * 1e-3)?;
            let density = density_at(x)?;
            rows.push(LatticeRow { k, x, weight, density });
        }
    }
    // geometric tail estimate: the density has a finite limit at x -> 0, so
    // the dropped normalisation mass is about q^{K+1} times the last
    // per-point values
    let last_pair: f64 = rows[rows.len() - 2].density + rows[rows.len() - 1].density;
    let tail_bound = q.powi(k_max as i32 + 1) * last_pair;
    if tail_bound > tol {
        return Err(SpectralError::TailBound { bound: tail_bound, tol });
    }
    Ok(LatticeDensity { n, q, rows, truncation: k_max, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::qgue::qgue_moment_positive;
    use crate::qcore::poly::QPoly;
    use crate::qcore::qfuncs::q_pochhammer_sym;

    #[test]
    fn weight_at_one_closed_form() {
        // w(1) = 1 / (2 (-q; q)_inf), both sides computed independently
        for &q in &[0.3, 0.5, 0.8] {
            let lhs = weight_dh(1.0, q, 1e-13).unwrap();
            let denom =
                q_pochhammer_f64(-q, q, PochhammerOrder::Infinite, 1e-15).unwrap();
            let rhs = 1.0 / (2.0 * denom);
            assert!((lhs - rhs).abs() < 1e-12 * rhs, "q = {q}");
        }
    }

    #[test]
    fn jackson_of_x_over_unit_interval() {
        // int_0^1 x d_q x = 1 / (1 + q)
        for &q in &[0.3, 0.5, 0.9] {
            let v = jackson_integral(|x| x, 0.0, 1.0, q, 2000);
            assert!((v - 1.0 / (1.0 + q)).abs() < 1e-12, "q = {q}");
        }
    }

    #[test]
    fn weight_even_moments() {
        // int_{-1}^{1} x^{2p} w d_q x = (1-q)(q; q^2)_p
        for &q in &[0.3, 0.5] {
            for p in 0..=3usize {
                let f = |x: f64| x.powi(2 * p as i32) * weight_dh(x, q, 1e-14).unwrap();
                let got = jackson_integral(f, -1.0, 1.0, q, 400);
                let want = (1.0 - q)
                    * q_pochhammer_sym(&QPoly::q(), 2, p as u64).eval_f64(q);
                assert!(
                    (got - want).abs() < 1e-12 * want.max(1e-12),
                    "q={q} p={p}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn rescaling_identity() {
        // int_{-1}^1 f d_q x = (1/a) int_{-a}^{a} f(x/a) d_q x
        let q = 0.4;
        let f = |x: f64| x * x + 0.5 * x + 1.0;
        let lhs = jackson_integral(f, -1.0, 1.0, q, 500);
        let a = 2.5;
        let rhs = jackson_integral(|x| f(x / a), -a, a, q, 500) / a;
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn single_polynomial_density_is_weight() {
        let q = 0.5;
        let ld = lattice_density(1, q, 120, 1e-10).unwrap();
        for row in &ld.rows {
            let want = row.weight / (1.0 - q);
            assert!((row.density - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn normalization_and_moments() {
        for &(n, q) in &[(1usize, 0.5f64), (2, 0.5), (4, 0.5), (3, 0.3), (4, 0.3)] {
            let ld = lattice_density(n, q, 160, 1e-11).unwrap();
            assert!(
                (ld.normalization() - n as f64).abs() < 1e-10,
                "normalization N={n} q={q}: {}",
                ld.normalization()
            );
            for p in 1..=3usize {
                let got = ld.jackson_moment(p);
                // m_{N,2p} = (1-q)^p mhat_{N,2p}
                let want = (1.0 - q).powi(p as i32)
                    * qgue_moment_positive(n, p).eval_f64(q);
                assert!(
                    (got - want).abs() < 1e-10 * want.max(1.0),
                    "moment N={n} q={q} p={p}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn tail_bound_violation_reported() {
        let err = lattice_density(4, 0.5, 3, 1e-12).unwrap_err();
        assert!(matches!(err, SpectralError::TailBound { .. }), "{err:?}");
    }
}
