//! Complex-arithmetic kernel shared by every evaluator: the Gaussian error
//! function, fixed-node line quadrature, and truncation-policy selection.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const TWO_PI: f64 = 2.0 * PI;

/// e^{2 pi i x}
#[inline]
pub fn e2pi(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, TWO_PI) * x).exp()
}

/// A point tau in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularPoint {
    tau: Complex64,
}

impl ModularPoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::Domain(format!("tau = {tau} is not finite")));
        }
        if tau.im <= 0.0 {
            return Err(Error::Domain(format!("Im tau = {} must be positive", tau.im)));
        }
        Ok(ModularPoint { tau })
    }

    #[inline]
    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// The nome q = e^{2 pi i tau}, |q| < 1.
    #[inline]
    pub fn nome(&self) -> Complex64 {
        e2pi(self.tau)
    }

    #[inline]
    pub fn im(&self) -> f64 {
        self.tau.im
    }

    /// q^x = e^{2 pi i tau x} for arbitrary complex exponent; branch-free.
    #[inline]
    pub fn q_pow(&self, x: Complex64) -> Complex64 {
        (Complex64::new(0.0, TWO_PI) * self.tau * x).exp()
    }

    /// tau -> -1/tau.
    pub fn s_transform(&self) -> ModularPoint {
        ModularPoint::new(-self.tau.inv()).expect("S preserves the upper half-plane")
    }

    /// tau -> tau + 1.
    pub fn t_transform(&self) -> ModularPoint {
        ModularPoint::new(self.tau + 1.0).expect("T preserves the upper half-plane")
    }

    /// tau -> c*tau for real c > 0.
    pub fn scale(&self, c: f64) -> ModularPoint {
        ModularPoint::new(self.tau * c).expect("positive scaling preserves the upper half-plane")
    }
}

/// Principal branch square root of -i*tau (used by every S-transformation law).
pub fn sqrt_minus_i_tau(tau: Complex64) -> Complex64 {
    (Complex64::new(0.0, -1.0) * tau).sqrt()
}

/// Truncation and quadrature parameters governing every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolicy {
    /// Baseline summation bound; evaluators may enlarge it from tail bounds
    /// but never go below it.
    pub trunc_radius: usize,
    /// Target absolute tail error.
    pub tol: f64,
    /// Minimum admissible distance from known pole loci, in the z-plane.
    pub pole_guard: f64,
    /// Half-width of the truncated real-line contour.
    pub quad_halfwidth: f64,
    /// Quadrature node count.
    pub quad_nodes: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        // quad_halfwidth is a floor; the actual window also adapts to the
        // integrand's declared decay so the Gaussian factor is < 1e-16 at the
        // endpoints.
        SeriesPolicy {
            trunc_radius: 1,
            tol: 1e-12,
            pole_guard: 1e-3,
            quad_halfwidth: 4.0,
            quad_nodes: 512,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.trunc_radius < 1 {
            return Err(Error::Domain("trunc_radius must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain("tol must be positive".into()));
        }
        if !(self.pole_guard > 0.0) {
            return Err(Error::Domain("pole_guard must be positive".into()));
        }
        if !(self.quad_halfwidth > 0.0) {
            return Err(Error::Domain("quad_halfwidth must be positive".into()));
        }
        if self.quad_nodes < 16 {
            return Err(Error::Domain("quad_nodes must be >= 16".into()));
        }
        Ok(())
    }

    /// Policy with trunc_radius and quad_nodes doubled (refinement checks).
    pub fn refined(&self) -> SeriesPolicy {
        SeriesPolicy {
            trunc_radius: self.trunc_radius * 2,
            quad_nodes: self.quad_nodes * 2,
            ..*self
        }
    }
}

/// The odd entire function E(x) = 2 int_0^x e^{-pi u^2} du = erf(sqrt(pi) x).
pub fn gauss_error(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gauss_error argument {x} not finite")));
    }
    Ok(libm::erf(PI.sqrt() * x))
}

/// 1 - E(x) = erfc(sqrt(pi) x), stable for large positive x.
pub fn gauss_error_c(x: f64) -> f64 {
    libm::erfc(PI.sqrt() * x)
}

/// Gaussian decay profile of a line integrand, declared by the caller:
/// |f(x)| <= C exp(-rate*(x-center)^2) for large |x| on the contour.
#[derive(Debug, Clone, Copy)]
pub struct GaussianDecay {
    pub rate: f64,
    pub center: f64,
}

impl GaussianDecay {
    /// Half-width at which the decay factor drops below 1e-16 relative to
    /// the peak, widened a little for the algebraic prefactors.
    fn halfwidth(&self) -> f64 {
        self.center.abs() + (40.0 / self.rate).sqrt()
    }
}

/// Approximates `int_{R + i s} f(x) dx` by the trapezoid rule on
/// `[-X, X] + i s`.  For entire integrands with Gaussian decay the trapezoid
/// rule converges geometrically in the node count, so no adaptivity is used.
pub fn contour_integral<F>(
    mut f: F,
    s: f64,
    decay: GaussianDecay,
    policy: &SeriesPolicy,
) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    policy.validate()?;
    if !(decay.rate > 0.0) {
        return Err(Error::Domain("integrand decay rate must be positive".into()));
    }
    let half = decay.halfwidth().max(policy.quad_halfwidth);
    let n = policy.quad_nodes;
    let h = 2.0 * half / (n as f64 - 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let x = Complex64::new(-half + h * i as f64, s);
        let v = f(x);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Evaluation { node: x });
        }
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        acc += v * w;
    }
    Ok(acc * h)
}

/// Smallest N >= 1 with abs_q^(weight * N^2) < tol * (1 - abs_q).
pub fn choose_truncation(abs_q: f64, quadratic_weight: f64, tol: f64) -> Result<usize> {
    if !(abs_q > 0.0 && abs_q < 1.0) {
        return Err(Error::Domain(format!("|q| = {abs_q} must lie in (0,1)")));
    }
    if !(quadratic_weight > 0.0) {
        return Err(Error::Domain("quadratic weight must be positive".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tol must be positive".into()));
    }
    let target = tol * (1.0 - abs_q);
    let ln_q = abs_q.ln(); // negative
    let mut n = ((target.ln() / (quadratic_weight * ln_q)).max(0.0)).sqrt().ceil() as usize;
    n = n.max(1);
    while (quadratic_weight * (n * n) as f64 * ln_q).exp() >= target {
        n += 1;
        if n > 1_000_000 {
            return Err(Error::Domain("truncation bound exceeds 1e6 terms".into()));
        }
    }
    Ok(n)
}

/// Smallest N such that for all |n| >= N,
/// exp(-2 pi (kappa * Im(tau) * n^2 - linear * |n|)) < tol, i.e. the
/// summation bound for theta-like series with a linear phase growth.
/// Never returns less than `policy.trunc_radius`.
pub fn gaussian_series_bound(
    im_tau: f64,
    quadratic_weight: f64,
    linear: f64,
    policy: &SeriesPolicy,
) -> usize {
    let a = TWO_PI * quadratic_weight * im_tau;
    let b = TWO_PI * linear.abs();
    let c = (1.0 / policy.tol).ln() + 5.0;
    // a n^2 - b n - c >= 0
    let n = ((b + (b * b + 4.0 * a * c).sqrt()) / (2.0 * a)).ceil() as usize;
    n.max(policy.trunc_radius).max(2)
}

/// Distance from z to the lattice Z + Z*tau, together with the nearest point.
pub fn lattice_distance(z: Complex64, tau: Complex64) -> (f64, Complex64) {
    // Solve z = x + y*tau for real x, y; nearest lattice point rounds (x, y).
    let y = z.im / tau.im;
    let x = z.re - y * tau.re;
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    let (x0, y0) = (x.round(), y.round());
    for dx in [-1.0, 0.0, 1.0] {
        for dy in [-1.0, 0.0, 1.0] {
            let p = Complex64::new(x0 + dx, 0.0) + Complex64::new(y0 + dy, 0.0) * tau;
            let d = (z - p).norm();
            if d < best.0 {
                best = (d, p);
            }
        }
    }
    best
}

/// Distance from z to the integer lattice Z (nearest integer point).
pub fn integer_distance(z: Complex64) -> (f64, f64) {
    let n = z.re.round();
    ((z - n).norm(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_oracle_e(x: f64) -> f64 {
        // adaptive-ish Gauss-Legendre on [0, x] for 2 exp(-pi u^2)
        // 64 panels of 8-point Gauss is far below 1e-12 error here
        let nodes = [
            -0.9602898564975363,
            -0.7966664774136267,
            -0.525532409916329,
            -0.18343464249564978,
            0.18343464249564978,
            0.525532409916329,
            0.7966664774136267,
            0.9602898564975363,
        ];
        let weights = [
            0.10122853629037669,
            0.22238103445337448,
            0.31370664587788727,
            0.362683783378362,
            0.362683783378362,
            0.31370664587788727,
            0.22238103445337448,
            0.10122853629037669,
        ];
        let panels = 64;
        let mut total = 0.0;
        for p in 0..panels {
            let a = x * p as f64 / panels as f64;
            let b = x * (p + 1) as f64 / panels as f64;
            let mid = 0.5 * (a + b);
            let hw = 0.5 * (b - a);
            for (xi, wi) in nodes.iter().zip(weights.iter()) {
                let u = mid + hw * xi;
                total += wi * hw * 2.0 * (-PI * u * u).exp();
            }
        }
        total
    }

    #[test]
    fn gauss_error_at_zero() {
        assert_eq!(gauss_error(0.0).unwrap(), 0.0);
    }

    #[test]
    fn gauss_error_odd() {
        let x = 0.7;
        assert!((gauss_error(x).unwrap() + gauss_error(-x).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn gauss_error_matches_quadrature() {
        // E(1) from direct quadrature of 2 int_0^1 e^{-pi u^2} du
        let expect = quad_oracle_e(1.0);
        assert!((expect - 0.987811).abs() < 1e-5);
        assert!((gauss_error(1.0).unwrap() - expect).abs() < 1e-12);
        for &x in &[0.25, 0.5, 1.5, 2.5] {
            assert!((gauss_error(x).unwrap() - quad_oracle_e(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn gauss_error_rejects_non_finite() {
        assert!(gauss_error(f64::NAN).is_err());
        assert!(gauss_error(f64::INFINITY).is_err());
    }

    #[test]
    fn contour_gaussian_normalization() {
        let policy = SeriesPolicy::default();
        let decay = GaussianDecay { rate: PI, center: 0.0 };
        let v = contour_integral(|x| (-PI * x * x).exp(), 0.0, decay, &policy).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn contour_odd_integrand_vanishes() {
        let policy = SeriesPolicy::default();
        let decay = GaussianDecay { rate: PI, center: 0.0 };
        let v = contour_integral(|x| x * (-PI * x * x).exp(), 0.0, decay, &policy).unwrap();
        assert!(v.norm() < 1e-10);
    }

    #[test]
    fn contour_shift_invariance() {
        // entire Gaussian: the contour can be moved off the real axis freely
        let policy = SeriesPolicy::default();
        let decay = GaussianDecay { rate: PI, center: 0.0 };
        let v0 = contour_integral(|x| (-PI * x * x).exp(), 0.0, decay, &policy).unwrap();
        let v1 = contour_integral(|x| (-PI * x * x).exp(), 0.5, decay, &policy).unwrap();
        assert!((v0 - v1).norm() < 1e-10);
        assert!((v1 - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn contour_reports_bad_node() {
        let policy = SeriesPolicy::default();
        let decay = GaussianDecay { rate: PI, center: 0.0 };
        let r = contour_integral(|_| Complex64::new(f64::NAN, 0.0), 0.0, decay, &policy);
        assert!(matches!(r, Err(Error::Evaluation { .. })));
    }

    #[test]
    fn truncation_examples() {
        // |q| = e^{-2 pi}: N <= 3
        let n = choose_truncation((-TWO_PI).exp(), 1.0, 1e-12).unwrap();
        assert!(n <= 3, "n = {n}");
        // |q| = 0.5: 0.5^49 ~ 1.8e-15 < 1e-12 * 0.5, and 0.5^36 is not
        let n = choose_truncation(0.5, 1.0, 1e-12).unwrap();
        assert_eq!(n, 7);
    }

    #[test]
    fn truncation_bound_holds_and_monotone() {
        for &q in &[0.1, 0.5, 0.9] {
            for &w in &[0.5, 1.0, 2.0, 3.0] {
                let n = choose_truncation(q, w, 1e-12).unwrap();
                assert!(q.powf(w * (n * n) as f64) < 1e-12 * (1.0 - q));
                if n > 1 {
                    let m = (n - 1) as f64;
                    assert!(q.powf(w * m * m) >= 1e-12 * (1.0 - q));
                }
                // doubling the weight never increases N
                let n2 = choose_truncation(q, 2.0 * w, 1e-12).unwrap();
                assert!(n2 <= n);
            }
        }
        assert!(choose_truncation(1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn modular_point_rejects_lower_half_plane() {
        assert!(ModularPoint::new(Complex64::new(0.3, -0.1)).is_err());
        assert!(ModularPoint::new(Complex64::new(0.3, 0.0)).is_err());
        let p = ModularPoint::new(Complex64::new(0.0, 1.0)).unwrap();
        assert!(p.nome().norm() < 1.0);
    }

    #[test]
    fn lattice_distance_finds_nearest() {
        let tau = Complex64::new(0.13, 0.92);
        let z = Complex64::new(2.0, 0.0) - tau + Complex64::new(1e-3, 0.0);
        let (d, p) = lattice_distance(z, tau);
        assert!((d - 1e-3).abs() < 1e-12);
        assert!((p - (Complex64::new(2.0, 0.0) - tau)).norm() < 1e-12);
    }
}
