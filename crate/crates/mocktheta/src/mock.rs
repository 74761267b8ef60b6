//! The core objects: the Appell--Lerch sum mu, the mock theta numerators
//! Phi^[m] / phi^[m], Zwegers' real-analytic R_{m;j} and h_{m;j}, the
//! correction Phi_add, the completion Phi-tilde, and the holomorphic
//! obstruction function G computed two independent ways.

use crate::error::{Error, Result};
use crate::numerics::{
    contour_integral, e2pi, gauss_error_c, gaussian_series_bound, lattice_distance,
    GaussianDecay, ModularPoint, SeriesPolicy, TWO_PI,
};
use crate::theta::{jacobi_theta, theta_jm, JacobiThetaKind, ThetaIndex};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Level parameter m >= 0 of Phi^[m].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MockIndex(pub u32);

/// A point (z1, z2, t); u = -(z1+z2)/2 and v = (z1-z2)/2 are derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    pub z1: Complex64,
    pub z2: Complex64,
    pub t: Complex64,
}

impl TorusPoint {
    pub fn new(z1: Complex64, z2: Complex64, t: Complex64) -> Self {
        TorusPoint { z1, z2, t }
    }

    pub fn from_uv(u: Complex64, v: Complex64, t: Complex64) -> Self {
        TorusPoint { z1: v - u, z2: -(v + u), t }
    }

    pub fn u(&self) -> Complex64 {
        -(self.z1 + self.z2) / 2.0
    }

    pub fn v(&self) -> Complex64 {
        (self.z1 - self.z2) / 2.0
    }
}

fn guard_lattice(z: Complex64, tau: &ModularPoint, what: &str, policy: &SeriesPolicy) -> Result<()> {
    let (dist, locus) = lattice_distance(z, tau.tau());
    if dist < policy.pole_guard {
        return Err(Error::PoleProximity {
            locus: format!("{what} = {locus}"),
            distance: dist,
            guard: policy.pole_guard,
        });
    }
    Ok(())
}

/// Appell--Lerch sum
/// mu(tau,z1,z2) = e^{pi i z1}/vartheta_11(tau,z2) *
///                 sum_n (-1)^n q^{(n^2+n)/2} e^{2 pi i n z2} / (1 - e^{2 pi i z1} q^n).
pub fn mu(
    tau: &ModularPoint,
    z1: Complex64,
    z2: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    guard_lattice(z1, tau, "z1", policy)?;
    guard_lattice(z2, tau, "z2 (zero of vartheta_11)", policy)?;
    let th = jacobi_theta(JacobiThetaKind::THETA11, tau, z2, policy)?;
    if th.norm() < policy.tol {
        return Err(Error::ZeroDivisor { what: "vartheta_11(tau,z2)".into(), magnitude: th.norm() });
    }
    let tight = SeriesPolicy { tol: policy.tol * policy.pole_guard, ..*policy };
    let n_max = gaussian_series_bound(tau.im(), 0.5, 0.5 * tau.im() + z2.im.abs(), &tight) as i64;
    let w1 = e2pi(z1);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -n_max..=n_max {
        let nf = n as f64;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let num = tau.q_pow(Complex64::new(0.5 * (nf * nf + nf), 0.0)) * e2pi(z2 * nf) * sign;
        let den = 1.0 - w1 * tau.q_pow(Complex64::new(nf, 0.0));
        acc += num / den;
    }
    Ok((Complex64::new(0.0, PI) * z1).exp() / th * acc)
}

fn phi_series(
    m: MockIndex,
    tau: &ModularPoint,
    pt: &TorusPoint,
    policy: &SeriesPolicy,
    double_pole: bool,
) -> Result<Complex64> {
    policy.validate()?;
    guard_lattice(pt.z1, tau, "z1", policy)?;
    guard_lattice(pt.z2, tau, "z2", policy)?;
    let mp1 = (m.0 + 1) as f64;
    let zsum = pt.z1 + pt.z2;
    let tight = SeriesPolicy { tol: policy.tol * policy.pole_guard, ..*policy };
    let n_max = gaussian_series_bound(tau.im(), mp1, mp1 * zsum.im.abs() + 1.0, &tight) as i64;
    let w1 = e2pi(pt.z1);
    let w2i = e2pi(-pt.z2);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in -n_max..=n_max {
        let jf = j as f64;
        let qj = tau.q_pow(Complex64::new(jf, 0.0));
        let qq = tau.q_pow(Complex64::new(jf * jf * mp1, 0.0));
        let phase = e2pi(zsum * (jf * mp1));
        if double_pole {
            // termwise D0 of the simple-pole series
            let d1 = 1.0 - w1 * qj;
            let d2 = 1.0 - w2i * qj;
            acc += phase * qq * w1 * qj / (d1 * d1);
            acc -= qq / phase * w2i * qj / (d2 * d2);
        } else {
            acc += phase * qq / (1.0 - w1 * qj);
            acc -= qq / phase / (1.0 - w2i * qj);
        }
    }
    Ok(e2pi(pt.t * mp1) * acc)
}

/// The mock theta numerator Phi^[m](tau, z1, z2, t):
/// e^{2 pi i (m+1) t} sum_j [ e^{2 pi i j(m+1)(z1+z2)} q^{j^2(m+1)} / (1 - e^{2 pi i z1} q^j)
///                          - e^{-2 pi i j(m+1)(z1+z2)} q^{j^2(m+1)} / (1 - e^{-2 pi i z2} q^j) ].
pub fn phi(m: MockIndex, tau: &ModularPoint, pt: &TorusPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    phi_series(m, tau, pt, policy, false)
}

/// Termwise D0 = (1/2 pi i)(d/dz1 - d/dz2) of [`phi`]; the double-pole series.
pub fn phi_d0(m: MockIndex, tau: &ModularPoint, pt: &TorusPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    phi_series(m, tau, pt, policy, true)
}

/// phi^[m](tau, u, v, t) = Phi^[m] at z1 = v - u, z2 = -(v + u).
pub fn phi_uv(
    m: MockIndex,
    tau: &ModularPoint,
    u: Complex64,
    v: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    phi(m, tau, &TorusPoint::from_uv(u, v, t), policy)
}

/// Zwegers' h_{m;j}(tau, v) for j not divisible by 2m:
/// i int_R e^{2 pi i m tau x^2 - 4 pi m x v} / (1 - e^{2 pi (x + i(2m-j)/(2m))}) dx
/// for 1 <= j <= 2m-1, extended to other j by
/// h_{m;j} - h_{m;j+2m} = q^{-j^2/(4m)} e^{-2 pi i j v}.
pub fn h_zw(
    m: u32,
    j: i64,
    tau: &ModularPoint,
    v: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    if m == 0 {
        return Err(Error::Domain("h_zw requires m >= 1".into()));
    }
    let period = 2 * m as i64;
    if j.rem_euclid(period) == 0 {
        return Err(Error::UnsupportedIndex(format!(
            "h_{{m;j}} with j = {j} = 0 mod 2m = {period} has no direct integral form"
        )));
    }
    let j0 = j.rem_euclid(period); // in (0, 2m)
    let mf = m as f64;
    let theta = (period - j0) as f64 / (2.0 * mf); // in (0, 1)
    let itau = tau.tau() * Complex64::new(0.0, TWO_PI * mf);
    let decay = GaussianDecay {
        rate: TWO_PI * mf * tau.im(),
        center: -v.re / tau.im(),
    };
    let base = contour_integral(
        |x| {
            let num = (itau * x * x - 4.0 * PI * mf * x * v).exp();
            let den = 1.0 - (TWO_PI * (x + Complex64::new(0.0, theta))).exp();
            num / den
        },
        0.0,
        decay,
        policy,
    )?;
    let mut h = Complex64::new(0.0, 1.0) * base;
    // ladder from j0 up or down to j in steps of 2m
    let steps = (j - j0) / period;
    let shift_term = |jj: i64| -> Complex64 {
        let jjf = jj as f64;
        tau.q_pow(Complex64::new(-jjf * jjf / (4.0 * mf), 0.0)) * e2pi(-v * jjf)
    };
    if steps > 0 {
        let mut cur = j0;
        for _ in 0..steps {
            h -= shift_term(cur);
            cur += period;
        }
    } else {
        let mut cur = j0;
        for _ in 0..(-steps) {
            cur -= period;
            h += shift_term(cur);
        }
    }
    Ok(h)
}

fn r_zw_sum(
    m: u32,
    j: i64,
    tau: &ModularPoint,
    v: Complex64,
    policy: &SeriesPolicy,
    dv: bool,
) -> Result<Complex64> {
    policy.validate()?;
    if m == 0 {
        return Err(Error::Domain("r_zw requires m >= 1".into()));
    }
    let period = 2 * m as i64;
    let j0 = j.rem_euclid(period);
    let mf = m as f64;
    let im_tau = tau.im();
    let im_v = v.im;
    let c = 2.0 * mf * im_v / im_tau;
    let scale = (im_tau / mf).sqrt();
    // tail bound exponent: -pi Im(tau) n^2/(2m) - 2 pi n Im(v) - pi Im(tau) c^2/m
    let tail = |n: f64| -> f64 { -PI * im_tau * n * n / (2.0 * mf) - TWO_PI * n * im_v };
    let ln_tol = (policy.tol * 1e-2).ln();
    // solve the quadratic for the truncation radius; refuse absurd budgets
    let a = PI * im_tau / (2.0 * mf);
    let b = TWO_PI * im_v.abs();
    let n_stop = ((b + (b * b + 4.0 * a * (-ln_tol + 5.0)).sqrt()) / (2.0 * a)).ceil() as i64 + 1;
    if n_stop > 100_000 {
        return Err(Error::DecayBudget { needed: n_stop as f64 });
    }
    let term = |n: i64| -> Complex64 {
        let nf = n as f64;
        let x = (nf + c) * scale;
        // sign(n + 1/2) - E(x), via erfc for stability on both branches
        let factor = if n >= 0 { gauss_error_c(x) } else { -gauss_error_c(-x) };
        let gauss = (-PI * x * x).exp();
        if factor == 0.0 && (!dv || gauss == 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        let expo = Complex64::new(0.0, -PI * nf * nf / (2.0 * mf)) * tau.tau()
            - Complex64::new(0.0, TWO_PI * nf) * v;
        if dv {
            // Wirtinger d/dv: the phase contributes -2 pi i n and the
            // E-factor, through Im v = (v - conj v)/(2i), contributes
            // +2 i sqrt(m/Im tau) e^{-pi x^2}
            let d_factor = Complex64::new(0.0, -TWO_PI * nf) * factor
                + Complex64::new(0.0, 2.0 * (mf / im_tau).sqrt() * gauss);
            d_factor * expo.exp()
        } else {
            factor * expo.exp()
        }
    };
    let mut acc = Complex64::new(0.0, 0.0);
    let mut n = j0;
    while n <= n_stop.max(j0 + 2 * period) {
        acc += term(n);
        if tail(n as f64) < ln_tol && n > (c.abs().ceil() as i64 + 1) {
            break;
        }
        n += period;
    }
    let mut n = j0 - period;
    while n >= -(n_stop.max(-j0 + 2 * period)) {
        acc += term(n);
        if tail(n as f64) < ln_tol && (-n) > (c.abs().ceil() as i64 + 1) {
            break;
        }
        n -= period;
    }
    Ok(acc)
}

/// Zwegers' R_{m;j}(tau, v) =
/// sum_{n = j mod 2m} (sign(n+1/2) - E((n + 2m Im v/Im tau) sqrt(Im tau/m)))
///                    e^{-pi i n^2 tau/(2m) - 2 pi i n v};
/// depends on j only mod 2m.
pub fn r_zw(m: u32, j: i64, tau: &ModularPoint, v: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    r_zw_sum(m, j, tau, v, policy, false)
}

/// Termwise Wirtinger derivative d/dv of [`r_zw`]; the E-factor contributes
/// through its Im v dependence.
pub fn r_zw_dv(m: u32, j: i64, tau: &ModularPoint, v: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    r_zw_sum(m, j, tau, v, policy, true)
}

/// Zwegers' one-variable R(tau, u) = R_{2;1}(tau, u/2) - R_{2;-1}(tau, u/2).
pub fn zwegers_r(tau: &ModularPoint, u: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    Ok(r_zw(2, 1, tau, u / 2.0, policy)? - r_zw(2, -1, tau, u / 2.0, policy)?)
}

fn phi_add_impl(
    m: MockIndex,
    tau: &ModularPoint,
    pt: &TorusPoint,
    policy: &SeriesPolicy,
    d0: bool,
) -> Result<Complex64> {
    policy.validate()?;
    let mp1 = m.0 + 1;
    let v = pt.v();
    let zsum = pt.z1 + pt.z2;
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..(2 * mp1 as i64) {
        if j == mp1 as i64 {
            continue; // Theta_{m+1} - Theta_{-(m+1)} = 0
        }
        let tp = theta_jm(ThetaIndex::new(j, mp1)?, tau, zsum, zero, policy)?;
        let tm = theta_jm(ThetaIndex::new(-j, mp1)?, tau, zsum, zero, policy)?;
        let r = if d0 {
            r_zw_dv(mp1, j, tau, v, policy)? / Complex64::new(0.0, TWO_PI)
        } else {
            r_zw(mp1, j, tau, v, policy)?
        };
        acc += r * (tp - tm);
    }
    Ok(-0.5 * e2pi(pt.t * mp1 as f64) * acc)
}

/// The real-analytic correction
/// Phi_add^[m] = -1/2 e^{2 pi i (m+1) t} sum_{j mod 2m+2}
///               R_{m+1;j}(tau, (z1-z2)/2) (Theta_{j,m+1} - Theta_{-j,m+1})(tau, z1+z2).
pub fn phi_add(m: MockIndex, tau: &ModularPoint, pt: &TorusPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    phi_add_impl(m, tau, pt, policy, false)
}

/// D0 of [`phi_add`] (only the R-factor depends on z1 - z2).
pub fn phi_add_d0(m: MockIndex, tau: &ModularPoint, pt: &TorusPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    phi_add_impl(m, tau, pt, policy, true)
}

/// The modification Phi~^[m] = Phi^[m] + Phi_add^[m].
pub fn phi_tilde(m: MockIndex, tau: &ModularPoint, pt: &TorusPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    Ok(phi(m, tau, pt, policy)? + phi_add(m, tau, pt, policy)?)
}

/// D0 of [`phi_tilde`].
pub fn phi_tilde_d0(m: MockIndex, tau: &ModularPoint, pt: &TorusPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    Ok(phi_d0(m, tau, pt, policy)? + phi_add_d0(m, tau, pt, policy)?)
}

/// phi~^[m] in (u, v) coordinates.
pub fn phi_tilde_uv(
    m: MockIndex,
    tau: &ModularPoint,
    u: Complex64,
    v: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    phi_tilde(m, tau, &TorusPoint::from_uv(u, v, t), policy)
}

/// G(tau,u,v,t) = phi^[m](tau,u,v,t)
///              - tau^{-1} phi^[m](-1/tau, u/tau, v/tau, t - (u^2-v^2)/tau).
pub fn g_direct(
    m: MockIndex,
    tau: &ModularPoint,
    u: Complex64,
    v: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let direct = phi_uv(m, tau, u, v, t, policy)?;
    let st = tau.s_transform();
    let ts = t - (u * u - v * v) / tau.tau();
    let s_img = phi_uv(m, &st, u / tau.tau(), v / tau.tau(), ts, policy)? / tau.tau();
    Ok(direct - s_img)
}

/// The same G through Zwegers' h-functions (holomorphic route; finite at the
/// phi poles where both terms of [`g_direct`] blow up):
/// G = -e^{2 pi i (m+1) t} sum_{j=1}^{2m+1} h_{m+1;j}(tau,v)
///     (Theta_{j,m+1} - Theta_{-j,m+1})(tau, 2u).
pub fn g_via_h(
    m: MockIndex,
    tau: &ModularPoint,
    u: Complex64,
    v: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    let mp1 = m.0 + 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..(2 * mp1 as i64) {
        if j == mp1 as i64 {
            continue;
        }
        let tp = theta_jm(ThetaIndex::new(j, mp1)?, tau, 2.0 * u, zero, policy)?;
        let tm = theta_jm(ThetaIndex::new(-j, mp1)?, tau, 2.0 * u, zero, policy)?;
        acc += h_zw(mp1, j, tau, v, policy)? * (tp - tm);
    }
    Ok(-e2pi(t * mp1 as f64) * acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(re: f64, im: f64) -> ModularPoint {
        ModularPoint::new(Complex64::new(re, im)).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn uv_roundtrip_exact() {
        let pt = TorusPoint::new(c(0.31, 0.11), c(0.17, -0.08), c(0.05, 0.02));
        let rt = TorusPoint::from_uv(pt.u(), pt.v(), pt.t);
        assert!((pt.z1 - rt.z1).norm() <= 4.0 * f64::EPSILON);
        assert!((pt.z2 - rt.z2).norm() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn mu_truncation_doubling() {
        let tau = mp(0.0, 1.0);
        let policy = SeriesPolicy::default();
        let a = mu(&tau, c(0.31, 0.0), c(0.17, 0.0), &policy).unwrap();
        let b = mu(&tau, c(0.31, 0.0), c(0.17, 0.0), &policy.refined()).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn mu_pole_rejected() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let z1 = tau.tau() + c(2.0, 0.0) + c(1e-5, 0.0);
        assert!(matches!(
            mu(&tau, z1, c(0.17, -0.08), &policy),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn phi_equals_theta_times_mu_at_m1() {
        // Eq-level anchor: Phi^[1](tau,z1,z2,0) = vartheta_11(tau,z1+z2) mu(tau,z1,z2)
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let (z1, z2) = (c(0.31, 0.11), c(0.17, -0.08));
        let lhs = phi(MockIndex(1), &tau, &TorusPoint::new(z1, z2, ZERO), &policy).unwrap();
        let rhs = jacobi_theta(JacobiThetaKind::THETA11, &tau, z1 + z2, &policy).unwrap()
            * mu(&tau, z1, z2, &policy).unwrap();
        assert!((lhs - rhs).norm() < 1e-11, "{lhs} vs {rhs}");
    }

    #[test]
    fn mu_symmetric_in_z1_z2() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let a = mu(&tau, c(0.31, 0.11), c(0.17, -0.08), &policy).unwrap();
        let b = mu(&tau, c(0.17, -0.08), c(0.31, 0.11), &policy).unwrap();
        assert!((a - b).norm() < 1e-11);
    }

    #[test]
    fn phi_swap_and_negate() {
        let tau = mp(-0.21, 1.13);
        let policy = SeriesPolicy::default();
        let pt = TorusPoint::new(c(0.31, 0.11), c(0.17, -0.08), c(0.05, 0.02));
        let base = phi(MockIndex(2), &tau, &pt, &policy).unwrap();
        let swapped = phi(MockIndex(2), &tau, &TorusPoint::new(pt.z2, pt.z1, pt.t), &policy).unwrap();
        assert!((base - swapped).norm() < 1e-11);
        let negated = phi(MockIndex(2), &tau, &TorusPoint::new(-pt.z1, -pt.z2, pt.t), &policy).unwrap();
        assert!((base + negated).norm() < 1e-11);
    }

    #[test]
    fn phi_uv_parity() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let (u, v, t) = (c(0.12, 0.07), c(0.07, 0.095), c(0.05, 0.02));
        let base = phi_uv(MockIndex(1), &tau, u, v, t, &policy).unwrap();
        let nu = phi_uv(MockIndex(1), &tau, -u, v, t, &policy).unwrap();
        assert!((base + nu).norm() < 1e-11);
        let nv = phi_uv(MockIndex(1), &tau, u, -v, t, &policy).unwrap();
        assert!((base - nv).norm() < 1e-11);
    }

    #[test]
    fn h_zw_quadrature_refinement() {
        let tau = mp(0.0, 1.0);
        let policy = SeriesPolicy::default();
        let v = c(0.07, 0.095);
        let a = h_zw(2, 1, &tau, v, &policy).unwrap();
        let b = h_zw(2, 1, &tau, v, &policy.refined()).unwrap();
        assert!((a - b).norm() < 1e-10, "diff {}", (a - b).norm());
    }

    #[test]
    fn h_zw_rejects_zero_class() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        assert!(matches!(
            h_zw(2, 0, &tau, c(0.1, 0.0), &policy),
            Err(Error::UnsupportedIndex(_))
        ));
        assert!(matches!(
            h_zw(2, 4, &tau, c(0.1, 0.0), &policy),
            Err(Error::UnsupportedIndex(_))
        ));
    }

    #[test]
    fn h_zw_shift_ladder_consistency() {
        // h_{m;j} - h_{m;j+2m} = q^{-j^2/4m} e^{-2 pi i j v}, with the shifted
        // side checked against the 2m-periodic integral plus ladder
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let v = c(0.07, 0.02);
        let m = 2u32;
        for j in [1i64, 3] {
            let lhs = h_zw(m, j, &tau, v, &policy).unwrap() - h_zw(m, j + 4, &tau, v, &policy).unwrap();
            let jf = j as f64;
            let rhs = tau.q_pow(c(-jf * jf / (4.0 * m as f64), 0.0)) * e2pi(-v * jf);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn r_zw_half_period_sign() {
        // R_{m;j}(tau, v+1/2) = (-1)^j R_{m;j}(tau, v)
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let v = c(0.07, 0.095);
        for j in 0..4i64 {
            let a = r_zw(2, j, &tau, v + 0.5, &policy).unwrap();
            let b = r_zw(2, j, &tau, v, &policy).unwrap();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a - sign * b).norm() < 1e-12, "j = {j}");
        }
    }

    #[test]
    fn r_zw_reflection() {
        // R_{m;j}(tau,-v) + R_{m;-j}(tau,v) = 2 delta_{j,0 mod 2m}
        let tau = mp(-0.21, 1.13);
        let policy = SeriesPolicy::default();
        let v = c(0.07, -0.06);
        for j in 0..4i64 {
            let s = r_zw(2, j, &tau, -v, &policy).unwrap() + r_zw(2, -j, &tau, v, &policy).unwrap();
            let expect = if j == 0 { 2.0 } else { 0.0 };
            assert!((s - c(expect, 0.0)).norm() < 1e-12, "j = {j}: {s}");
        }
    }

    #[test]
    fn r_zw_depends_on_j_mod_2m() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let v = c(0.07, 0.095);
        let a = r_zw(3, 1, &tau, v, &policy).unwrap();
        let b = r_zw(3, 7, &tau, v, &policy).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn zwegers_r_real_on_imaginary_axis() {
        let tau = mp(0.0, 1.0);
        let policy = SeriesPolicy::default();
        let v = zwegers_r(&tau, ZERO, &policy).unwrap();
        assert!(v.im.abs() < 1e-12, "{v}");
    }

    #[test]
    fn phi_add_vanishes_at_m0() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let pt = TorusPoint::new(c(0.31, 0.11), c(0.17, -0.08), c(0.05, 0.02));
        let v = phi_add(MockIndex(0), &tau, &pt, &policy).unwrap();
        assert_eq!(v, ZERO);
    }

    #[test]
    fn phi_add_m1_closed_form() {
        // Phi_add^[1](tau,z1,z2,0) = (i/2) R(tau, z1-z2) vartheta_11(tau, z1+z2)
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let (z1, z2) = (c(0.31, 0.11), c(0.17, -0.08));
        let lhs = phi_add(MockIndex(1), &tau, &TorusPoint::new(z1, z2, ZERO), &policy).unwrap();
        let rhs = Complex64::new(0.0, 0.5)
            * zwegers_r(&tau, z1 - z2, &policy).unwrap()
            * jacobi_theta(JacobiThetaKind::THETA11, &tau, z1 + z2, &policy).unwrap();
        assert!((lhs - rhs).norm() < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn g_two_routes_agree() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let (u, v, t) = (c(0.12, 0.07), c(0.07, 0.095), c(0.05, 0.02));
        for m in [1u32, 2] {
            let a = g_direct(MockIndex(m), &tau, u, v, t, &policy).unwrap();
            let b = g_via_h(MockIndex(m), &tau, u, v, t, &policy).unwrap();
            assert!((a - b).norm() < 1e-8, "m = {m}: {a} vs {b}");
        }
    }

    #[test]
    fn g_via_h_vanishes_at_m0() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let v = g_via_h(MockIndex(0), &tau, c(0.12, 0.07), c(0.07, 0.095), ZERO, &policy).unwrap();
        assert_eq!(v, ZERO);
    }

    #[test]
    fn phi_tilde_s_invariance_smoke() {
        // Cor 5.10(a): Phi~(-1/tau, z1/tau, z2/tau, t - z1 z2/tau) = tau Phi~
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let pt = TorusPoint::new(c(0.31, 0.11), c(0.17, -0.08), c(0.05, 0.02));
        let st = tau.s_transform();
        let spt = TorusPoint::new(
            pt.z1 / tau.tau(),
            pt.z2 / tau.tau(),
            pt.t - pt.z1 * pt.z2 / tau.tau(),
        );
        let lhs = phi_tilde(MockIndex(1), &st, &spt, &policy).unwrap();
        let rhs = tau.tau() * phi_tilde(MockIndex(1), &tau, &pt, &policy).unwrap();
        assert!((lhs - rhs).norm() < 1e-9, "{lhs} vs {rhs}");
    }
}
