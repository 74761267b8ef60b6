//! Classical theta functions of one elliptic variable, the four Jacobi theta
//! functions, the Dedekind eta function, product-form oracles, and the rank-2
//! mock theta function with one isotropic denominator direction.

use crate::error::{Error, Result};
use crate::numerics::{
    e2pi, gaussian_series_bound, lattice_distance, ModularPoint, SeriesPolicy, TWO_PI,
};
use num_complex::Complex64;

/// Index (j mod 2k, k) of the degree-k theta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaIndex {
    j: i64,
    k: u32,
}

impl ThetaIndex {
    /// j is reduced into [0, 2k) at construction; the function depends on
    /// j only mod 2k.
    pub fn new(j: i64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("theta degree k must be positive".into()));
        }
        let m = 2 * k as i64;
        Ok(ThetaIndex { j: j.rem_euclid(m), k })
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Theta_{j,k}(tau, z, t) = e^{2 pi i k t} sum_{n in Z + j/2k} q^{k n^2} e^{2 pi i k n z}.
pub fn theta_jm(
    idx: ThetaIndex,
    tau: &ModularPoint,
    z: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    theta_sum(idx, tau, z, t, policy, false)
}

/// d/dz of [`theta_jm`] (termwise; entire in z).
pub fn theta_jm_dz(
    idx: ThetaIndex,
    tau: &ModularPoint,
    z: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    theta_sum(idx, tau, z, t, policy, true)
}

fn theta_sum(
    idx: ThetaIndex,
    tau: &ModularPoint,
    z: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
    derivative: bool,
) -> Result<Complex64> {
    policy.validate()?;
    let k = idx.k as f64;
    let off = idx.j as f64 / (2.0 * k);
    let n_max = gaussian_series_bound(tau.im(), k, k * z.im.abs() + k * off.abs() * tau.im(), policy);
    let mut acc = Complex64::new(0.0, 0.0);
    for r in -(n_max as i64)..=(n_max as i64) {
        let n = r as f64 + off;
        let expo = tau.tau() * (k * n * n) + z * (k * n);
        let mut term = (Complex64::new(0.0, TWO_PI) * expo).exp();
        if derivative {
            term *= Complex64::new(0.0, TWO_PI * k * n);
        }
        acc += term;
    }
    Ok(e2pi(t * k) * acc)
}

/// Selector for the four Jacobi theta functions `vartheta_{ab}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JacobiThetaKind {
    pub a: u8,
    pub b: u8,
}

impl JacobiThetaKind {
    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a > 1 || b > 1 {
            return Err(Error::Domain(format!("vartheta indices must be bits, got ({a},{b})")));
        }
        Ok(JacobiThetaKind { a, b })
    }

    pub const THETA00: JacobiThetaKind = JacobiThetaKind { a: 0, b: 0 };
    pub const THETA01: JacobiThetaKind = JacobiThetaKind { a: 0, b: 1 };
    pub const THETA10: JacobiThetaKind = JacobiThetaKind { a: 1, b: 0 };
    pub const THETA11: JacobiThetaKind = JacobiThetaKind { a: 1, b: 1 };
}

/// The four Jacobi theta functions as combinations of degree-2 thetas:
/// vartheta_00 = Theta_{2,2} + Theta_{0,2},  vartheta_01 = -Theta_{2,2} + Theta_{0,2},
/// vartheta_10 = Theta_{1,2} + Theta_{-1,2}, vartheta_11 = i Theta_{1,2} - i Theta_{-1,2}.
pub fn jacobi_theta(
    kind: JacobiThetaKind,
    tau: &ModularPoint,
    z: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    jacobi_combination(kind, tau, z, policy, theta_jm)
}

/// d/dz of [`jacobi_theta`].
pub fn jacobi_theta_dz(
    kind: JacobiThetaKind,
    tau: &ModularPoint,
    z: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    jacobi_combination(kind, tau, z, policy, theta_jm_dz)
}

fn jacobi_combination(
    kind: JacobiThetaKind,
    tau: &ModularPoint,
    z: Complex64,
    policy: &SeriesPolicy,
    part: fn(ThetaIndex, &ModularPoint, Complex64, Complex64, &SeriesPolicy) -> Result<Complex64>,
) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let th = |j: i64| part(ThetaIndex::new(j, 2)?, tau, z, zero, policy);
    let i = Complex64::new(0.0, 1.0);
    Ok(match (kind.a, kind.b) {
        (0, 0) => th(2)? + th(0)?,
        (0, 1) => -th(2)? + th(0)?,
        (1, 0) => th(1)? + th(-1)?,
        (1, 1) => i * th(1)? - i * th(-1)?,
        _ => unreachable!(),
    })
}

fn product_terms(abs_q: f64, policy: &SeriesPolicy) -> usize {
    let n = (policy.tol.ln() / abs_q.ln()).ceil().max(1.0) as usize;
    n.max(policy.trunc_radius).max(8)
}

/// Dedekind eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n), with the 24th root
/// taken as exp(2 pi i tau / 24).
pub fn eta(tau: &ModularPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    policy.validate()?;
    let q = tau.nome();
    let n_max = product_terms(q.norm(), policy);
    let mut acc = (Complex64::new(0.0, TWO_PI / 24.0) * tau.tau()).exp();
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 1..=n_max {
        qn *= q;
        acc *= 1.0 - qn;
    }
    Ok(acc)
}

/// Jacobi triple-product form of `vartheta_{ab}`, solved from the classical
/// product identities; independent oracle for [`jacobi_theta`].
pub fn jacobi_theta_product(
    kind: JacobiThetaKind,
    tau: &ModularPoint,
    z: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    let q = tau.nome();
    let w = e2pi(z);
    let wi = w.inv();
    let eta_v = eta(tau, policy)?;
    let n_max = product_terms(q.norm(), policy);
    let i = Complex64::new(0.0, 1.0);

    let qp = |x: f64| tau.q_pow(Complex64::new(x, 0.0));

    match (kind.a, kind.b) {
        // prod (1 + w q^{n-1/2})(1 + w^{-1} q^{n-1/2}) = q^{1/24} th00 / eta
        (0, 0) | (0, 1) => {
            let sign = if kind.b == 0 { 1.0 } else { -1.0 };
            let mut p = Complex64::new(1.0, 0.0);
            let mut qh = qp(0.5);
            for _ in 1..=n_max {
                p *= (1.0 + sign * w * qh) * (1.0 + sign * wi * qh);
                qh *= q;
            }
            Ok(qp(-1.0 / 24.0) * eta_v * p)
        }
        // prod (1 + w^{-1} q^n)(1 + w q^{n-1}) = q^{-1/12} e^{pi i z} th10 / eta
        (1, 0) | (1, 1) => {
            let sign = if kind.b == 0 { 1.0 } else { -1.0 };
            let mut p = Complex64::new(1.0, 0.0);
            let mut qn = Complex64::new(1.0, 0.0); // q^{n-1}
            for _ in 1..=n_max {
                p *= (1.0 + sign * wi * qn * q) * (1.0 + sign * w * qn);
                qn *= q;
            }
            let half_phase = (Complex64::new(0.0, -std::f64::consts::PI) * z).exp();
            let base = qp(1.0 / 12.0) * half_phase * eta_v * p;
            // the vartheta_11 line carries an extra factor i on the product side
            Ok(if kind.b == 1 { -i * base } else { base })
        }
        _ => unreachable!(),
    }
}

/// Rank-2 mock theta function with lattice Z*alpha, one isotropic direction
/// beta, (alpha|beta) = 1, (beta|beta) = 0, restricted weight zero:
///
///   e^{2 pi i K t} sum_{a in Z} q^{s a^2/2} e^{2 pi i a (s z1 + K z2)}
///                              / (1 - e^{-2 pi i (z1 + a tau)})
///
/// where s = K (alpha|alpha).  Simple poles at z1 in Z - Z*tau.
pub fn mock_rank2(
    big_k: u32,
    s: u32,
    tau: &ModularPoint,
    z1: Complex64,
    z2: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    if big_k == 0 || s == 0 {
        return Err(Error::Domain("mock_rank2 requires K >= 1 and s >= 1".into()));
    }
    let (dist, locus) = lattice_distance(z1, tau.tau());
    if dist < policy.pole_guard {
        return Err(Error::PoleProximity {
            locus: format!("z1 = {locus} (lattice Z - Z tau)"),
            distance: dist,
            guard: policy.pole_guard,
        });
    }
    let sf = s as f64;
    let kf = big_k as f64;
    let phase = z1 * sf + z2 * kf;
    // headroom for the 1/(2 pi guard) denominator amplification
    let tight = SeriesPolicy { tol: policy.tol * policy.pole_guard, ..*policy };
    let n_max = gaussian_series_bound(tau.im(), sf / 2.0, phase.im.abs(), &tight);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in -(n_max as i64)..=(n_max as i64) {
        let af = a as f64;
        let num = tau.q_pow(Complex64::new(sf * af * af / 2.0, 0.0)) * e2pi(phase * af);
        let den = 1.0 - (-Complex64::new(0.0, TWO_PI) * (z1 + tau.tau() * af)).exp();
        acc += num / den;
    }
    Ok(e2pi(t * kf) * acc)
}

/// S-image tau^{-1} Theta(-1/tau, z1/tau, z2/tau, t - (z|z)/(2 tau)) of
/// [`mock_rank2`], with the metric (z|z) = (s/K) z1^2 + 2 z1 z2 induced by
/// (alpha|alpha) = s/K.  `mock_rank2` minus this is holomorphic across the
/// z1 pole lattice.
pub fn mock_rank2_s_image(
    big_k: u32,
    s: u32,
    tau: &ModularPoint,
    z1: Complex64,
    z2: Complex64,
    t: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let st = tau.s_transform();
    let zz = z1 * z1 * (s as f64 / big_k as f64) + 2.0 * z1 * z2;
    let ts = t - zz / (2.0 * tau.tau());
    Ok(mock_rank2(big_k, s, &st, z1 / tau.tau(), z2 / tau.tau(), ts, policy)? / tau.tau())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::sqrt_minus_i_tau;

    fn mp(re: f64, im: f64) -> ModularPoint {
        ModularPoint::new(Complex64::new(re, im)).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn theta_index_reduces_mod_2k() {
        let a = ThetaIndex::new(-1, 2).unwrap();
        assert_eq!(a.j(), 3);
        let tau = mp(0.1, 0.8);
        let policy = SeriesPolicy::default();
        let z = c(0.21, 0.05);
        let v1 = theta_jm(a, &tau, z, ZERO, &policy).unwrap();
        let v2 = theta_jm(ThetaIndex::new(3, 2).unwrap(), &tau, z, ZERO, &policy).unwrap();
        assert!((v1 - v2).norm() < 1e-14);
    }

    #[test]
    fn theta_at_origin_symmetric_in_j() {
        let tau = mp(0.07, 1.1);
        let policy = SeriesPolicy::default();
        let v1 = theta_jm(ThetaIndex::new(1, 2).unwrap(), &tau, ZERO, ZERO, &policy).unwrap();
        let v2 = theta_jm(ThetaIndex::new(-1, 2).unwrap(), &tau, ZERO, ZERO, &policy).unwrap();
        assert!((v1 - v2).norm() < 1e-13);
    }

    #[test]
    fn theta_01_at_tau_i_direct_sum() {
        // Theta_{0,1}(i, 0) = sum_n e^{-2 pi n^2}, frozen from the direct sum
        let mut expect = 0.0f64;
        for n in -20i64..=20 {
            expect += (-TWO_PI * (n * n) as f64).exp();
        }
        assert!((expect - 1.003735).abs() < 1e-5);
        let v = theta_jm(ThetaIndex::new(0, 1).unwrap(), &mp(0.0, 1.0), ZERO, ZERO, &SeriesPolicy::default()).unwrap();
        assert!((v - c(expect, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn theta_t_prefactor() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let z = c(0.31, -0.07);
        for j in 0..4 {
            let idx = ThetaIndex::new(j, 2).unwrap();
            let v0 = theta_jm(idx, &tau, z, ZERO, &policy).unwrap();
            let vt = theta_jm(idx, &tau, z, c(0.25, 0.0), &policy).unwrap();
            // e^{2 pi i * 2 * 1/4} = e^{pi i} = -1
            assert!((vt + v0).norm() < 1e-12);
        }
    }

    #[test]
    fn vartheta11_odd_and_zero_at_origin() {
        let tau = mp(-0.21, 1.13);
        let policy = SeriesPolicy::default();
        let v = jacobi_theta(JacobiThetaKind::THETA11, &tau, ZERO, &policy).unwrap();
        assert!(v.norm() < 1e-13);
        let z = c(0.31, 0.11);
        let a = jacobi_theta(JacobiThetaKind::THETA11, &tau, z, &policy).unwrap();
        let b = jacobi_theta(JacobiThetaKind::THETA11, &tau, -z, &policy).unwrap();
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn vartheta00_at_i_direct_sum() {
        let mut expect = 0.0f64;
        for n in -20i64..=20 {
            expect += (-std::f64::consts::PI * (n * n) as f64).exp();
        }
        assert!((expect - 1.086435).abs() < 1e-5);
        let v = jacobi_theta(JacobiThetaKind::THETA00, &mp(0.0, 1.0), ZERO, &SeriesPolicy::default()).unwrap();
        assert!((v - c(expect, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn vartheta01_is_half_shifted_00() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let z = c(0.17, -0.08);
        let a = jacobi_theta(JacobiThetaKind::THETA01, &tau, z, &policy).unwrap();
        let b = jacobi_theta(JacobiThetaKind::THETA00, &tau, z + 0.5, &policy).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn eta_at_i_gamma_oracle() {
        // eta(i) = Gamma(1/4) / (2 pi^{3/4})
        let expect = libm::tgamma(0.25) / (2.0 * std::f64::consts::PI.powf(0.75));
        assert!((expect - 0.768225).abs() < 1e-6);
        let v = eta(&mp(0.0, 1.0), &SeriesPolicy::default()).unwrap();
        assert!((v - c(expect, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eta_t_law() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let lhs = eta(&tau.t_transform(), &policy).unwrap();
        let rhs = (Complex64::new(0.0, std::f64::consts::PI / 12.0)).exp() * eta(&tau, &policy).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn eta_s_law_at_half_i() {
        // eta(-1/tau) = sqrt(-i tau) eta(tau) checked at tau = i/2
        let tau = mp(0.0, 0.5);
        let policy = SeriesPolicy::default();
        let lhs = eta(&tau.s_transform(), &policy).unwrap();
        let rhs = sqrt_minus_i_tau(tau.tau()) * eta(&tau, &policy).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn product_matches_series_all_kinds() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let kind = JacobiThetaKind::new(a, b).unwrap();
            for &z in &[c(0.31, 0.11), c(-0.22, -0.14), c(0.05, 0.0)] {
                let s = jacobi_theta(kind, &tau, z, &policy).unwrap();
                let p = jacobi_theta_product(kind, &tau, z, &policy).unwrap();
                assert!((s - p).norm() < 1e-11, "kind ({a},{b}) z {z}: {s} vs {p}");
            }
        }
    }

    #[test]
    fn product_vartheta11_vanishes_at_origin() {
        let tau = mp(0.13, 0.92);
        let v = jacobi_theta_product(JacobiThetaKind::THETA11, &tau, ZERO, &SeriesPolicy::default()).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn mock_rank2_pole_rejected() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let z1 = c(1.0, 0.0) - tau.tau() + c(1e-5, 0.0);
        let r = mock_rank2(1, 2, &tau, z1, c(0.17, -0.08), ZERO, &policy);
        assert!(matches!(r, Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn mock_rank2_reindex_oracle() {
        // shifting the summation window must not change the value
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let z1 = c(0.31, 0.11);
        let z2 = c(0.17, -0.08);
        let t = c(0.05, 0.02);
        let direct = mock_rank2(1, 2, &tau, z1, z2, t, &policy).unwrap();
        let mut shifted = Complex64::new(0.0, 0.0);
        for a in -40i64..=41 {
            let af = a as f64;
            let num = tau.q_pow(c(af * af, 0.0)) * e2pi((z1 * 2.0 + z2) * af);
            let den = 1.0 - (-Complex64::new(0.0, TWO_PI) * (z1 + tau.tau() * af)).exp();
            shifted += num / den;
        }
        shifted *= e2pi(t);
        assert!((direct - shifted).norm() < 1e-10);
    }

    #[test]
    fn mock_rank2_s_difference_bounded_near_pole() {
        // residues of Theta - Theta|_S cancel, so the difference stays
        // moderate as the pole is approached down to the guard distance
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let z2 = c(0.17, -0.08);
        let t = c(0.05, 0.02);
        let far = c(0.4, 0.0);
        let g_far = (mock_rank2(1, 2, &tau, far, z2, t, &policy).unwrap()
            - mock_rank2_s_image(1, 2, &tau, far, z2, t, &policy).unwrap())
        .norm();
        let z1 = c(1.0, 0.0) - tau.tau() + c(3e-3, 1e-3);
        let direct = mock_rank2(1, 2, &tau, z1, z2, t, &policy).unwrap();
        let s_img = mock_rank2_s_image(1, 2, &tau, z1, z2, t, &policy).unwrap();
        assert!(direct.norm() > 100.0 * g_far);
        assert!((direct - s_img).norm() < 10.0 * direct.norm() / 100.0);
    }
}
