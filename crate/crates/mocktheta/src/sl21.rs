//! Denominators, Psi-numerators and modified normalized (super)characters of
//! admissible affine sl(2|1) modules, in both twist conventions.

use crate::error::{Error, Result};
use crate::mock::{phi, phi_d0, phi_tilde, phi_tilde_d0, MockIndex, TorusPoint};
use crate::numerics::{e2pi, lattice_distance, ModularPoint, SeriesPolicy};
use crate::theta::{eta, jacobi_theta, JacobiThetaKind};
use num_complex::Complex64;
use num_rational::Ratio;

/// A flag valued in {0, 1/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfFlag {
    Zero,
    Half,
}

impl HalfFlag {
    pub fn value(self) -> f64 {
        match self {
            HalfFlag::Zero => 0.0,
            HalfFlag::Half => 0.5,
        }
    }

    /// 2*flag as an integer.
    pub fn doubled(self) -> i32 {
        match self {
            HalfFlag::Zero => 0,
            HalfFlag::Half => 1,
        }
    }

    pub fn flip(self) -> HalfFlag {
        match self {
            HalfFlag::Zero => HalfFlag::Half,
            HalfFlag::Half => HalfFlag::Zero,
        }
    }
}

/// (epsilon, epsilon'): epsilon = 1/2 selects the character, 0 the
/// supercharacter; epsilon' = 0 the untwisted, 1/2 the twisted sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sector {
    pub epsilon: HalfFlag,
    pub epsilon_prime: HalfFlag,
}

impl Sector {
    pub fn new(epsilon: HalfFlag, epsilon_prime: HalfFlag) -> Self {
        Sector { epsilon, epsilon_prime }
    }

    pub const ALL: [Sector; 4] = [
        Sector { epsilon: HalfFlag::Zero, epsilon_prime: HalfFlag::Zero },
        Sector { epsilon: HalfFlag::Half, epsilon_prime: HalfFlag::Zero },
        Sector { epsilon: HalfFlag::Zero, epsilon_prime: HalfFlag::Half },
        Sector { epsilon: HalfFlag::Half, epsilon_prime: HalfFlag::Half },
    ];

    /// vartheta kind (1-2eps', 1-2eps) appearing in the denominators.
    pub fn theta_kind(&self) -> JacobiThetaKind {
        JacobiThetaKind {
            a: (1 - self.epsilon_prime.doubled()) as u8,
            b: (1 - self.epsilon.doubled()) as u8,
        }
    }

    /// S swaps epsilon and epsilon'.
    pub fn swapped(&self) -> Sector {
        Sector { epsilon: self.epsilon_prime, epsilon_prime: self.epsilon }
    }
}

/// Distance from z to the zero set of vartheta_{ab}, which is the lattice
/// (1-b)/2 + ((1-a)/2) tau + Z + Z tau.
pub fn jacobi_zero_distance(kind: JacobiThetaKind, tau: Complex64, z: Complex64) -> f64 {
    let off = Complex64::new((1 - kind.b as i32) as f64 / 2.0, 0.0)
        + tau * ((1 - kind.a as i32) as f64 / 2.0);
    lattice_distance(z - off, tau).0
}

fn guard_theta_zero(
    kind: JacobiThetaKind,
    tau: &ModularPoint,
    z: Complex64,
    what: &str,
    policy: &SeriesPolicy,
) -> Result<()> {
    let d = jacobi_zero_distance(kind, tau.tau(), z);
    if d < policy.pole_guard {
        return Err(Error::ZeroDivisor { what: format!("{what} near zero of vartheta"), magnitude: d });
    }
    Ok(())
}

/// Normalized affine sl(2|1) denominator
///   R^(eps)_eps' = -(-1)^{2 eps (1-2 eps')} i e^{2 pi i t} eta^3
///                  vartheta_11(tau, z1+z2)
///                  / (vartheta_{1-2eps',1-2eps}(tau,z1) vartheta_{...}(tau,z2)).
pub fn denom_sl21(
    sector: Sector,
    tau: &ModularPoint,
    pt: &TorusPoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    policy.validate()?;
    let kind = sector.theta_kind();
    guard_theta_zero(kind, tau, pt.z1, "z1", policy)?;
    guard_theta_zero(kind, tau, pt.z2, "z2", policy)?;
    let sign = if sector.epsilon.doubled() * (1 - sector.epsilon_prime.doubled()) % 2 != 0 {
        -1.0
    } else {
        1.0
    };
    let eta3 = eta(tau, policy)?.powu(3);
    let num = jacobi_theta(JacobiThetaKind::THETA11, tau, pt.z1 + pt.z2, policy)?;
    let d1 = jacobi_theta(kind, tau, pt.z1, policy)?;
    let d2 = jacobi_theta(kind, tau, pt.z2, policy)?;
    Ok(-sign * Complex64::new(0.0, 1.0) * e2pi(pt.t) * eta3 * num / (d1 * d2))
}

/// The numerator building block
///   Psi^{[M,m;eps]}_{j,k} = q^{(m+1)jk/M} e^{2 pi i (m+1)(k z1 + j z2)/M}
///                           Phi^[m](M tau, z1 + j tau + eps, z2 + k tau + eps, t/M)
/// (or with Phi replaced by its modification), together with its termwise D0.
#[derive(Debug, Clone, Copy)]
pub struct PsiSpec {
    pub big_m: u32,
    pub m: u32,
    /// the z-shift epsilon in {0, 1/2} (character vs supercharacter)
    pub eps_shift: f64,
    pub modified: bool,
}

impl PsiSpec {
    pub fn validate(&self) -> Result<()> {
        if self.big_m == 0 {
            return Err(Error::InvalidLabel("M must be >= 1".into()));
        }
        if self.m > 0 && gcd(self.big_m as i64, 2 * self.m as i64 + 2) != 1 {
            return Err(Error::InvalidLabel(format!(
                "gcd(M, 2m+2) = gcd({}, {}) must be 1 for m > 0",
                self.big_m,
                2 * self.m + 2
            )));
        }
        Ok(())
    }

    /// t-frequency kappa of the numerator: e^{2 pi i kappa t}.
    pub fn kappa(&self) -> f64 {
        (self.m + 1) as f64 / self.big_m as f64
    }

    pub fn eval(
        &self,
        j: f64,
        k: f64,
        tau: &ModularPoint,
        pt: &TorusPoint,
        policy: &SeriesPolicy,
    ) -> Result<Complex64> {
        self.eval_impl(j, k, tau, pt, policy, false)
    }

    /// Termwise D0 = (1/2 pi i)(d/dz1 - d/dz2).
    pub fn eval_d0(
        &self,
        j: f64,
        k: f64,
        tau: &ModularPoint,
        pt: &TorusPoint,
        policy: &SeriesPolicy,
    ) -> Result<Complex64> {
        self.eval_impl(j, k, tau, pt, policy, true)
    }

    fn eval_impl(
        &self,
        mut j: f64,
        mut k: f64,
        tau: &ModularPoint,
        pt: &TorusPoint,
        policy: &SeriesPolicy,
        d0: bool,
    ) -> Result<Complex64> {
        self.validate()?;
        policy.validate()?;
        let big_m = self.big_m as f64;
        let mp1 = (self.m + 1) as f64;
        // elliptic reindexing into [0, M): legitimate for the modified
        // numerator, whose representative dependence is the explicit phase
        // e^{2 pi i (m+1) eps (j+k)/M}
        let mut compensation = Complex64::new(1.0, 0.0);
        if self.modified {
            let j0 = j - big_m * (j / big_m).floor();
            let k0 = k - big_m * (k / big_m).floor();
            compensation = e2pi(Complex64::new(mp1 * self.eps_shift * ((j - j0) + (k - k0)) / big_m, 0.0));
            j = j0;
            k = k0;
        }
        let scaled = tau.scale(big_m);
        let shifted = TorusPoint::new(
            pt.z1 + tau.tau() * j + self.eps_shift,
            pt.z2 + tau.tau() * k + self.eps_shift,
            pt.t / big_m,
        );
        let pref = tau.q_pow(Complex64::new(mp1 * j * k / big_m, 0.0))
            * e2pi((pt.z1 * k + pt.z2 * j) * (mp1 / big_m));
        let idx = MockIndex(self.m);
        let base = if self.modified {
            phi_tilde(idx, &scaled, &shifted, policy)?
        } else {
            phi(idx, &scaled, &shifted, policy)?
        };
        let val = if d0 {
            let inner = if self.modified {
                phi_tilde_d0(idx, &scaled, &shifted, policy)?
            } else {
                phi_d0(idx, &scaled, &shifted, policy)?
            };
            pref * (base * (mp1 * (k - j) / big_m) + inner)
        } else {
            pref * base
        };
        Ok(compensation * val)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Convenience wrapper matching the operation signature: the (possibly
/// modified) numerator Psi with explicit sector data.
#[allow(clippy::too_many_arguments)]
pub fn psi(
    big_m: u32,
    m: u32,
    eps: HalfFlag,
    j: f64,
    k: f64,
    tau: &ModularPoint,
    pt: &TorusPoint,
    policy: &SeriesPolicy,
    modified: bool,
) -> Result<Complex64> {
    PsiSpec { big_m, m, eps_shift: eps.value(), modified }.eval(j, k, tau, pt, policy)
}

/// The two admissible families of Prop 3.13 as specialized in the character
/// formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Type1,
    Type2,
}

/// Which twisting element the label's index maps refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistConvention {
    /// xi = -(alpha_1+alpha_2)/2: index maps of Prop 7.2.
    Xi,
    /// xi' = (alpha_1-alpha_2)/2: index maps of Prop 9.1 (signs of Eq (9.c)/(9.d)).
    XiPrime,
}

/// Lambda-coefficients (of Lambda_0, Lambda_1, Lambda_2) and level of one
/// admissible weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightData {
    pub j: u32,
    pub k: u32,
    pub family: Family,
    pub lambda: [Ratio<i64>; 3],
    pub level: Ratio<i64>,
}

/// Enumerates the admissible (j,k) labels of the chosen family with their
/// Lambda-coefficients: Type 1 has 0 <= j,k and j+k <= M-1; Type 2 has
/// 1 <= j,k and j+k <= M.
pub fn admissible_labels(big_m: u32, m: u32, family: Family) -> Result<Vec<WeightData>> {
    if big_m == 0 {
        return Err(Error::InvalidLabel("M must be >= 1".into()));
    }
    let mm = big_m as i64;
    let t = Ratio::new(m as i64 + 1, mm); // (m+1)/M
    let level = t - 1;
    let mut out = Vec::new();
    match family {
        Family::Type1 => {
            for j in 0..=(big_m - 1) {
                for k in 0..=(big_m - 1 - j) {
                    let (ji, ki) = (j as i64, k as i64);
                    out.push(WeightData {
                        j,
                        k,
                        family,
                        lambda: [t * (ji + ki + 1) - 1, -t * ji, -t * ki],
                        level,
                    });
                }
            }
        }
        Family::Type2 => {
            for j in 1..=big_m {
                for k in 1..=big_m.saturating_sub(j) {
                    let (ji, ki) = (j as i64, k as i64);
                    out.push(WeightData {
                        j,
                        k,
                        family,
                        lambda: [-(t * (ji + ki - 1) + 1), t * ji, t * ki],
                        level,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// One (modified) admissible character label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL21Label {
    pub big_m: u32,
    pub m: u32,
    pub j: u32,
    pub k: u32,
    pub sector: Sector,
    pub twist: TwistConvention,
    pub family: Family,
}

impl SL21Label {
    pub fn validate(&self) -> Result<()> {
        PsiSpec { big_m: self.big_m, m: self.m, eps_shift: 0.0, modified: true }.validate()?;
        match self.family {
            Family::Type1 => {
                if self.j + self.k > self.big_m - 1 {
                    return Err(Error::InvalidLabel(format!(
                        "type-1 label needs j+k <= M-1, got ({}, {}) at M = {}",
                        self.j, self.k, self.big_m
                    )));
                }
            }
            Family::Type2 => {
                if self.j < 1 || self.k < 1 || self.j + self.k > self.big_m {
                    return Err(Error::InvalidLabel(format!(
                        "type-2 label needs 1 <= j,k and j+k <= M, got ({}, {})",
                        self.j, self.k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Numerator index pair (J, K) and overall sign for this label.
    pub fn index_map(&self) -> (f64, f64, f64) {
        let me = self.big_m as f64;
        let ep = self.sector.epsilon_prime.value();
        let (jf, kf) = (self.j as f64, self.k as f64);
        match (self.twist, self.family) {
            (TwistConvention::Xi, Family::Type1) => (jf + ep, kf + ep, 1.0),
            (TwistConvention::Xi, Family::Type2) => (me + ep - jf, me + ep - kf, 1.0),
            (TwistConvention::XiPrime, Family::Type1) => (jf + ep, kf - ep, 1.0),
            (TwistConvention::XiPrime, Family::Type2) => (me + ep - jf, me - ep - kf, -1.0),
        }
    }
}

/// Modified normalized (super)character of one admissible module:
/// the modified numerator divided by [`denom_sl21`] (with the xi'-convention
/// sign adjustment in the (1/2,1/2) sector).
pub fn char_tilde_sl21(
    label: &SL21Label,
    tau: &ModularPoint,
    pt: &TorusPoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    label.validate()?;
    let (j, k, sign) = label.index_map();
    let spec = PsiSpec {
        big_m: label.big_m,
        m: label.m,
        eps_shift: label.sector.epsilon.value(),
        modified: true,
    };
    let num = spec.eval(j, k, tau, pt, policy)?;
    let mut den = denom_sl21(label.sector, tau, pt, policy)?;
    if label.twist == TwistConvention::XiPrime
        && label.sector.epsilon == HalfFlag::Half
        && label.sector.epsilon_prime == HalfFlag::Half
    {
        den = -den;
    }
    Ok(sign * num / den)
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

    fn pt() -> TorusPoint {
        TorusPoint::new(c(0.31, 0.11), c(0.17, -0.08), c(0.05, 0.02))
    }

    #[test]
    fn denominator_equals_phi0() {
        // Ramanujan summation: Phi^[0] = R^(0)_0
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let sector = Sector::new(HalfFlag::Zero, HalfFlag::Zero);
        let den = denom_sl21(sector, &tau, &pt(), &policy).unwrap();
        let ph = phi(MockIndex(0), &tau, &pt(), &policy).unwrap();
        assert!((den - ph).norm() < 1e-11, "{den} vs {ph}");
    }

    #[test]
    fn psi_at_m1_reduces_to_phi() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        for m in [0u32, 1, 2] {
            let v = psi(1, m, HalfFlag::Zero, 0.0, 0.0, &tau, &pt(), &policy, false).unwrap();
            let ph = phi(MockIndex(m), &tau, &pt(), &policy).unwrap();
            assert!((v - ph).norm() < 1e-11);
        }
    }

    #[test]
    fn psi_tilde_reindexing_phase() {
        // e^{2 pi i (m+1) eps (j+k)/M} Psi~ is independent of j,k mod M
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let (big_m, m) = (3u32, 1u32);
        for eps in [HalfFlag::Zero, HalfFlag::Half] {
            let spec = PsiSpec { big_m, m, eps_shift: eps.value(), modified: true };
            let a = spec.eval(1.0, 2.0, &tau, &pt(), &policy).unwrap();
            let b = spec.eval(4.0, 2.0, &tau, &pt(), &policy).unwrap();
            let phase = |j: f64, k: f64| {
                e2pi(c((m as f64 + 1.0) * eps.value() * (j + k) / big_m as f64, 0.0))
            };
            let lhs = phase(1.0, 2.0) * a;
            let rhs = phase(4.0, 2.0) * b;
            assert!((lhs - rhs).norm() < 1e-10, "eps {eps:?}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn label_counts() {
        assert_eq!(admissible_labels(1, 0, Family::Type1).unwrap().len(), 1);
        assert_eq!(admissible_labels(3, 1, Family::Type1).unwrap().len(), 6);
        assert_eq!(admissible_labels(3, 1, Family::Type2).unwrap().len(), 3);
    }

    #[test]
    fn label_weights_level() {
        let labels = admissible_labels(3, 1, Family::Type1).unwrap();
        for l in &labels {
            assert_eq!(l.level, Ratio::new(2, 3) - 1);
        }
        // vacuum label (0,0): Lambda = ((0+0+1)(m+1)/M - 1) Lambda_0
        let vac = labels.iter().find(|l| l.j == 0 && l.k == 0).unwrap();
        assert_eq!(vac.lambda[0], Ratio::new(2, 3) - 1);
        assert_eq!(vac.lambda[1], Ratio::new(0, 1));
    }

    #[test]
    fn gcd_violation_rejected() {
        let spec = PsiSpec { big_m: 2, m: 1, eps_shift: 0.0, modified: false };
        assert!(matches!(spec.validate(), Err(Error::InvalidLabel(_))));
        // m = 0 admits every M
        let spec = PsiSpec { big_m: 2, m: 0, eps_shift: 0.0, modified: false };
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn m0_modified_equals_unmodified() {
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let spec_u = PsiSpec { big_m: 3, m: 0, eps_shift: 0.0, modified: false };
        let spec_t = PsiSpec { big_m: 3, m: 0, eps_shift: 0.0, modified: true };
        let a = spec_u.eval(1.0, 2.0, &tau, &pt(), &policy).unwrap();
        let b = spec_t.eval(1.0, 2.0, &tau, &pt(), &policy).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn char_tilde_rejects_bad_window() {
        let label = SL21Label {
            big_m: 3,
            m: 1,
            j: 2,
            k: 2,
            sector: Sector::new(HalfFlag::Zero, HalfFlag::Zero),
            twist: TwistConvention::Xi,
            family: Family::Type1,
        };
        let tau = mp(0.13, 0.92);
        assert!(matches!(
            char_tilde_sl21(&label, &tau, &pt(), &SeriesPolicy::default()),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn type2_maps_into_type1_window() {
        // Prop 7.2(b): a type-2 label evaluates through (M+eps'-j, M+eps'-k)
        let tau = mp(0.13, 0.92);
        let policy = SeriesPolicy::default();
        let label = SL21Label {
            big_m: 3,
            m: 1,
            j: 1,
            k: 2,
            sector: Sector::new(HalfFlag::Zero, HalfFlag::Zero),
            twist: TwistConvention::Xi,
            family: Family::Type2,
        };
        let direct = char_tilde_sl21(&label, &tau, &pt(), &policy).unwrap();
        let spec = PsiSpec { big_m: 3, m: 1, eps_shift: 0.0, modified: true };
        let num = spec.eval(2.0, 1.0, &tau, &pt(), &policy).unwrap();
        let den = denom_sl21(label.sector, &tau, &pt(), &policy).unwrap();
        assert!((direct - num / den).norm() < 1e-11);
    }
}
