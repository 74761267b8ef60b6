//! Exact integer q-expansion of Phi^[m](tau, z1, z2, 0) as a double series
//! over lattice exponents, with an analytic-evaluation oracle used in tests.

use crate::error::{Error, Result};
use crate::numerics::{e2pi, ModularPoint};
use num_complex::Complex64;
use num_rational::Ratio;
use std::collections::BTreeMap;

/// Key (power, a, b) of one monomial q^power e^{2 pi i (a z1 + b z2)};
/// power is an exact rational with denominator dividing m+1.
pub type QKey = (Ratio<i64>, i64, i64);

/// Exact coefficient table of Phi^[m](tau, z1, z2, 0) =
/// sum c_{p,a,b} q^p e^{2 pi i (a z1 + b z2)}.
#[derive(Debug, Clone, PartialEq)]
pub struct QExpansion {
    pub m: u32,
    pub max_power: Ratio<i64>,
    pub z_degree_bound: i64,
    pub entries: BTreeMap<QKey, i64>,
}

impl QExpansion {
    /// Coefficient lookup (0 for absent keys).
    pub fn coeff(&self, power: Ratio<i64>, a: i64, b: i64) -> i64 {
        self.entries.get(&(power, a, b)).copied().unwrap_or(0)
    }

    /// Numerically sums the table at a point.  The jk = 0 rays (which are
    /// infinite geometric series in one of the z-phases) are summed in closed
    /// form, so the result converges to Phi^[m] as max_power grows,
    /// independently of z_degree_bound.
    pub fn eval_with_closed_rays(&self, tau: &ModularPoint, z1: Complex64, z2: Complex64) -> Complex64 {
        let e1 = e2pi(z1);
        let e2 = e2pi(z2);
        // q^0 slice: sum_{j>=0} e1^j + sum_{k>=0} e2^k - 1
        let mut acc = (1.0 - e1).inv() + (1.0 - e2).inv() - 1.0;
        for (&(p, a, b), &cval) in &self.entries {
            if a == 0 || b == 0 {
                continue; // covered by the closed-form rays
            }
            let pf = *p.numer() as f64 / *p.denom() as f64;
            acc += cval as f64 * tau.q_pow(Complex64::new(pf, 0.0)) * e2pi(z1 * a as f64 + z2 * b as f64);
        }
        acc
    }
}

/// Double-sum expansion of Phi^[m](tau,z1,z2,0):
///   (sum_{j,k >= 0, (m+1) | min(j,k)}  -  sum_{j,k < 0, (m+1) | max(j,k)})
///   e^{2 pi i (j z1 + k z2)} q^{jk/(m+1)},
/// truncated to power <= max_power and |j|, |k| <= z_degree_bound.
pub fn phi_qexp(m: u32, max_power: Ratio<i64>, z_degree_bound: u32) -> Result<QExpansion> {
    if max_power < Ratio::new(0, 1) {
        return Err(Error::Domain("max_power must be nonnegative".into()));
    }
    if z_degree_bound == 0 {
        return Err(Error::Domain("z_degree_bound must be positive".into()));
    }
    let mp1 = (m + 1) as i64;
    let bound = z_degree_bound as i64;
    let mut entries: BTreeMap<QKey, i64> = BTreeMap::new();
    let mut add = |p: Ratio<i64>, a: i64, b: i64, c: i64| {
        let slot = entries.entry((p, a, b)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            entries.remove(&(p, a, b));
        }
    };
    for j in 0..=bound {
        for k in 0..=bound {
            if j.min(k) % mp1 != 0 {
                continue;
            }
            let p = Ratio::new(j * k, mp1);
            if p > max_power {
                continue;
            }
            add(p, j, k, 1);
        }
    }
    for j in -bound..0 {
        for k in -bound..0 {
            if j.max(k) % mp1 != 0 {
                continue;
            }
            let p = Ratio::new(j * k, mp1);
            if p > max_power {
                continue;
            }
            add(p, j, k, -1);
        }
    }
    Ok(QExpansion { m, max_power, z_degree_bound: bound, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mock::{phi, MockIndex, TorusPoint};
    use crate::numerics::SeriesPolicy;

    #[test]
    fn constant_term_is_one() {
        for m in [1u32, 2] {
            let q = phi_qexp(m, Ratio::new(3, 1), 8).unwrap();
            assert_eq!(q.coeff(Ratio::new(0, 1), 0, 0), 1);
        }
    }

    #[test]
    fn coefficients_symmetric_in_a_b() {
        for m in [1u32, 2, 3] {
            let q = phi_qexp(m, Ratio::new(6, 1), 14).unwrap();
            for (&(p, a, b), &c) in &q.entries {
                assert_eq!(c, q.coeff(p, b, a), "asymmetry at ({p},{a},{b})");
            }
        }
    }

    #[test]
    fn powers_nonnegative_and_denominator_divides_m_plus_1() {
        let m = 2u32;
        let q = phi_qexp(m, Ratio::new(5, 1), 12).unwrap();
        for &(p, _, _) in q.entries.keys() {
            assert!(p >= Ratio::new(0, 1));
            assert_eq!((m as i64 + 1) % *p.denom(), 0);
        }
    }

    #[test]
    fn analytic_evaluation_matches_phi() {
        // with the jk = 0 rays in closed form the truncated table reproduces
        // Phi to the q^{max_power+1} scale
        let tau = ModularPoint::new(Complex64::new(0.05, 1.2)).unwrap();
        let z1 = Complex64::new(0.31, 0.0);
        let z2 = Complex64::new(0.17, 0.0);
        let policy = SeriesPolicy::default();
        for m in [1u32, 2] {
            let q = phi_qexp(m, Ratio::new(12, 1), 16 * (m as u32 + 1)).unwrap();
            let table = q.eval_with_closed_rays(&tau, z1, z2);
            let exact = phi(
                MockIndex(m),
                &tau,
                &TorusPoint::new(z1, z2, Complex64::new(0.0, 0.0)),
                &policy,
            )
            .unwrap();
            assert!((table - exact).norm() < 1e-8, "m = {m}: {table} vs {exact}");
        }
    }
}
