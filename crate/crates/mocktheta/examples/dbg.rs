use mocktheta::mock::{h_zw, r_zw};
use mocktheta::numerics::{contour_integral, GaussianDecay, ModularPoint, SeriesPolicy, TWO_PI};
use num_complex::Complex64;
use std::f64::consts::PI;

type C = Complex64;
fn cr(x: f64) -> C { C::new(x, 0.0) }
fn e(x: C) -> C { (C::new(0.0, TWO_PI) * x).exp() }

fn main() {
    let pol = SeriesPolicy::default();
    let tau = ModularPoint::new(C::new(0.13, 0.92)).unwrap();
    let v = C::new(0.27, 0.09);
    let m = 1u32;
    let mp1 = (m + 1) as f64;
    for j in 1..=(2 * m as i64 + 1) {
        let jf = j as f64;
        let s_up = jf / (2.0 * mp1);
        let pref = (C::new(0.0, -PI * jf * jf / (2.0 * mp1)) * tau.tau()
            + C::new(0.0, TWO_PI * jf) * v).exp();
        let integrand = |x: C| -> C {
            let g = C::new(0.0, TWO_PI * mp1) * tau.tau() * x * x - 4.0 * PI * mp1 * v * x
                + TWO_PI * jf * tau.tau() * x;
            g.exp() / (1.0 - (TWO_PI * x).exp())
        };
        let rate = TWO_PI * mp1 * tau.im();
        let center = |sigma: f64| -> f64 {
            let b = -2.0 * TWO_PI * mp1 * sigma * tau.tau().re - 4.0 * PI * mp1 * v.re
                + TWO_PI * jf * tau.tau().re;
            b / (2.0 * rate)
        };
        let up = contour_integral(integrand, s_up, GaussianDecay { rate, center: center(s_up) }, &pol).unwrap();
        let h = h_zw(m + 1, 2 * m as i64 + 2 - j, &tau, v, &pol).unwrap();
        println!("j={j}: i*pref*up = {:?}  h = {:?}  diff={:.3e}",
            C::new(0.0,1.0)*pref*up, h, (C::new(0.0,1.0)*pref*up - h).norm());
    }
    // L6.3a dbg
    let big_m = 3i64;
    let m = 1u32;
    let mp1f = 2.0;
    let period = 4i64;
    let iset = [0i64, -2, -1];
    let scaled = tau.scale(big_m as f64);
    let down = tau.scale(1.0 / big_m as f64);
    for j in 0..period {
        let j0 = (0..period).find(|&c| (j - big_m * c).rem_euclid(period) == 0).unwrap();
        let lhs = r_zw(m + 1, j, &down, v / big_m as f64, &pol).unwrap();
        let mut sum = C::new(0.0, 0.0);
        for &b in iset.iter() {
            let bf = b as f64;
            sum += tau.q_pow(cr(-mp1f * bf * bf / big_m as f64))
                * e(-v * 2.0 * mp1f * bf / big_m as f64)
                * r_zw(m + 1, j0, &scaled, v + tau.tau() * bf, &pol).unwrap();
        }
        println!("L6.3a j={j} (j0={j0}): lhs={lhs:?} sum={sum:?} diff={:.3e}", (lhs-sum).norm());
    }
}
