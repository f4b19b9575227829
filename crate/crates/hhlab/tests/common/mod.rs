//! Oracles shared by the kernel tests and the acceptance run.
#![allow(dead_code)]

use std::f64::consts::PI;

use hhlab::besselkernel::{sphere_area, RadialKernel};
use hhlab::exponents::indicial_roots;
use hhlab::{Num, ProblemParams};

/// `(4πt)^{-3/2} (2t/(rρ)) e^{-(r²+ρ²)/(4t)} sinh(rρ/(2t))`, written with
/// `-expm1(-2z)` so that it stays finite.
pub fn gaussian_spherical_mean(t: f64, r: f64, rho: f64) -> f64 {
    let z = r * rho / (2.0 * t);
    (4.0 * PI * t).powf(-1.5) / (2.0 * z) * (-(r - rho).powi(2) / (4.0 * t)).exp() * -(-2.0 * z).exp_m1()
}

fn legendre5() -> ([f64; 5], [f64; 5]) {
    let a = (5.0 - 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
    let b = (5.0 + 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
    let wa = (322.0 + 13.0 * 70f64.sqrt()) / 900.0;
    let wb = (322.0 - 13.0 * 70f64.sqrt()) / 900.0;
    ([-b, -a, 0.0, a, b], [wb, wa, 128.0 / 225.0, wa, wb])
}

/// `|S^{d-1}| ∫ G(t, r, ρ) ρ^{d-1} dρ` by composite Gauss–Legendre over the
/// Gaussian bump in ρ.
pub fn kernel_mass(k: &RadialKernel, r: f64) -> f64 {
    let d = k.params().d();
    let width = k.t().sqrt() * 40.0;
    let (lo, hi) = ((r - width).max(0.0), r + width);
    let panels = 4000;
    let (x, w) = legendre5();
    let step = (hi - lo) / panels as f64;
    let mut sum = 0.0;
    for i in 0..panels {
        let a = lo + i as f64 * step;
        for (xi, wi) in x.iter().zip(&w) {
            let rho = a + 0.5 * step * (1.0 + xi);
            sum += 0.5 * step * wi * k.eval(r, rho) * rho.powi(d as i32 - 1);
        }
    }
    sphere_area(d) * sum
}

/// Gaussian widths of the lower and upper sandwich bounds.
pub const SANDWICH_C: (f64, f64) = (3.0, 6.0);

/// Frozen sandwich brackets `(a, lower, upper)` for `d = 3`.
pub fn sandwich_cases() -> [(Num, f64, f64); 3] {
    [(Num::ratio(-15, 64), 1.06, 1.98), (Num::ratio(3, 4), 0.35, 0.83), (Num::int(5), 0.022, 0.83)]
}

/// `G_ν` divided by the spherical average of the pointwise bound
/// `(1∨√t/|x|)^{σ₋}(1∨√t/|y|)^{σ₋} t^{-d/2} e^{-|x-y|²/(ct)}`. The Gaussian
/// average is the free radial kernel at time `ct/4` times `(πct)^{d/2}`; the
/// constant is normalised so that `c = 4`, `a = 0` gives exactly 1.
pub fn sandwich_ratio(p: &ProblemParams, c: f64, t: f64, r: f64, rho: f64) -> f64 {
    let free = ProblemParams::new(p.d(), 0, 0, 2, 1).unwrap();
    let (sigma, _) = indicial_roots(p);
    let weight = |x: f64| (t.sqrt() / x).max(1.0).powf(sigma);
    let d = p.d() as f64;
    let averaged = RadialKernel::new(&free, c * t / 4.0).unwrap();
    let ln_bound = weight(r).ln() + weight(rho).ln() + 0.5 * d * (c / 4.0).ln() + averaged.ln_eval(r, rho);
    let ln_g = RadialKernel::new(p, t).unwrap().ln_eval(r, rho);
    (ln_g - ln_bound).exp()
}
