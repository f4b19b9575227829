use std::f64::consts::PI;

use super::bessel::ScaledBessel;
use crate::error::{Error, Result};
use crate::exponents::ProblemParams;

/// Surface measure `|S^{d-1}| = 2π^{d/2}/Γ(d/2)`.
pub fn sphere_area(d: u32) -> f64 {
    // |S^0| = 2, |S^1| = 2π, and |S^{d+1}| = 2π |S^{d-1}| / d.
    let (mut area, mut dim) = if d % 2 == 1 { (2.0, 1) } else { (2.0 * PI, 2) };
    while dim < d {
        area *= 2.0 * PI / dim as f64;
        dim += 2;
    }
    area
}

/// Radial heat kernel of `L_a` at a fixed time `t`:
///
/// `G(t, r, ρ) = |S^{d-1}|^{-1} (2t)^{-1} (rρ)^{-(d-2)/2} e^{-(r-ρ)²/(4t)} · e^{-z} I_ν(z)`,
/// `z = rρ/(2t)`.
///
/// `G` is the average of the full kernel `g_a(t, x, y)` over `|y| = ρ`, so
/// that `e^{-tL_a} f(r) = |S^{d-1}| ∫₀^∞ G(t, r, ρ) f(ρ) ρ^{d-1} dρ` for
/// radial `f`.
#[derive(Clone, Debug)]
pub struct RadialKernel {
    params: ProblemParams,
    t: f64,
    bessel: ScaledBessel,
    half_dm2: f64,
    ln_prefactor: f64,
    prefactor: f64,
    inv_4t: f64,
}

impl RadialKernel {
    pub fn new(params: &ProblemParams, t: f64) -> Result<RadialKernel> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("kernel time t = {t} must be positive")));
        }
        Ok(RadialKernel {
            params: *params,
            t,
            bessel: ScaledBessel::new(params.nu())?,
            half_dm2: (params.d() as f64 - 2.0) / 2.0,
            ln_prefactor: -sphere_area(params.d()).ln() - (2.0 * t).ln(),
            prefactor: 1.0 / (sphere_area(params.d()) * 2.0 * t),
            inv_4t: 0.25 / t,
        })
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Kernel value; `r` and `rho` must be positive (not checked).
    #[inline]
    pub fn eval(&self, r: f64, rho: f64) -> f64 {
        let diff = r - rho;
        let gauss_exp = -diff * diff * self.inv_4t;
        if gauss_exp < -745.0 {
            return 0.0;
        }
        let rr = r * rho;
        let z = 2.0 * rr * self.inv_4t;
        let b = self.bessel.eval(z);
        let pref = if self.half_dm2 == 0.5 { rr.sqrt().recip() } else { rr.powf(-self.half_dm2) };
        let value = self.prefactor * pref * gauss_exp.exp() * b;
        if value > 1e-280 && value.is_finite() {
            value
        } else {
            self.ln_eval(r, rho).exp()
        }
    }

    /// Logarithm of the kernel value.
    pub fn ln_eval(&self, r: f64, rho: f64) -> f64 {
        let diff = r - rho;
        let rr = r * rho;
        self.ln_prefactor - self.half_dm2 * rr.ln() - diff * diff * self.inv_4t
            + self.bessel.ln_eval(2.0 * rr * self.inv_4t)
    }
}

/// Checked kernel evaluation.
pub fn kernel_eval(k: &RadialKernel, r: f64, rho: f64) -> Result<f64> {
    if !(r > 0.0 && rho > 0.0) || !r.is_finite() || !rho.is_finite() {
        return Err(Error::domain(format!("kernel arguments r = {r}, rho = {rho} must be positive")));
    }
    Ok(k.eval(r, rho))
}
