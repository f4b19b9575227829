use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// Smallest argument at which the large-argument expansion takes over; the
/// actual switch point for order `ν` is `max(SERIES_SEAM, ν²/2)`.
pub const SERIES_SEAM: f64 = 25.0;

const REL_EPS: f64 = 1e-17;
const MAX_ASYMPTOTIC_TERMS: usize = 400;

/// `z ↦ e^{-z} I_ν(z)` for a fixed order `ν ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledBessel {
    nu: f64,
    seam: f64,
}

impl ScaledBessel {
    pub fn new(nu: f64) -> Result<ScaledBessel> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::domain(format!("Bessel order nu = {nu} must be finite and nonnegative")));
        }
        Ok(ScaledBessel { nu, seam: SERIES_SEAM.max(nu * nu / 2.0) })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Argument at which evaluation switches from the power series to the
    /// asymptotic expansion.
    pub fn seam(&self) -> f64 {
        self.seam
    }

    /// `e^{-z} I_ν(z)`; `z` must be nonnegative.
    pub fn eval(&self, z: f64) -> f64 {
        if z == 0.0 {
            return if self.nu == 0.0 { 1.0 } else { 0.0 };
        }
        if z <= self.seam {
            let (ln_peak, sum) = self.series_parts(z);
            ln_peak.exp() * sum
        } else {
            self.asymptotic(z)
        }
    }

    /// `ln(e^{-z} I_ν(z))`, finite even where the value underflows.
    pub fn ln_eval(&self, z: f64) -> f64 {
        if z == 0.0 {
            return if self.nu == 0.0 { 0.0 } else { f64::NEG_INFINITY };
        }
        if z <= self.seam {
            let (ln_peak, sum) = self.series_parts(z);
            ln_peak + sum.ln()
        } else {
            self.asymptotic(z).ln()
        }
    }

    /// The power series `Σ (z/2)^{ν+2m} / (m! Γ(ν+m+1))`, scaled by `e^{-z}`,
    /// evaluated regardless of the seam.
    pub fn series(&self, z: f64) -> f64 {
        let (ln_peak, sum) = self.series_parts(z);
        ln_peak.exp() * sum
    }

    /// Returns `(ln t*, Σ t_m / t*)` where `t*` is the largest series term.
    /// Summing outward from the peak with the term ratio keeps every partial
    /// sum in range for any `(ν, z)`.
    fn series_parts(&self, z: f64) -> (f64, f64) {
        let nu = self.nu;
        let y = 0.5 * z;
        let y2 = y * y;
        let ln_y = y.ln();
        let peak = ((-nu + (nu * nu + z * z).sqrt()) * 0.5).floor().max(0.0);
        let ln_term = |m: f64| (nu + 2.0 * m) * ln_y - ln_gamma(m + 1.0) - ln_gamma(nu + m + 1.0) - z;
        let ln_peak = ln_term(peak);
        let mut sum = 1.0;
        let mut term = 1.0;
        let mut m = peak;
        loop {
            term *= y2 / ((m + 1.0) * (nu + m + 1.0));
            sum += term;
            m += 1.0;
            if term < REL_EPS * sum {
                break;
            }
        }
        let mut term = 1.0;
        let mut m = peak;
        while m >= 1.0 {
            term *= m * (nu + m) / y2;
            sum += term;
            m -= 1.0;
            if term < REL_EPS * sum {
                break;
            }
        }
        (ln_peak, sum)
    }

    /// Hankel expansion `(2πz)^{-1/2} Σ_k (-1)^k a_k(ν) z^{-k}`, truncated at
    /// the smallest term.
    pub fn asymptotic(&self, z: f64) -> f64 {
        let mu4 = 4.0 * self.nu * self.nu;
        let mut sum = 1.0;
        let mut term = 1.0f64;
        for k in 1..MAX_ASYMPTOTIC_TERMS {
            let odd = (2 * k - 1) as f64;
            let next = -term * (mu4 - odd * odd) / (8.0 * k as f64 * z);
            if next.abs() > term.abs() && k > 1 {
                break;
            }
            term = next;
            sum += term;
            if term.abs() < REL_EPS * sum.abs() {
                break;
            }
        }
        sum / (2.0 * std::f64::consts::PI * z).sqrt()
    }
}

/// `e^{-z} I_ν(z)` for `ν ≥ 0`, `z ≥ 0`.
pub fn bessel_i_scaled(nu: f64, z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::domain(format!("Bessel argument z = {z} must be nonnegative")));
    }
    Ok(ScaledBessel::new(nu)?.eval(z))
}

/// `ln(e^{-z} I_ν(z))` for `ν ≥ 0`, `z ≥ 0`.
pub fn ln_bessel_i_scaled(nu: f64, z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::domain(format!("Bessel argument z = {z} must be nonnegative")));
    }
    Ok(ScaledBessel::new(nu)?.ln_eval(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn half_order_closed_form() {
        for &z in &[1e-4, 0.3, 1.0, 7.5, 24.0, 26.0, 300.0, 1e5] {
            // e^{-z} sqrt(2/(πz)) sinh z, written to avoid overflow.
            let exact = (2.0 / (std::f64::consts::PI * z)).sqrt() * 0.5 * (1.0 - (-2.0 * z).exp());
            let got = bessel_i_scaled(0.5, z).unwrap();
            assert!((got - exact).abs() <= 1e-13 * exact, "z = {z}: {got} vs {exact}");
        }
        assert!((bessel_i_scaled(0.5, 1.0).unwrap() - 0.344_951_313_888_245).abs() < 1e-14);
    }

    #[test]
    fn values_at_zero_and_domain_errors() {
        assert_eq!(bessel_i_scaled(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i_scaled(2.0, 0.0).unwrap(), 0.0);
        assert!(bessel_i_scaled(-0.5, 1.0).is_err());
        assert!(bessel_i_scaled(1.0, -1.0).is_err());
        assert!(bessel_i_scaled(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn branches_agree_on_the_seam() {
        for &nu in &[0.0, 0.125, 0.5, 1.0, 2.5, 3.7, 7.0, 10.0, 20.0, 35.0, 50.0] {
            let b = ScaledBessel::new(nu).unwrap();
            for &f in &[1.0, 1.02, 1.1] {
                let z = b.seam() * f;
                let (s, a) = (b.series(z), b.asymptotic(z));
                assert!((s - a).abs() <= 1e-11 * s, "nu = {nu}, z = {z}: {s} vs {a}");
            }
        }
    }

    #[test]
    fn order_recurrence() {
        // I_{ν-1}(z) - I_{ν+1}(z) = (2ν/z) I_ν(z).
        for &nu in &[1.0, 1.5, 3.2, 9.0] {
            for &z in &[0.01, 0.9, 12.0, 24.9, 25.1, 80.0, 4e3] {
                let f = |n: f64| bessel_i_scaled(n, z).unwrap();
                let lhs = f(nu - 1.0) - f(nu + 1.0);
                let rhs = 2.0 * nu / z * f(nu);
                assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(f(nu - 1.0)), "nu={nu} z={z}");
            }
        }
    }

    proptest! {
        #[test]
        fn finite_and_positive_where_representable(nu in 0.0f64..50.0, log_z in -8.0f64..8.0) {
            let z = 10f64.powf(log_z);
            let b = ScaledBessel::new(nu).unwrap();
            let v = b.eval(z);
            let lv = b.ln_eval(z);
            prop_assert!(v.is_finite() && v >= 0.0);
            prop_assert!(lv.is_finite());
            if lv > -700.0 {
                prop_assert!(v > 0.0);
                prop_assert!((v.ln() - lv).abs() < 1e-12 * lv.abs().max(1.0));
            }
            // e^{-z} I_ν(z) ≤ 1 and decreases in ν.
            prop_assert!(v <= 1.0 + 1e-15);
            prop_assert!(ScaledBessel::new(nu + 0.5).unwrap().eval(z) <= v * (1.0 + 1e-12));
        }
    }
}
