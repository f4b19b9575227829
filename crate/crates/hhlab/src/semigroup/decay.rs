use super::operator::{apply_semigroup, SemigroupOperator};
use crate::error::{Error, Result};
use crate::exponents::{DecayQuadruple, ProblemParams};
use crate::radialcore::{weighted_norm, RadialFunction};
use crate::regime::dissipative_admissible;

/// `per_decade` geometric points per decade from `t0` to `t1` inclusive.
pub fn geometric_times(t0: f64, t1: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(t0 > 0.0 && t1 > t0 && per_decade > 0) {
        return Err(Error::domain(format!("bad time range [{t0}, {t1}] with {per_decade} points per decade")));
    }
    let steps = ((t1 / t0).log10() * per_decade as f64).round().max(1.0) as usize;
    let ratio = (t1 / t0).ln() / steps as f64;
    Ok((0..=steps).map(|j| if j == steps { t1 } else { t0 * (ratio * j as f64).exp() }).collect())
}

/// Least-squares slope of `ln ‖e^{-tL_a} f‖_{L^{q₂}_{s₂}}` against `ln t`.
pub fn decay_slope(params: &ProblemParams, quad: &DecayQuadruple, f: &RadialFunction, times: &[f64]) -> Result<f64> {
    if !dissipative_admissible(params, quad) {
        return Err(Error::precondition("decay quadruple is not admissible for this operator"));
    }
    if times.len() < 2 {
        return Err(Error::domain("decay slope needs at least two times"));
    }
    let (q2, s2) = (quad.target.q(), quad.target.s());
    let mut pts = Vec::with_capacity(times.len());
    for &t in times {
        // These operators are used once; keep them out of the shared cache.
        let u = SemigroupOperator::build(params, t, f.grid())?.apply(f)?;
        pts.push((t.ln(), weighted_norm(&u, q2, s2, params.d())?.ln()));
    }
    Ok(least_squares_slope(&pts))
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Decay exponent read off from the dilation identity: with
/// `f_λ = f(·/λ)` sampled on the grid scaled by `λ`, the quotient
/// `‖e^{-tL}f‖_{L^{q₂}_{s₂}} / ‖f‖_{L^{q₁}_{s₁}}` at `(λ²t, f_λ)` equals the
/// one at `(t, f)` times `(λ²)^e`. Returns `e`.
pub fn probe_exponent(
    params: &ProblemParams,
    quad: &DecayQuadruple,
    f: &RadialFunction,
    t: f64,
    lambda: f64,
) -> Result<f64> {
    if !dissipative_admissible(params, quad) {
        return Err(Error::precondition("decay quadruple is not admissible for this operator"));
    }
    if !(lambda > 0.0 && lambda != 1.0) {
        return Err(Error::domain(format!("dilation factor must be positive and not 1, got {lambda}")));
    }
    let d = params.d();
    let quotient = |g: &RadialFunction, time: f64| -> Result<f64> {
        let out = apply_semigroup(params, time, g)?;
        Ok(weighted_norm(&out, quad.target.q(), quad.target.s(), d)?
            / weighted_norm(g, quad.source.q(), quad.source.s(), d)?)
    };
    let scaled_grid = f.grid().rescaled(lambda)?;
    let f_lambda = RadialFunction::new(scaled_grid, f.values().to_vec())?;
    let ratio = quotient(&f_lambda, lambda * lambda * t)? / quotient(f, t)?;
    Ok(ratio.ln() / (2.0 * lambda.ln()))
}
