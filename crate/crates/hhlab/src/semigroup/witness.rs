//! Numerical counterexamples showing that the dissipative estimate fails
//! outside the admissible range.

use super::operator::SemigroupOperator;
use crate::error::{Error, Result};
use crate::exponents::{DecayQuadruple, ProblemParams};
use crate::radialcore::{smooth_bump, weighted_norm, RadialFunction, RadialGrid};

/// Truncation radii at which the origin witness reports norms.
pub const ORIGIN_RADII: [f64; 4] = [1e-3, 1e-4, 1e-5, 1e-6];

/// Translation radii of the annulus witness.
pub const TRANSLATION_RADII: [f64; 4] = [4.0, 8.0, 16.0, 32.0];

/// Divergence of `‖e^{-L_a} f‖_{L^{q₂}_{s₂}(r > r_min)}` as `r_min ↓ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OriginWitness {
    pub theta: f64,
    pub r_mins: Vec<f64>,
    /// Truncated norms over `[r_min, 10]`.
    pub norms: Vec<f64>,
    /// `∫ |r^{s₂}u|^{q₂} r^{d-1} dr` (times the sphere area) over each
    /// decade `[r_min, 10 r_min]`.
    pub decade_increments: Vec<f64>,
    /// Mean of `log₁₀` of successive decade increment ratios.
    pub measured_exponent: f64,
    /// `q₂(σ₋ - s₂ - d/q₂)`, the power of `1/r_min` in the truncated integral.
    pub predicted_exponent: f64,
    /// Log-log slope of the output on `[1e-5, 1e-3]`, to compare with `-σ₋`.
    pub origin_slope: f64,
}

/// Runs the origin witness for a quadruple whose target violates
/// `σ₋ < s₂ + d/q₂`.
pub fn necessity_witness_origin(params: &ProblemParams, quad: &DecayQuadruple) -> Result<OriginWitness> {
    let d = params.d();
    let sm = params.sigma_minus();
    let (q2, s2) = (quad.target.q(), quad.target.s());
    let tau2 = quad.target.tau(d);
    if sm < tau2 {
        return Err(Error::precondition(format!(
            "sigma_- = {sm} < s_2 + d/q_2 = {tau2}: the origin condition holds, nothing to witness"
        )));
    }
    let theta = (sm - d as f64).max(0.0) + 1.0;
    // 64 nodes per decade, decades landing on nodes.
    let grid = RadialGrid::new(1e-7, 1e1, 8 * 64 + 1)?;
    let f = RadialFunction::from_fn(grid.clone(), |r| r.powf(theta) * smooth_bump(r))?;
    let u = SemigroupOperator::build(params, 1.0, &grid)?.apply(&f)?;

    let nodes = grid.nodes();
    let h = grid.h();
    let area = crate::besselkernel::sphere_area(d);
    let density: Vec<f64> =
        nodes.iter().zip(u.values()).map(|(&r, &v)| area * (r.powf(s2) * v).abs().powf(q2) * r.powi(d as i32)).collect();
    let index_of = |r: f64| ((r / nodes[0]).ln() / h).round() as usize;
    let trapezoid = |i0: usize, i1: usize| -> f64 {
        h * (density[i0..=i1].iter().sum::<f64>() - 0.5 * (density[i0] + density[i1]))
    };
    let top = grid.len() - 1;
    let r_mins = ORIGIN_RADII.to_vec();
    let norms: Vec<f64> = r_mins.iter().map(|&r| trapezoid(index_of(r), top).powf(1.0 / q2)).collect();
    let decade_increments: Vec<f64> = r_mins.iter().map(|&r| trapezoid(index_of(r), index_of(10.0 * r))).collect();
    let ratios: Vec<f64> = decade_increments.windows(2).map(|w| (w[1] / w[0]).log10()).collect();
    let measured_exponent = ratios.iter().sum::<f64>() / ratios.len() as f64;

    let (i_a, i_b) = (index_of(1e-5), index_of(1e-3));
    let origin_slope = (u.values()[i_b].ln() - u.values()[i_a].ln()) / (nodes[i_b].ln() - nodes[i_a].ln());
    Ok(OriginWitness {
        theta,
        r_mins,
        norms,
        decade_increments,
        measured_exponent,
        predicted_exponent: q2 * (sm - tau2),
        origin_slope,
    })
}

/// Growth of the norm quotient for data concentrated near radius `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationWitness {
    pub taus: Vec<f64>,
    /// `‖e^{-L_a} f_τ‖_{L^{q₂}_{s₂}} / ‖f_τ‖_{L^{q₁}_{s₁}}`.
    pub quotients: Vec<f64>,
    /// Quotients times `τ^{-(d-1)(1/q₂ - 1/q₁)}`, removing the surface
    /// growth of an annulus relative to a translated ball.
    pub corrected: Vec<f64>,
    /// `corrected[j+1] / corrected[j]`.
    pub growth: Vec<f64>,
    /// `2^{s₂ - s₁}`, the predicted growth per doubling of `τ`.
    pub predicted_growth: f64,
}

/// Runs the translation witness for `s₂ > s₁`. The translate of a bump is
/// replaced by a radial annulus of half-width 1 around radius `τ`.
pub fn necessity_witness_translation(
    params: &ProblemParams,
    s1: f64,
    s2: f64,
    q1: f64,
    q2: f64,
) -> Result<TranslationWitness> {
    if !(s2 > s1) {
        return Err(Error::precondition(format!("s_2 = {s2} must exceed s_1 = {s1} for the translation witness")));
    }
    if !(q1 > 1.0 && q2 > 1.0) {
        return Err(Error::domain("translation witness needs finite exponents above 1"));
    }
    let d = params.d();
    let grid = RadialGrid::new(1e-2, 1e2, 1843)?;
    let op = SemigroupOperator::build(params, 1.0, &grid)?;
    let geometry = (d as f64 - 1.0) * (1.0 / q2 - 1.0 / q1);
    let mut quotients = Vec::new();
    let mut corrected = Vec::new();
    for &tau in &TRANSLATION_RADII {
        let f = RadialFunction::from_fn(grid.clone(), |r| smooth_bump((r - tau).abs()))?;
        let u = op.apply(&f)?;
        let q = weighted_norm(&u, q2, s2, d)? / weighted_norm(&f, q1, s1, d)?;
        quotients.push(q);
        corrected.push(q * tau.powf(-geometry));
    }
    let growth = corrected.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(TranslationWitness {
        taus: TRANSLATION_RADII.to_vec(),
        quotients,
        corrected,
        growth,
        predicted_growth: 2f64.powf(s2 - s1),
    })
}
