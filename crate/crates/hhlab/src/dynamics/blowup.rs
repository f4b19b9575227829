//! Lifespan of solutions with data `λ|x|^{-β}1_{|x|≤1}`.
//!
//! A run on `[0, T]` marches through the lattice frames in order: the
//! Duhamel sum for frame `k` splits into quadrature nodes whose times fall
//! before the previous frame (fixed) and the rest, which depend on `u(t_k)`
//! itself and are resolved by a local fixed-point iteration. This is the same
//! discrete equation the global Picard iteration solves, but it does not need
//! the map to contract on the whole interval, so large defocusing solutions
//! are followed without spurious failures. A run fails when the local
//! iteration diverges, a value stops being finite, or the `L^q_s` norm
//! reaches the blow-up threshold. The lifespan `T̂` is bracketed by the first
//! failing frame and refined by bisection over reruns anchored at the trial
//! horizon.

use std::sync::Arc;

use rayon::prelude::*;

use super::duhamel::{DuhamelOperator, Frames, KatoExponents, TimeGrid};
use super::nonlinearity::NonlinearitySpec;
use crate::error::{Error, Result};
use crate::exponents::{lifespan_kappa, ProblemParams, SpacePair};
use crate::radialcore::{weighted_norm_on, RadialFunction, RadialGrid};
use crate::regime::{lwp_verdict, Status};

#[derive(Clone, Debug, PartialEq)]
pub struct BlowupConfig {
    pub grid: Arc<RadialGrid>,
    /// Longest horizon tried.
    pub horizon: f64,
    /// Earliest frame time of every run.
    pub t_floor: f64,
    pub quadrature_nodes: usize,
    /// `L^q_s` norm treated as blow-up.
    pub threshold: f64,
    /// Bisection stops when the bracket `[lo, hi]` has `hi/lo ≤ 1 + width`.
    pub bisection_width: f64,
    pub local_tolerance: f64,
    pub local_max_iterations: usize,
}

impl Default for BlowupConfig {
    fn default() -> BlowupConfig {
        BlowupConfig {
            grid: RadialGrid::new(1e-6, 1e1, 7 * 64 + 1).expect("valid grid"),
            horizon: 4.0,
            t_floor: 4e-7,
            quadrature_nodes: 24,
            threshold: 1e6,
            bisection_width: 0.02,
            local_tolerance: 1e-10,
            local_max_iterations: 200,
        }
    }
}

/// Result of marching through one lattice.
#[derive(Clone, Debug, PartialEq)]
pub enum MarchOutcome {
    Completed,
    /// First frame that could not be computed.
    Failed { k: usize, t: f64, reason: String },
}

/// Marches through every frame of `op`'s lattice. Returns the outcome and the
/// frames computed so far.
pub fn march(op: &DuhamelOperator, u0: &[f64], sp: &SpacePair, cfg: &BlowupConfig) -> Result<(MarchOutcome, Frames)> {
    let d = op.params().d();
    let grid = op.grid().clone();
    let mut frames: Frames = Vec::with_capacity(op.times().len());
    for k in 0..op.times().len() {
        let t = op.times()[k];
        let fail = |reason: String| MarchOutcome::Failed { k, t, reason };
        let (fixed, dependent) = op.split_nodes(k);
        let base = op.linear_at(k, u0);
        let fixed_sum = match op.partial_sum(&fixed, k, u0, &frames)? {
            Ok(v) => v,
            Err(_) => return Ok((fail("nonlinearity not finite".into()), frames)),
        };
        let known: Vec<f64> = base.iter().zip(&fixed_sum).map(|(a, b)| a + b).collect();
        let mut v = frames.last().cloned().unwrap_or_else(|| known.clone());
        let mut settled = false;
        for _ in 0..cfg.local_max_iterations {
            frames.push(v);
            let dep = op.partial_sum(&dependent, k, u0, &frames)?;
            v = frames.pop().expect("just pushed");
            let dep = match dep {
                Ok(x) => x,
                Err(_) => return Ok((fail("nonlinearity not finite".into()), frames)),
            };
            let next: Vec<f64> = known.iter().zip(&dep).map(|(a, b)| a + b).collect();
            let scale = next.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let change = next.iter().zip(&v).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            v = next;
            if !scale.is_finite() {
                return Ok((fail("non-finite iterate".into()), frames));
            }
            if change <= cfg.local_tolerance * scale {
                settled = true;
                break;
            }
        }
        if !settled {
            return Ok((fail("local iteration did not converge".into()), frames));
        }
        let norm = weighted_norm_on(&grid, &v, sp.q(), sp.s(), d).map(|e| e.value).unwrap_or(f64::INFINITY);
        if !(norm < cfg.threshold) {
            return Ok((fail(format!("L^q_s norm {norm:.3e} reached the threshold")), frames));
        }
        frames.push(v);
    }
    Ok((MarchOutcome::Completed, frames))
}

fn run_to(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    u0: &[f64],
    sp: &SpacePair,
    kato: KatoExponents,
    horizon: f64,
    cfg: &BlowupConfig,
) -> Result<(MarchOutcome, Vec<f64>)> {
    let time = TimeGrid { t_floor: Some(cfg.t_floor.min(horizon)), stride: 1, quadrature_nodes: cfg.quadrature_nodes };
    let op = DuhamelOperator::new(params, nl, &cfg.grid, horizon, kato, &time)?;
    let (outcome, _) = march(&op, u0, sp, cfg)?;
    Ok((outcome, op.times().to_vec()))
}

/// Numerical lifespan of one datum: `None` when no failure occurs up to the
/// horizon, otherwise the bracket `(lo, hi)` with a successful run to `lo`
/// and a failed one to `hi`.
pub fn lifespan(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    u0: &RadialFunction,
    sp: &SpacePair,
    cfg: &BlowupConfig,
) -> Result<Option<(f64, f64)>> {
    let kato = KatoExponents::for_space(params, sp)?;
    let data = u0.values();
    let (outcome, times) = run_to(params, nl, data, sp, kato, cfg.horizon, cfg)?;
    let (mut lo, mut hi) = match outcome {
        MarchOutcome::Completed => return Ok(None),
        MarchOutcome::Failed { k: 0, t, .. } => {
            return Err(Error::domain(format!("failure at the first frame t = {t:e}; lower t_floor")))
        }
        MarchOutcome::Failed { k, .. } => (times[k - 1], times[k]),
    };
    while hi / lo > 1.0 + cfg.bisection_width {
        let mid = (lo * hi).sqrt();
        match run_to(params, nl, data, sp, kato, mid, cfg)?.0 {
            MarchOutcome::Completed => lo = mid,
            MarchOutcome::Failed { .. } => hi = mid,
        }
    }
    Ok(Some((lo, hi)))
}

/// Lifespans over a sweep of data amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct LifespanReport {
    pub lambdas: Vec<f64>,
    /// Largest horizon reached without failure, or `None` if the horizon
    /// itself was reached.
    pub lifespans: Vec<Option<f64>>,
    /// Smallest failing horizon found by bisection.
    pub upper_brackets: Vec<Option<f64>>,
    /// Log-log slope of lifespan against `λ` over the runs that failed.
    pub fitted_slope: Option<f64>,
    pub kappa: f64,
    /// `-1/κ`.
    pub predicted_slope: f64,
}

impl LifespanReport {
    /// True when no run failed before the horizon.
    pub fn no_blowup_detected(&self) -> bool {
        self.lifespans.iter().all(Option::is_none)
    }
}

/// `λ|x|^{-β}` on the unit ball, zero outside.
pub fn power_data(grid: &Arc<RadialGrid>, lambda: f64, beta: f64) -> Result<RadialFunction> {
    RadialFunction::from_fn(grid.clone(), |r| if r <= 1.0 { lambda * r.powf(-beta) } else { 0.0 })
}

/// Lifespans for every `λ` without checking the blow-up hypotheses (used
/// for controls such as the defocusing sign).
pub fn lifespan_sweep(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    sp: &SpacePair,
    beta_data: f64,
    lambdas: &[f64],
    cfg: &BlowupConfig,
) -> Result<LifespanReport> {
    let verdict = lwp_verdict(params, sp, nl.is_sign_compatible());
    if !verdict.lwp {
        return Err(Error::precondition(verdict.failure_reason().unwrap_or_else(|| "no local well-posedness".into())));
    }
    let brackets = lambdas
        .par_iter()
        .map(|&lambda| lifespan(params, nl, &power_data(&cfg.grid, lambda, beta_data)?, sp, cfg))
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = lambdas
        .iter()
        .zip(&brackets)
        .filter_map(|(&l, b)| b.map(|(lo, _)| (l.ln(), lo.ln())))
        .collect();
    let fitted_slope = (pts.len() >= 2).then(|| crate::semigroup::least_squares_slope(&pts));
    let kappa = lifespan_kappa(params, beta_data);
    Ok(LifespanReport {
        lambdas: lambdas.to_vec(),
        lifespans: brackets.iter().map(|b| b.map(|x| x.0)).collect(),
        upper_brackets: brackets.iter().map(|b| b.map(|x| x.1)).collect(),
        fitted_slope,
        kappa,
        predicted_slope: -1.0 / kappa,
    })
}

/// Lifespan sweep under the hypotheses of the blow-up theorem: blow-up
/// data must exist, `β < min(s + d/q, d)`, `κ > 0` and `F(z) = z^α` on
/// `z ≥ 0` with `μ = +1`.
pub fn blowup_experiment(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    sp: &SpacePair,
    beta_data: f64,
    lambdas: &[f64],
    cfg: &BlowupConfig,
) -> Result<LifespanReport> {
    if !nl.is_sign_compatible() {
        return Err(Error::precondition(crate::regime::Hypothesis::SignCompatible.to_string()));
    }
    let verdict = lwp_verdict(params, sp, true);
    if verdict.blowup_data_exists != Status::Holds {
        let why = verdict.failure_reason().unwrap_or_else(|| {
            format!("blow-up data existence is {} for these parameters", verdict.blowup_data_exists)
        });
        return Err(Error::precondition(why));
    }
    let d = params.d() as f64;
    let limit = (sp.tau(params.d())).min(d);
    if !(beta_data < limit) {
        return Err(Error::precondition(format!("beta = {beta_data} must be below min(s + d/q, d) = {limit}")));
    }
    let kappa = lifespan_kappa(params, beta_data);
    if !(kappa > 0.0) {
        return Err(Error::precondition(format!("lifespan exponent kappa = {kappa} must be positive")));
    }
    lifespan_sweep(params, nl, sp, beta_data, lambdas, cfg)
}
