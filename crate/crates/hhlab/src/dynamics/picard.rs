use std::sync::Arc;

use super::duhamel::{DuhamelOperator, Frames, KatoExponents, TimeGrid};
use super::nonlinearity::NonlinearitySpec;
use crate::error::{Error, Result};
use crate::exponents::{ProblemParams, SpacePair};
use crate::radialcore::{KatoFrame, RadialFunction};
use crate::regime::lwp_verdict;

/// Starting point of the Picard iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InitialIterate {
    /// The linear evolution `e^{-tL}u₀`.
    #[default]
    Linear,
    /// The zero function.
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PicardOptions {
    pub time: TimeGrid,
    /// Stop when successive iterates are within `tolerance · M` in Kato
    /// norm, `M = 2‖e^{-tL}u₀‖_K`.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub initial: InitialIterate,
}

impl Default for PicardOptions {
    fn default() -> PicardOptions {
        PicardOptions { time: TimeGrid::default(), tolerance: 1e-8, max_iterations: 50, initial: InitialIterate::Linear }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub converged: bool,
    pub iterations: usize,
    /// Median ratio of successive iterate distances.
    pub contraction_factor: f64,
    /// Kato norm of each iterate, starting with the initial one.
    pub kato_norm_history: Vec<f64>,
    /// Kato distance between successive iterates.
    pub distances: Vec<f64>,
    /// Last finite iterate.
    pub final_frame: KatoFrame,
    /// Frame time at which the nonlinearity stopped being finite.
    pub blowup_time_estimate: Option<f64>,
    /// `‖e^{-tL}u₀‖_K`.
    pub linear_kato_norm: f64,
    /// `T^{(α-1)(τ_c-τ)/2} M^{α-1}`.
    pub diagnostic: f64,
    pub kato: KatoExponents,
}

/// Picard iteration for the integral equation on `[0, T]` with default
/// options.
pub fn picard_solve(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    u0: &RadialFunction,
    sp: &SpacePair,
    t_end: f64,
) -> Result<SolveReport> {
    picard_solve_with(params, nl, u0, sp, t_end, &PicardOptions::default())
}

pub fn picard_solve_with(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    u0: &RadialFunction,
    sp: &SpacePair,
    t_end: f64,
    opts: &PicardOptions,
) -> Result<SolveReport> {
    let verdict = lwp_verdict(params, sp, nl.is_sign_compatible());
    if !verdict.lwp {
        return Err(Error::precondition(verdict.failure_reason().unwrap_or_else(|| "no local well-posedness".into())));
    }
    let kato = KatoExponents::for_space(params, sp)?;
    let op = Arc::new(DuhamelOperator::new(params, nl, u0.grid(), t_end, kato, &opts.time)?);
    picard_on(&op, u0, sp, opts)
}

/// Picard iteration with a prebuilt Duhamel operator.
pub fn picard_on(op: &DuhamelOperator, u0: &RadialFunction, sp: &SpacePair, opts: &PicardOptions) -> Result<SolveReport> {
    let params = op.params();
    let data = u0.values();
    let lin = op.linear_frames(data);
    let lin_norm = op.kato_norm(&lin)?;
    let m = 2.0 * lin_norm;
    let alpha = op.nonlinearity().alpha();
    let tau = sp.tau(params.d());
    let diagnostic = op.lattice().t_end().powf((alpha - 1.0) * (params.tau_c_num().value() - tau) / 2.0) * m.powf(alpha - 1.0);

    let mut current: Frames = match opts.initial {
        InitialIterate::Linear => lin.clone(),
        InitialIterate::Zero => vec![vec![0.0; data.len()]; lin.len()],
    };
    let mut history = vec![op.kato_norm(&current)?];
    let mut distances = Vec::new();
    let mut blowup = None;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        iterations += 1;
        let next = match op.step(data, &lin, &current)? {
            Ok(f) => f,
            Err(e) => {
                blowup = Some(e.t);
                break;
            }
        };
        let measured = op.kato_distance(&next, &current).and_then(|d| Ok((d, op.kato_norm(&next)?)));
        let (dist, norm) = match measured {
            Ok(v) if v.0.is_finite() && v.1.is_finite() => v,
            Ok(_) | Err(Error::Overflow(_)) => {
                blowup = Some(first_large_frame(op, &next));
                break;
            }
            Err(e) => return Err(e),
        };
        current = next;
        history.push(norm);
        distances.push(dist);
        if dist <= opts.tolerance * m {
            converged = true;
            break;
        }
    }
    let factor = median_ratio(&distances);
    if converged && factor >= 1.0 {
        converged = false;
    }
    if !converged && blowup.is_none() && factor >= 1.0 {
        return Err(Error::NonContraction { factor, diagnostic });
    }
    Ok(SolveReport {
        converged,
        iterations,
        contraction_factor: factor,
        kato_norm_history: history,
        distances,
        final_frame: op.to_frame(&current)?,
        blowup_time_estimate: blowup,
        linear_kato_norm: lin_norm,
        diagnostic,
        kato: op.kato(),
    })
}

/// Earliest frame whose `L^∞` size exceeds `1e100`, or the horizon.
fn first_large_frame(op: &DuhamelOperator, frames: &Frames) -> f64 {
    let k = frames.iter().position(|f| f.iter().any(|v| !(v.abs() < 1e100)));
    k.map_or(op.lattice().t_end(), |k| op.times()[k])
}

/// Median of `d[i+1]/d[i]`; zero when fewer than two distances exist or the
/// first one already vanishes.
fn median_ratio(d: &[f64]) -> f64 {
    let mut r: Vec<f64> = d.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect();
    if r.is_empty() {
        return 0.0;
    }
    r.sort_by(f64::total_cmp);
    let n = r.len();
    if n % 2 == 1 {
        r[n / 2]
    } else {
        0.5 * (r[n / 2 - 1] + r[n / 2])
    }
}
