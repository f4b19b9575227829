//! The Duhamel map `J[u](t) = e^{-tL}u₀ + ∫₀ᵗ e^{-(t-τ)L}[|x|^γ F(u(τ))] dτ`
//! on a geometric time lattice.
//!
//! With `τ = t x` the integral becomes `t ∫₀¹ e^{-t(1-x)L} N(u(tx)) dx`,
//! computed by Gauss–Jacobi quadrature for the weight
//! `(1-x)^{-A} x^{-αβ}` where `A = d(α-1)/(2p) + ((α-1)k - γ)/2` is the
//! smoothing exponent of `e^{-tL}` from `L^{p/α}_{αk-γ}` to `L^p_k` and `β`
//! the Kato weight. For each quadrature node `x_j` the operators
//! `e^{-(1-x_j)t_k L}` at all lattice times come from one [`LatticeKernel`].
//! Between frames `u` is interpolated linearly in `ln t`; before the first
//! frame, linearly in `t` from the data.

use std::sync::Arc;

use rayon::prelude::*;

use super::nonlinearity::NonlinearitySpec;
use crate::error::{Error, Result};
use crate::exponents::{ProblemParams, SpacePair};
use crate::quadrature::gauss_jacobi;
use crate::radialcore::{weighted_norm_on, KatoFrame, RadialFunction, RadialGrid};
use crate::regime::choose_kato_params;
use crate::semigroup::{LatticeKernel, TimeLattice};

/// Time discretisation of a dynamics run.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    /// First frame no earlier than this; `None` means `T·1e-4`.
    pub t_floor: Option<f64>,
    /// Lattice stride: consecutive frames differ by `e^{2 h stride}`.
    pub stride: usize,
    /// Gauss–Jacobi nodes for the Duhamel integral.
    pub quadrature_nodes: usize,
}

impl Default for TimeGrid {
    fn default() -> TimeGrid {
        TimeGrid { t_floor: None, stride: 1, quadrature_nodes: 24 }
    }
}

/// Kato-space exponents of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KatoExponents {
    pub p: f64,
    pub k: f64,
    pub beta: f64,
}

impl KatoExponents {
    /// Exponents from the Kato parameter chooser.
    pub fn for_space(params: &ProblemParams, sp: &SpacePair) -> Result<KatoExponents> {
        let kp = choose_kato_params(params, sp)?;
        Ok(KatoExponents { p: kp.p(), k: kp.k(), beta: kp.beta(params.d(), sp) })
    }
}

/// Node values of `u` at each lattice time.
pub type Frames = Vec<Vec<f64>>;

/// A failed evaluation of the nonlinearity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonFiniteAt {
    /// Frame time at which a non-finite value appeared.
    pub t: f64,
}

enum Tables {
    Resident(Vec<LatticeKernel>),
    /// Tables are rebuilt for every use (memory-light reference runs).
    Streaming,
}

/// Discrete Duhamel map for one `(params, F, grid, T)`.
pub struct DuhamelOperator {
    params: ProblemParams,
    nl: NonlinearitySpec,
    grid: Arc<RadialGrid>,
    lattice: TimeLattice,
    times: Vec<f64>,
    kato: KatoExponents,
    /// Quadrature nodes `x_j` and weights `w_j (1-x_j)^A x_j^{αβ}`.
    nodes: Vec<f64>,
    weights: Vec<f64>,
    tables: Tables,
    linear: LatticeKernel,
    r_gamma: Vec<f64>,
    smoothing: f64,
}

impl DuhamelOperator {
    pub fn new(
        params: &ProblemParams,
        nl: &NonlinearitySpec,
        grid: &Arc<RadialGrid>,
        t_end: f64,
        kato: KatoExponents,
        time: &TimeGrid,
    ) -> Result<DuhamelOperator> {
        Self::build(params, nl, grid, t_end, kato, time, true)
    }

    /// Like [`DuhamelOperator::new`] but keeps no quadrature tables in
    /// memory; each application rebuilds them one node at a time.
    pub fn new_streaming(
        params: &ProblemParams,
        nl: &NonlinearitySpec,
        grid: &Arc<RadialGrid>,
        t_end: f64,
        kato: KatoExponents,
        time: &TimeGrid,
    ) -> Result<DuhamelOperator> {
        Self::build(params, nl, grid, t_end, kato, time, false)
    }

    fn build(
        params: &ProblemParams,
        nl: &NonlinearitySpec,
        grid: &Arc<RadialGrid>,
        t_end: f64,
        kato: KatoExponents,
        time: &TimeGrid,
        resident: bool,
    ) -> Result<DuhamelOperator> {
        let d = params.d() as f64;
        let alpha = nl.alpha();
        let smoothing = d * (alpha - 1.0) / (2.0 * kato.p) + ((alpha - 1.0) * kato.k - params.gamma()) / 2.0;
        let ab = alpha * kato.beta;
        if !(smoothing < 1.0 && ab < 1.0) {
            return Err(Error::precondition(format!(
                "Duhamel integral is not integrable: smoothing exponent {smoothing}, alpha*beta = {ab}"
            )));
        }
        let t_floor = time.t_floor.unwrap_or(t_end * 1e-4);
        let lattice = TimeLattice::new(grid, time.stride, t_end, t_floor)?;
        let rule = gauss_jacobi(time.quadrature_nodes, -smoothing, -ab)?;
        let weights = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| w * (1.0 - x).powf(smoothing) * x.powf(ab))
            .collect();
        let tables = if resident {
            Tables::Resident(
                rule.nodes
                    .iter()
                    .map(|&x| LatticeKernel::build(params, 1.0 - x, grid, &lattice))
                    .collect::<Result<_>>()?,
            )
        } else {
            Tables::Streaming
        };
        let linear = LatticeKernel::build(params, 1.0, grid, &lattice)?;
        let r_gamma = grid.nodes().iter().map(|r| r.powf(params.gamma())).collect();
        Ok(DuhamelOperator {
            params: *params,
            nl: *nl,
            grid: grid.clone(),
            times: lattice.times(),
            lattice,
            kato,
            nodes: rule.nodes,
            weights,
            tables,
            linear,
            r_gamma,
            smoothing,
        })
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn lattice(&self) -> &TimeLattice {
        &self.lattice
    }

    pub fn kato(&self) -> KatoExponents {
        self.kato
    }

    pub fn nonlinearity(&self) -> &NonlinearitySpec {
        &self.nl
    }

    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    /// Exponent `A` of the `(1-x)^{-A}` endpoint weight.
    pub fn smoothing_exponent(&self) -> f64 {
        self.smoothing
    }

    fn corrected(&self, v: &[f64]) -> Vec<f64> {
        v.iter().enumerate().map(|(l, x)| x * self.grid.unit_weight(l)).collect()
    }

    /// `e^{-t_k L} u₀` at every frame.
    pub fn linear_frames(&self, u0: &[f64]) -> Frames {
        let corrected = self.corrected(u0);
        (0..self.times.len())
            .into_par_iter()
            .map(|k| {
                let mut out = vec![0.0; u0.len()];
                self.linear.apply_into(k, &corrected, u0, &mut out);
                out
            })
            .collect()
    }

    /// `N(u) = |x|^γ F(u)` at the nodes.
    fn forcing(&self, u: &[f64]) -> Vec<f64> {
        u.iter().zip(&self.r_gamma).map(|(&v, &w)| w * self.nl.eval(v)).collect()
    }

    /// `u(τ)` from the frames.
    pub(crate) fn interpolate(&self, u0: &[f64], frames: &[Vec<f64>], tau: f64) -> Vec<f64> {
        let t0 = self.times[0];
        let mix = |a: &[f64], b: &[f64], w: f64| a.iter().zip(b).map(|(x, y)| (1.0 - w) * x + w * y).collect();
        if tau <= t0 {
            return mix(u0, &frames[0], tau / t0);
        }
        let pos = (tau / t0).ln() / self.lattice.ratio().ln();
        let i = (pos.floor() as usize).min(frames.len() - 2);
        let w = (pos - i as f64).clamp(0.0, 1.0);
        mix(&frames[i], &frames[i + 1], w)
    }

    /// Contribution of quadrature node `j` to frame `k`:
    /// `t_k w_j e^{-(1-x_j)t_k L} N(u(x_j t_k))`, added into `out`.
    fn accumulate(
        &self,
        table: &LatticeKernel,
        j: usize,
        k: usize,
        u0: &[f64],
        frames: &[Vec<f64>],
        out: &mut [f64],
    ) -> std::result::Result<(), NonFiniteAt> {
        let t = self.times[k];
        let u = self.interpolate(u0, frames, self.nodes[j] * t);
        let n = self.forcing(&u);
        if n.iter().any(|v| !v.is_finite()) {
            return Err(NonFiniteAt { t });
        }
        let mut buf = vec![0.0; n.len()];
        table.apply_into(k, &self.corrected(&n), &n, &mut buf);
        let c = t * self.weights[j];
        for (o, b) in out.iter_mut().zip(&buf) {
            *o += c * b;
        }
        Ok(())
    }

    /// Table for quadrature node `j`, borrowed or freshly built.
    fn with_table<R>(&self, j: usize, f: impl FnOnce(&LatticeKernel) -> R) -> Result<R> {
        match &self.tables {
            Tables::Resident(t) => Ok(f(&t[j])),
            Tables::Streaming => {
                let table = LatticeKernel::build(&self.params, 1.0 - self.nodes[j], &self.grid, &self.lattice)?;
                Ok(f(&table))
            }
        }
    }

    /// One application of the Duhamel map to every frame.
    pub fn step(&self, u0: &[f64], linear: &Frames, frames: &Frames) -> Result<std::result::Result<Frames, NonFiniteAt>> {
        let mut out = linear.clone();
        for j in 0..self.nodes.len() {
            let res = self.with_table(j, |table| {
                out.par_iter_mut().enumerate().try_for_each(|(k, o)| self.accumulate(table, j, k, u0, frames, o))
            })?;
            if let Err(e) = res {
                return Ok(Err(e));
            }
        }
        if let Some(k) = out.iter().position(|f| f.iter().any(|v| !v.is_finite())) {
            return Ok(Err(NonFiniteAt { t: self.times[k] }));
        }
        Ok(Ok(out))
    }

    /// Kato norm `max_k t_k^β ‖u(t_k)‖_{L^p_k}` of raw frames.
    pub fn kato_norm(&self, frames: &Frames) -> Result<f64> {
        let mut m = 0.0f64;
        for (t, f) in self.times.iter().zip(frames) {
            m = m.max(t.powf(self.kato.beta) * weighted_norm_on(&self.grid, f, self.kato.p, self.kato.k, self.params.d())?.value);
        }
        Ok(m)
    }

    /// Kato distance between raw frames.
    pub fn kato_distance(&self, a: &Frames, b: &Frames) -> Result<f64> {
        let mut m = 0.0f64;
        for ((t, x), y) in self.times.iter().zip(a).zip(b) {
            let diff: Vec<f64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
            m = m.max(t.powf(self.kato.beta) * weighted_norm_on(&self.grid, &diff, self.kato.p, self.kato.k, self.params.d())?.value);
        }
        Ok(m)
    }

    /// Wraps raw frames as a [`KatoFrame`].
    pub fn to_frame(&self, frames: &Frames) -> Result<KatoFrame> {
        let snaps = frames
            .iter()
            .map(|f| RadialFunction::new(self.grid.clone(), f.clone()))
            .collect::<Result<Vec<_>>>()?;
        KatoFrame::new(self.times.clone(), snaps, self.kato.beta)
    }

    /// Number of quadrature nodes.
    pub fn quadrature_len(&self) -> usize {
        self.nodes.len()
    }

    /// Quadrature nodes whose times `x_j t_k` fall after the previous frame
    /// (or before the first frame when `k = 0`), so that they depend on
    /// frame `k` itself.
    pub(crate) fn split_nodes(&self, k: usize) -> (Vec<usize>, Vec<usize>) {
        let prev = if k == 0 { 0.0 } else { self.times[k - 1] };
        (0..self.nodes.len()).partition(|&j| k > 0 && self.nodes[j] * self.times[k] <= prev)
    }

    /// Contribution of nodes `js` to frame `k`.
    pub(crate) fn partial_sum(
        &self,
        js: &[usize],
        k: usize,
        u0: &[f64],
        frames: &[Vec<f64>],
    ) -> Result<std::result::Result<Vec<f64>, NonFiniteAt>> {
        let mut out = vec![0.0; self.grid.len()];
        for &j in js {
            if let Err(e) = self.with_table(j, |table| self.accumulate(table, j, k, u0, frames, &mut out))? {
                return Ok(Err(e));
            }
        }
        Ok(Ok(out))
    }

    /// `e^{-t_k L} u₀` at one frame.
    pub(crate) fn linear_at(&self, k: usize, u0: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; u0.len()];
        self.linear.apply_into(k, &self.corrected(u0), u0, &mut out);
        out
    }
}

/// `J_{u₀}[u]` at the frame times of `u`, which must lie on the default
/// lattice for `T` on the grid of `u₀`.
pub fn duhamel_step(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    u0: &RadialFunction,
    u: &KatoFrame,
    t_end: f64,
    kato: KatoExponents,
) -> Result<KatoFrame> {
    let op = DuhamelOperator::new(params, nl, u0.grid(), t_end, kato, &TimeGrid::default())?;
    if u.times().len() != op.times().len()
        || u.times().iter().zip(op.times()).any(|(a, b)| (a / b - 1.0).abs() > 1e-12)
    {
        return Err(Error::GridMismatch("frame times are not the lattice times of this horizon".into()));
    }
    let frames: Frames = u.snapshots().iter().map(|s| s.values().to_vec()).collect();
    let lin = op.linear_frames(u0.values());
    match op.step(u0.values(), &lin, &frames)? {
        Ok(out) => op.to_frame(&out),
        Err(e) => Err(Error::Overflow(format!("nonlinearity not finite at t = {:e}", e.t))),
    }
}
