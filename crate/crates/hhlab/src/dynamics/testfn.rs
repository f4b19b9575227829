//! Numerical check of the test-function inequality behind the blow-up
//! argument.
//!
//! For a nonnegative solution on `[0, T)` and `ψ(x,t) = φ^l(|x|/√T) η^l(t/T)`,
//! Young's inequality applied to the weak formulation gives
//!
//! ```text
//! ∫ u₀ φ^l(|x|/√T) dx ≤ C* T^{d/2 - (2+γ)/(2(α-1))},
//! C* = (|S^{d-1}|/α') ∫₀¹ r^{d-1-γ/(α-1)} (C_φ + |a| r^{-2})^{α'} dr,
//! ```
//!
//! where `α' = α/(α-1)` and `C_φ` bounds `|(-∂_t + Δ)ψ| ψ^{-1/α}` after
//! scaling out `T`. The integral is finite exactly when
//! [`blowup_inequality`] holds. Alongside the ratio the check reports the
//! residual of the weak formulation on the computed frames.

use super::nonlinearity::NonlinearitySpec;
use crate::besselkernel::sphere_area;
use crate::error::{Error, Result};
use crate::exponents::ProblemParams;
use crate::quadrature::{gauss_jacobi, gauss_legendre};
use crate::radialcore::{smooth_bump, smooth_bump_derivatives, KatoFrame, RadialFunction};
use crate::regime::blowup_inequality;

#[derive(Clone, Debug, PartialEq)]
pub struct TestFunctionReport {
    pub t_end: f64,
    /// Power `l` of the cutoffs.
    pub l: u32,
    /// `∫ u₀ φ^l(|x|/√T) dx`.
    pub lhs: f64,
    /// `T^{d/2 - (2+γ)/(2(α-1))}`.
    pub scale: f64,
    /// `lhs / scale`.
    pub ratio: f64,
    /// The constant `C*`.
    pub bound: f64,
    pub c_phi: f64,
    /// Weak-form residual divided by the largest of its terms.
    pub relative_residual: f64,
}

impl TestFunctionReport {
    pub fn within_bound(&self) -> bool {
        self.ratio <= self.bound
    }
}

/// Quadrature point inside the cell `[r_i, r_{i+1}]`.
struct CellPoint {
    i: usize,
    /// Position within the cell in `ln r`, from 0 to 1.
    xi: f64,
    weight: f64,
    phi: f64,
    l_phi: f64,
    r_gamma: f64,
}

/// Cutoff power `max(3, ⌈2α/(α-1)⌉)`.
pub fn cutoff_power(alpha: f64) -> u32 {
    ((2.0 * alpha / (alpha - 1.0)).ceil() as u32).max(3)
}

/// `φ^l`, its first two radial derivatives, at `r`.
fn bump_power(r: f64, l: u32) -> (f64, f64, f64) {
    let f = smooth_bump(r);
    let (d1, d2) = smooth_bump_derivatives(r);
    if f == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let l = l as f64;
    let p = f.powf(l);
    let p1 = l * f.powf(l - 1.0) * d1;
    let p2 = l * f.powf(l - 1.0) * d2 + l * (l - 1.0) * f.powf(l - 2.0) * d1 * d1;
    (p, p1, p2)
}

/// `C_φ = sup l|η'|η^{l-1-l/α} + sup |Δφ^l| φ^{-l/α}`, both on the
/// transition interval `(1/2, 1)` where they are nonzero.
pub fn cutoff_constant(d: u32, alpha: f64, l: u32) -> f64 {
    const SAMPLES: usize = 20_000;
    let lf = l as f64;
    let mut time_part = 0.0f64;
    let mut space_part = 0.0f64;
    for i in 1..SAMPLES {
        let r = 0.5 + 0.5 * i as f64 / SAMPLES as f64;
        let f = smooth_bump(r);
        let (d1, _) = smooth_bump_derivatives(r);
        time_part = time_part.max(lf * d1.abs() * f.powf(lf - 1.0 - lf / alpha));
        let (p, p1, p2) = bump_power(r, l);
        if p > 0.0 {
            let lap = p2 + (d as f64 - 1.0) * p1 / r;
            space_part = space_part.max(lap.abs() / p.powf(1.0 / alpha));
        }
    }
    time_part + space_part
}

/// `C*` for the given parameters, or an error when the integral diverges.
pub fn test_function_constant(params: &ProblemParams) -> Result<(f64, f64, u32)> {
    if !blowup_inequality(params) {
        return Err(Error::precondition(
            crate::regime::Hypothesis::BlowupCondition.to_string(),
        ));
    }
    let (d, a, gamma, alpha) = (params.d(), params.a(), params.gamma(), params.alpha());
    let l = cutoff_power(alpha);
    let c = cutoff_constant(d, alpha, l);
    let conj = alpha / (alpha - 1.0);
    let e = d as f64 - 1.0 - gamma / (alpha - 1.0);
    let k1 = if a == 0.0 {
        c.powf(conj) / (e + 1.0)
    } else {
        // r^e (c + |a| r^{-2})^{α'} = r^{e-2α'} (c r² + |a|)^{α'}
        let rule = gauss_jacobi(40, 0.0, e - 2.0 * conj)?;
        rule.integrate(|r| (c * r * r + a.abs()).powf(conj))
    };
    Ok((sphere_area(d) * k1 / conj, c, l))
}

/// Checks the test-function inequality on a computed nonnegative solution
/// `u` (frames up to at least `t_end`) with data `u0`.
pub fn test_function_inequality_check(
    params: &ProblemParams,
    nl: &NonlinearitySpec,
    u: &KatoFrame,
    u0: &RadialFunction,
    t_end: f64,
) -> Result<TestFunctionReport> {
    if !(t_end > 0.0) {
        return Err(Error::precondition("T must be positive"));
    }
    if nl.mu() < 0 {
        return Err(Error::precondition("the inequality needs a nonnegative nonlinearity (mu >= 0)"));
    }
    let last = *u.times().last().expect("frames are nonempty");
    if last < t_end * (1.0 - 1e-9) {
        return Err(Error::precondition(format!("solution known only up to t = {last:e} < T = {t_end:e}")));
    }
    if !u.snapshots()[0].grid().key().eq(&u0.grid().key()) {
        return Err(Error::GridMismatch("data and solution use different grids".into()));
    }
    let (bound, c_phi, l) = test_function_constant(params)?;
    let d = params.d();
    let grid = u0.grid();
    let sqrt_t = t_end.sqrt();

    // Spatial integrals run over the cells of the grid with a Gauss rule in
    // ln r; u is linear in ln r on each cell, Φ = φ^l(r/√T) and L_a Φ are
    // evaluated exactly.
    let area = sphere_area(d);
    let cell_rule = gauss_legendre(4);
    let h = grid.h();
    let mut cells = Vec::new();
    for (i, &r0) in grid.nodes().iter().enumerate().take(grid.len() - 1) {
        if r0 >= sqrt_t {
            break;
        }
        for (&xi, &w) in cell_rule.nodes.iter().zip(&cell_rule.weights) {
            let r = r0 * (h * xi).exp();
            let (p, p1, p2) = bump_power(r / sqrt_t, l);
            let lap = p2 / t_end + (d as f64 - 1.0) * p1 / (sqrt_t * r);
            cells.push(CellPoint {
                i,
                xi,
                weight: area * h * w * r.powi(d as i32),
                phi: p,
                l_phi: -lap + params.a() * p / (r * r),
                r_gamma: r.powf(params.gamma()),
            });
        }
    }
    let lf = l as f64;
    let eta = |t: f64| smooth_bump(t / t_end).powf(lf);
    let eta_dot = |t: f64| {
        let s = t / t_end;
        let f = smooth_bump(s);
        if f == 0.0 { 0.0 } else { lf * f.powf(lf - 1.0) * smooth_bump_derivatives(s).0 / t_end }
    };

    let at = |vals: &[f64], c: &CellPoint| (1.0 - c.xi) * vals[c.i] + c.xi * vals[c.i + 1];
    let check_sign = |vals: &[f64], t: f64| -> Result<()> {
        match vals.iter().position(|&v| v < -1e-10) {
            Some(i) => Err(Error::precondition(format!(
                "solution is negative ({:e}) at r = {:e}, t = {t:e}",
                vals[i],
                grid.nodes()[i]
            ))),
            None => Ok(()),
        }
    };

    let data = u0.values();
    check_sign(data, 0.0)?;
    let lhs: f64 = cells.iter().map(|c| c.weight * at(data, c) * c.phi).sum();

    // g(t) = ∫|x|^γ F(u)ψ - ∫u(-∂_tψ + L_aψ); |g| for the scale.
    let terms = |vals: &[f64], t: f64| -> (f64, f64) {
        let (h, hd) = (eta(t), eta_dot(t));
        cells.iter().fold((0.0, 0.0), |(f, g), c| {
            let v = at(vals, c);
            (f + c.weight * c.r_gamma * nl.eval(v) * c.phi * h, g + c.weight * v * (-c.phi * hd + h * c.l_phi))
        })
    };
    // Sample times: each frame interval (and [0, t_0]) is split into
    // SUBSTEPS pieces, with u interpolated the way the solver does.
    const SUBSTEPS: usize = 16;
    let times = u.times();
    let snaps = u.snapshots();
    for (t, snap) in times.iter().zip(snaps) {
        if *t < t_end * (1.0 - 1e-12) {
            check_sign(snap.values(), *t)?;
        }
    }
    let mut ts = Vec::new();
    let mut force = Vec::new();
    let mut lin = Vec::new();
    let mut push = |t: f64, vals: &[f64]| {
        let (f, g) = terms(vals, t);
        ts.push(t);
        force.push(f);
        lin.push(g);
    };
    let mix = |a: &[f64], b: &[f64], w: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| (1.0 - w) * x + w * y).collect() };
    for i in 0..SUBSTEPS {
        let w = i as f64 / SUBSTEPS as f64;
        let t = w * times[0];
        if t >= t_end {
            break;
        }
        push(t, &mix(data, snaps[0].values(), w));
    }
    for k in 0..times.len() - 1 {
        let (t0, t1) = (times[k], times[k + 1]);
        if t0 >= t_end * (1.0 - 1e-12) {
            break;
        }
        for i in 0..SUBSTEPS {
            let w = i as f64 / SUBSTEPS as f64;
            let t = t0 * (t1 / t0).powf(w);
            if t >= t_end * (1.0 - 1e-12) {
                break;
            }
            push(t, &mix(snaps[k].values(), snaps[k + 1].values(), w));
        }
    }
    // ψ and ∂_tψ vanish at t = T.
    ts.push(t_end);
    force.push(0.0);
    lin.push(0.0);
    let trap = |v: &[f64]| ts.windows(2).zip(v.windows(2)).map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1])).sum::<f64>();
    let abs = |v: &[f64]| v.iter().map(|x| x.abs()).collect::<Vec<_>>();
    let force_int = trap(&force);
    let lin_int = trap(&lin);
    let residual = lhs + force_int - lin_int;
    let size = lhs.abs().max(trap(&abs(&force))).max(trap(&abs(&lin)));
    let relative_residual = if size > 0.0 { residual.abs() / size } else { 0.0 };

    let d_f = d as f64;
    let alpha = params.alpha();
    let scale = t_end.powf(d_f / 2.0 - (2.0 + params.gamma()) / (2.0 * (alpha - 1.0)));
    Ok(TestFunctionReport { t_end, l, lhs, scale, ratio: lhs / scale, bound, c_phi, relative_residual })
}
