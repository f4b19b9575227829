//! `picard` and `blowup`: the nonlinear integral equation.

use hhlab::dynamics::{blowup_experiment, picard_solve_with, BlowupConfig, PicardOptions, TimeGrid};
use hhlab::radialcore::{write_frame_csvs, KatoFrame};
use hhlab::SpacePair;

use super::nonlinearity;
use crate::context::{CliError, Context};
use crate::output::{num, opt, Csv};

fn space(ctx: &Context, q: i64) -> Result<SpacePair, CliError> {
    if ctx.config.contains("q") {
        Ok(SpacePair::from_config(&ctx.config, "")?)
    } else {
        Ok(SpacePair::new(q, 0)?)
    }
}

fn positive_int(ctx: &Context, key: &str, default: usize) -> Result<usize, CliError> {
    match ctx.config.int(key)? {
        None => Ok(default),
        Some(n) if n > 0 => Ok(n as usize),
        Some(n) => Err(CliError::usage(format!("{key} must be positive, got {n}"))),
    }
}

/// Every `m`-th frame (and the last) so that about `per_decade` frames are
/// kept per decade of time.
fn thin(frame: &KatoFrame, per_decade: usize) -> Result<KatoFrame, CliError> {
    let times = frame.times();
    let natural = if times.len() > 1 { 10f64.ln() / (times[1] / times[0]).ln() } else { 1.0 };
    let m = ((natural / per_decade as f64).round() as usize).max(1);
    let keep: Vec<usize> = (0..times.len()).filter(|&j| j % m == 0 || j + 1 == times.len()).collect();
    Ok(KatoFrame::new(
        keep.iter().map(|&j| times[j]).collect(),
        keep.iter().map(|&j| frame.snapshots()[j].clone()).collect(),
        frame.beta(),
    )?)
}

pub fn picard(ctx: &mut Context) -> Result<(), CliError> {
    let p = ctx.params()?;
    let nl = nonlinearity(ctx, &p)?;
    let sp = space(ctx, 4)?;
    let grid = ctx.grid(1e-4, 1e2, 6 * 128 + 1)?;
    let u0 = ctx.data(&grid)?;
    let horizon = ctx.f64_or("horizon", 1.0)?;
    let defaults = PicardOptions::default();
    let opts = PicardOptions {
        time: TimeGrid {
            t_floor: ctx.config.num("t_floor")?.map(|n| n.value()),
            quadrature_nodes: positive_int(ctx, "quadrature_nodes", defaults.time.quadrature_nodes)?,
            ..defaults.time.clone()
        },
        tolerance: ctx.f64_or("tolerance", defaults.tolerance)?,
        max_iterations: positive_int(ctx, "max_iterations", defaults.max_iterations)?,
        ..defaults
    };
    let r = picard_solve_with(&p, &nl, &u0, &sp, horizon, &opts)?;

    let mut iters = Csv::new(
        &[
            "Picard iterates u_{j+1} = exp(-t L_a) u0 + integral_0^t exp(-(t-s) L_a) |x|^gamma F(u_j(s)) ds",
            "kato_norm: sup_t t^beta ||u_j(t)||_{L^p_k}; distance: the same norm of u_j - u_{j-1}",
        ],
        &["iteration", "kato_norm", "distance"],
    );
    for (j, n) in r.kato_norm_history.iter().enumerate() {
        let d = if j == 0 { None } else { r.distances.get(j - 1).copied() };
        iters.row(&[j.to_string(), num(*n), opt(d)]);
    }
    ctx.write("picard_iterations.csv", &iters.into_string())?;

    let final_norm = r.kato_norm_history.last().copied().unwrap_or(f64::NAN);
    let rows: [(&str, String); 11] = [
        ("converged", r.converged.to_string()),
        ("iterations", r.iterations.to_string()),
        ("contraction_factor", num(r.contraction_factor)),
        ("linear_kato_norm", num(r.linear_kato_norm)),
        ("final_kato_norm", num(final_norm)),
        ("diagnostic", num(r.diagnostic)),
        ("blowup_time_estimate", opt(r.blowup_time_estimate)),
        ("kato_p", num(r.kato.p)),
        ("kato_k", num(r.kato.k)),
        ("kato_beta", num(r.kato.beta)),
        ("horizon", num(horizon)),
    ];
    let mut summary = Csv::new(
        &[
            "contraction_factor: median ratio of successive iterate distances",
            "diagnostic: T^((alpha-1)(tau_c-tau)/2) M^(alpha-1) with M = 2 ||exp(-t L_a) u0||_K",
            "kato_p, kato_k, kato_beta: exponents of the Kato norm sup_t t^beta ||u(t)||_{L^p_k}",
        ],
        &["quantity", "value"],
    );
    for (k, v) in &rows {
        println!("{k} = {v}");
        summary.row(&[k.to_string(), v.clone()]);
    }
    ctx.write("picard_summary.csv", &summary.into_string())?;

    let frames = thin(&r.final_frame, ctx.tgrid_or(8)?)?;
    for path in write_frame_csvs(&ctx.out, "picard_frame", &frames)? {
        ctx.record(path);
    }
    Ok(())
}

pub fn blowup(ctx: &mut Context) -> Result<(), CliError> {
    let p = ctx.params()?;
    let nl = nonlinearity(ctx, &p)?;
    let sp = space(ctx, 2)?;
    let defaults = BlowupConfig::default();
    let cfg = BlowupConfig {
        grid: ctx.grid(defaults.grid.r_min(), defaults.grid.r_max(), defaults.grid.len())?,
        horizon: ctx.f64_or("horizon", defaults.horizon)?,
        t_floor: ctx.f64_or("t_floor", defaults.t_floor)?,
        threshold: ctx.f64_or("threshold", defaults.threshold)?,
        ..defaults
    };
    let beta = ctx.f64_or("beta", 1.2)?;
    let lambdas: Vec<f64> = match ctx.config.num_list("lambdas")? {
        Some(l) => l.iter().map(|n| n.value()).collect(),
        None => vec![10.0, 20.0, 40.0, 80.0],
    };
    if lambdas.iter().any(|&l| !(l > 0.0)) {
        return Err(CliError::usage("lambdas must be positive"));
    }
    let rep = blowup_experiment(&p, &nl, &sp, beta, &lambdas, &cfg)?;
    let mut table = Csv::new(
        &[
            &format!("lifespans of u0 = lambda |x|^(-beta) on |x| <= 1, beta = {beta}"),
            "lifespan, upper_bracket: bisection bracket of the blow-up time (none: no blow-up before the horizon)",
            &format!(
                "predicted slope of ln lifespan against ln lambda: -1/kappa = {} with kappa = tau_c/2 - beta/2",
                rep.predicted_slope
            ),
        ],
        &["lambda", "lifespan", "upper_bracket"],
    );
    for ((l, lo), hi) in rep.lambdas.iter().zip(&rep.lifespans).zip(&rep.upper_brackets) {
        table.row(&[num(*l), opt(*lo), opt(*hi)]);
    }
    ctx.write("blowup.csv", &table.into_string())?;
    let mut summary = Csv::new(&["fitted_slope: least-squares slope over the lambdas that blew up"], &["quantity", "value"]);
    for (k, v) in [("kappa", Some(rep.kappa)), ("predicted_slope", Some(rep.predicted_slope)), ("fitted_slope", rep.fitted_slope)] {
        println!("{k} = {}", opt(v));
        summary.row(&[k.to_string(), opt(v)]);
    }
    for (l, lo) in rep.lambdas.iter().zip(&rep.lifespans) {
        println!("lambda = {l}: lifespan {}", opt(*lo));
    }
    ctx.write("blowup_summary.csv", &summary.into_string())
}
