//! `evolve` and `decay-fit`: the linear semigroup on radial data.

use hhlab::exponents::{compact_data_decay_exponent, decay_exponent};
use hhlab::radialcore::{weighted_norm, write_function_csv, RadialGrid};
use hhlab::regime::dissipative_admissible;
use hhlab::semigroup::{apply_semigroup, geometric_times, least_squares_slope};
use hhlab::{DecayQuadruple, SpacePair};

use crate::context::{CliError, Context};
use crate::output::{num, Csv};

fn time_range(ctx: &Context, t_min: f64, t_max: f64, per_decade: usize) -> Result<Vec<f64>, CliError> {
    let (t0, t1) = (ctx.f64_or("t_min", t_min)?, ctx.f64_or("t_max", t_max)?);
    Ok(geometric_times(t0, t1, ctx.tgrid_or(per_decade)?)?)
}

pub fn evolve(ctx: &mut Context) -> Result<(), CliError> {
    let p = ctx.params()?;
    let grid = ctx.grid(RadialGrid::DEFAULT_R_MIN, RadialGrid::DEFAULT_R_MAX, RadialGrid::DEFAULT_NODES)?;
    let u0 = ctx.data(&grid)?;
    let times = time_range(ctx, 1e-2, 1e2, 4)?;
    let mut index = Csv::new(
        &[
            "linear evolution u(t) = exp(-t L_a) u0 of radial data, L_a = -Laplacian + a/|x|^2",
            "t: time (dimensionless); file: r,value table of u(t, r); sup: max over grid nodes of u(t)",
        ],
        &["t", "file", "sup"],
    );
    for (j, &t) in times.iter().enumerate() {
        let u = apply_semigroup(&p, t, &u0)?;
        let name = format!("evolve_{j:04}.csv");
        let path = ctx.path(&name);
        let mut buf = Vec::new();
        let header = [
            format!("u(t, r) = exp(-t L_a) u0 at t = {t:.17e}"),
            "r: radius (dimensionless); value: u(t, r)".to_string(),
        ];
        write_function_csv(&mut buf, &u, &[&header[0], &header[1]])?;
        std::fs::write(&path, buf)?;
        ctx.record(path);
        index.row(&[num(t), name, num(u.sup())]);
    }
    ctx.write("evolve_index.csv", &index.into_string())?;
    println!("wrote {} frames to {}", times.len(), ctx.out.display());
    Ok(())
}

pub fn decay_fit(ctx: &mut Context) -> Result<(), CliError> {
    let p = ctx.params()?;
    let quad = DecayQuadruple::new(SpacePair::from_config(&ctx.config, "1")?, SpacePair::from_config(&ctx.config, "2")?);
    if !dissipative_admissible(&p, &quad) {
        return Err(CliError::precondition(
            "quadruple fails sigma_- < d/q2 + s2 <= d/q1 + s1 < sigma_+ + 2 with s2 <= s1",
        ));
    }
    let grid = ctx.grid(RadialGrid::DEFAULT_R_MIN, RadialGrid::DEFAULT_R_MAX, RadialGrid::DEFAULT_NODES)?;
    let u0 = ctx.data(&grid)?;
    let times = time_range(ctx, 1e2, 1e4, 4)?;
    let (q2, s2) = (quad.target.q(), quad.target.s());
    let mut csv = Csv::new(
        &[
            "decay of the weighted norm of the linear evolution",
            &format!("norm: ||exp(-t L_a) u0|| in L^q_s with q = {q2}, s = {s2}, weight |x|^(s q)"),
            "t: time (dimensionless)",
        ],
        &["t", "norm"],
    );
    let mut pts = Vec::with_capacity(times.len());
    for &t in &times {
        let n = weighted_norm(&apply_semigroup(&p, t, &u0)?, q2, s2, p.d())?;
        csv.row(&[num(t), num(n)]);
        pts.push((t.ln(), n.ln()));
    }
    let slope = least_squares_slope(&pts);
    let sharp = decay_exponent(&p, &quad);
    let compact = compact_data_decay_exponent(&p, &quad.target);
    ctx.write("decay_fit.csv", &csv.into_string())?;
    let mut summary = Csv::new(
        &[
            "measured: least-squares slope of ln norm against ln t",
            "sharp_exponent: -(d/q1 + s1 - d/q2 - s2)/2, the operator-norm decay rate",
            "compact_data_exponent: -(sigma_+ + 2 - d/q2 - s2)/2, the rate for nonnegative compactly supported data",
        ],
        &["quantity", "value"],
    );
    for (k, v) in [("measured", slope), ("sharp_exponent", sharp), ("compact_data_exponent", compact)] {
        println!("{k} = {v}");
        summary.row(&[k.to_string(), num(v)]);
    }
    ctx.write("decay_fit_summary.csv", &summary.into_string())
}
