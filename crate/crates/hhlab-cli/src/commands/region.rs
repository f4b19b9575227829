//! `region-plot`: the `(α, τ)` plane rasterised at 600×400 from the
//! classifier itself, with the boundary curves drawn on top.

use std::fmt::Write;

use hhlab::regime::{region_at, BoundaryCurve, Region};
use hhlab::ProblemParams;

use crate::context::{CliError, Context};

const WIDTH: usize = 600;
const HEIGHT: usize = 400;

fn shade(region: Region) -> Option<&'static str> {
    match region {
        Region::Unique => Some("#08306b"),
        Region::Lwp => Some("#4292c6"),
        Region::Nonexistence => Some("#c6dbef"),
        Region::Unknown => None,
    }
}

fn curve_colour(c: BoundaryCurve) -> &'static str {
    match c {
        BoundaryCurve::TauCritical => "#d62728",
        BoundaryCurve::Uniqueness => "#ff7f0e",
        BoundaryCurve::SigmaMinus | BoundaryCurve::UpperWindow => "#2ca02c",
        BoundaryCurve::Fujita => "#9467bd",
        BoundaryCurve::FreeFujita => "#8c564b",
        BoundaryCurve::BlowupThreshold => "#7f7f7f",
    }
}

pub struct Window {
    pub alpha: (f64, f64),
    pub tau: (f64, f64),
}

impl Window {
    fn x(&self, alpha: f64) -> f64 {
        (alpha - self.alpha.0) / (self.alpha.1 - self.alpha.0) * WIDTH as f64
    }
    fn y(&self, tau: f64) -> f64 {
        (self.tau.1 - tau) / (self.tau.1 - self.tau.0) * HEIGHT as f64
    }
    fn alpha_at(&self, ix: f64) -> f64 {
        self.alpha.0 + ix / WIDTH as f64 * (self.alpha.1 - self.alpha.0)
    }
    fn tau_at(&self, iy: f64) -> f64 {
        self.tau.1 - iy / HEIGHT as f64 * (self.tau.1 - self.tau.0)
    }
}

pub fn render(base: &ProblemParams, w: &Window) -> Result<String, CliError> {
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(
        svg,
        "<title>(alpha, tau) regions for d = {}, a = {}, gamma = {}; alpha in [{}, {}], tau in [{}, {}]</title>",
        base.d(),
        base.a(),
        base.gamma(),
        w.alpha.0,
        w.alpha.1,
        w.tau.0,
        w.tau.1
    )
    .unwrap();
    writeln!(svg, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##).unwrap();
    writeln!(svg, r#"<g shape-rendering="crispEdges">"#).unwrap();
    for iy in 0..HEIGHT {
        let tau = w.tau_at(iy as f64 + 0.5);
        let mut run: Option<(usize, Region)> = None;
        for ix in 0..=WIDTH {
            let here = if ix < WIDTH { Some(region_at(base, w.alpha_at(ix as f64 + 0.5), tau)?) } else { None };
            match (run, here) {
                (Some((_, r)), Some(h)) if r == h => {}
                _ => {
                    if let Some((start, r)) = run {
                        if let Some(fill) = shade(r) {
                            writeln!(svg, r#"<rect x="{start}" y="{iy}" width="{}" height="1" fill="{fill}"/>"#, ix - start)
                                .unwrap();
                        }
                    }
                    run = here.map(|h| (ix, h));
                }
            }
        }
    }
    writeln!(svg, "</g>").unwrap();
    for curve in BoundaryCurve::ALL {
        let colour = curve_colour(curve);
        if let Some(alpha) = curve.alpha_line(base) {
            if alpha > w.alpha.0 && alpha < w.alpha.1 {
                let x = w.x(alpha);
                writeln!(
                    svg,
                    r#"<line x1="{x:.2}" y1="0" x2="{x:.2}" y2="{HEIGHT}" stroke="{colour}" stroke-dasharray="4 3"><title>{}</title></line>"#,
                    curve.label()
                )
                .unwrap();
            }
            continue;
        }
        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for ix in 0..=WIDTH {
            let alpha = w.alpha_at(ix as f64);
            match curve.tau_at(base, alpha).filter(|t| t.is_finite() && *t >= w.tau.0 && *t <= w.tau.1) {
                Some(tau) => segments.last_mut().unwrap().push((ix as f64, w.y(tau))),
                None if !segments.last().unwrap().is_empty() => segments.push(Vec::new()),
                None => {}
            }
        }
        for seg in segments.iter().filter(|s| s.len() > 1) {
            let pts: Vec<String> = seg.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"><title>{}</title></polyline>"#,
                pts.join(" "),
                curve.label()
            )
            .unwrap();
        }
    }
    let legend = [
        ("#08306b", "well-posed, unconditional uniqueness"),
        ("#4292c6", "well-posed"),
        ("#c6dbef", "nonexistence for some positive data"),
    ];
    for (i, (fill, text)) in legend.iter().enumerate() {
        let y = 8 + 14 * i;
        writeln!(svg, r##"<rect x="{}" y="{y}" width="10" height="10" fill="{fill}" stroke="#000000" stroke-width="0.5"/>"##, WIDTH - 230)
            .unwrap();
        writeln!(svg, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10">{text}</text>"#, WIDTH - 215, y + 9).unwrap();
    }
    let axis = |x: usize, y: usize, anchor: &str, text: String| {
        format!(r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="10" text-anchor="{anchor}">{text}</text>"#)
    };
    writeln!(svg, "{}", axis(3, HEIGHT - 4, "start", format!("alpha = {}", w.alpha.0))).unwrap();
    writeln!(svg, "{}", axis(WIDTH - 3, HEIGHT - 4, "end", format!("alpha = {}", w.alpha.1))).unwrap();
    writeln!(svg, "{}", axis(3, 12, "start", format!("tau = {}", w.tau.1))).unwrap();
    writeln!(svg, "{}", axis(3, HEIGHT - 16, "start", format!("tau = {}", w.tau.0))).unwrap();
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn run(ctx: &mut Context) -> Result<(), CliError> {
    let base = ctx.params()?;
    let window = Window {
        alpha: (ctx.f64_or("alpha_min", 1.0)?, ctx.f64_or("alpha_max", 4.0)?),
        tau: (
            ctx.f64_or("tau_min", base.sigma_minus().min(0.0) - 0.5)?,
            ctx.f64_or("tau_max", base.upper_window_num().value() + 0.5)?,
        ),
    };
    if !(window.alpha.0 < window.alpha.1 && window.tau.0 < window.tau.1 && window.alpha.0 >= 1.0) {
        return Err(CliError::usage("plot window needs 1 <= alpha_min < alpha_max and tau_min < tau_max"));
    }
    let svg = render(&base, &window)?;
    ctx.write("region.svg", &svg)?;
    println!("wrote {}", ctx.path("region.svg").display());
    Ok(())
}
