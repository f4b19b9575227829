//! Discrete kernel rows shared by the direct operator and the lattice tables.
//!
//! A row approximates `f ↦ |S^{d-1}| ∫ G(t, r_a, ρ) f(ρ) ρ^{d-1} dρ` as a
//! weighted sum over node values. Where the Gaussian factor is resolved by
//! the grid (width `√(2t)` at least `1.5 h r_a`) the row holds point values
//! `|S| G(t, r_a, ρ_l) h ρ_l^d`, to be combined with the grid's end
//! corrections. Otherwise it holds exact integrals of the kernel against the
//! piecewise-linear (in `ln ρ`) hat functions, computed with Gauss–Legendre
//! on sub-panels no wider than `√t`.

use std::ops::Range;
use std::sync::OnceLock;

use crate::besselkernel::{sphere_area, RadialKernel};
use crate::quadrature::{gauss_legendre, Rule};

/// Rows whose kernel width in `ln ρ` falls below this many grid steps use
/// hat-basis product integration.
pub(crate) const NARROW_RATIO: f64 = 1.5;

/// Entries with Gaussian factor below `e^{-GAUSS_CUT}` are dropped.
const GAUSS_CUT: f64 = 700.0;

fn panel_rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(8))
}

/// A contiguous segment of one operator row.
#[derive(Clone, Debug, Default)]
pub(crate) struct KernelRow {
    pub start: usize,
    pub narrow: bool,
    pub w: Vec<f64>,
}

impl KernelRow {
    /// `Σ_l w_l x_{l - offset}` over the columns that fall in
    /// `[offset, offset + x.len())`.
    #[inline]
    pub fn dot_shifted(&self, x: &[f64], offset: usize) -> f64 {
        let lo = self.start.max(offset);
        let hi = (self.start + self.w.len()).min(offset + x.len());
        if lo >= hi {
            return 0.0;
        }
        let w = &self.w[lo - self.start..hi - self.start];
        let x = &x[lo - offset..hi - offset];
        w.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }
}

/// Log-uniform node set `r_l = exp(u0 + l h)` for `l < count`.
#[derive(Clone, Debug)]
pub(crate) struct NodeSet {
    pub u0: f64,
    pub h: f64,
    pub nodes: Vec<f64>,
}

impl NodeSet {
    pub fn new(u0: f64, h: f64, count: usize) -> NodeSet {
        NodeSet { u0, h, nodes: (0..count).map(|l| (u0 + l as f64 * h).exp()).collect() }
    }

    /// First index with `r_l >= r`.
    fn lower_bound(&self, r: f64) -> usize {
        self.nodes.partition_point(|&x| x < r)
    }
}

/// Builds row `a` restricted to columns `cols`.
pub(crate) fn build_row(kernel: &RadialKernel, set: &NodeSet, a: usize, cols: Range<usize>) -> KernelRow {
    let t = kernel.t();
    let d = kernel.params().d();
    let area = sphere_area(d);
    let r = set.nodes[a];
    let reach = (4.0 * GAUSS_CUT * t).sqrt();
    let narrow = (2.0 * t).sqrt() / r < NARROW_RATIO * set.h;
    if cols.is_empty() {
        return KernelRow { start: cols.start, narrow, w: Vec::new() };
    }
    if !narrow {
        let lo = set.lower_bound(r - reach).max(cols.start);
        let hi = set.lower_bound(r + reach).clamp(lo, cols.end);
        let w = (lo..hi)
            .map(|l| {
                let rho = set.nodes[l];
                area * kernel.eval(r, rho) * set.h * rho.powi(d as i32)
            })
            .collect();
        return KernelRow { start: lo, narrow, w };
    }
    // Product integration against hats on panels [ρ_l, ρ_{l+1}].
    let first = set.nodes[cols.start];
    let last = set.nodes[cols.end - 1];
    let (from, to) = ((r - reach).max(first), (r + reach).min(last));
    if from >= to {
        return KernelRow { start: cols.start, narrow, w: Vec::new() };
    }
    let p_lo = set.lower_bound(from).saturating_sub(1).max(cols.start);
    let p_hi = set.lower_bound(to).min(cols.end - 1);
    let mut w = vec![0.0; p_hi - p_lo + 1];
    let rule = panel_rule();
    let sub = t.sqrt();
    for l in p_lo..p_hi {
        let (pa, pb) = (set.nodes[l].max(from), set.nodes[l + 1].min(to));
        if pa >= pb {
            continue;
        }
        let pieces = ((pb - pa) / sub).ceil().max(1.0) as usize;
        let len = (pb - pa) / pieces as f64;
        let ul = set.u0 + l as f64 * set.h;
        let (mut left, mut right) = (0.0, 0.0);
        for piece in 0..pieces {
            let base = pa + piece as f64 * len;
            for (&x, &wq) in rule.nodes.iter().zip(&rule.weights) {
                let rho = base + x * len;
                let v = area * kernel.eval(r, rho) * rho.powi(d as i32 - 1) * wq * len;
                let frac = ((rho.ln() - ul) / set.h).clamp(0.0, 1.0);
                left += v * (1.0 - frac);
                right += v * frac;
            }
        }
        w[l - p_lo] += left;
        w[l + 1 - p_lo] += right;
    }
    KernelRow { start: p_lo, narrow, w }
}
