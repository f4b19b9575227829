//! Kernel tables for many times at once.
//!
//! On a log-uniform grid with step `h`, the dilation identity
//! `G(λ²t, λr, λρ) = λ^{-d} G(t, r, ρ)` turns a change of time by
//! `e^{-2hm}` into a shift of both node indices by `m`. So on the time
//! lattice `t_k = T e^{-2hs(N-1-k)}`, the operator at time `c t_k` is the
//! `n × n` block starting at `(m, m)`, `m = s(N-1-k)`, of a single table
//! built at time `cT` on the grid extended by `s(N-1)` nodes.

use std::sync::Arc;

use rayon::prelude::*;

use super::rows::{build_row, KernelRow, NodeSet};
use crate::besselkernel::RadialKernel;
use crate::error::{Error, Result};
use crate::exponents::ProblemParams;
use crate::radialcore::RadialGrid;

/// Geometric time nodes tied to a radial grid step.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeLattice {
    t_end: f64,
    h: f64,
    stride: usize,
    count: usize,
}

impl TimeLattice {
    /// Nodes `t_end e^{-2 h stride j}` down to no earlier than `t_floor`.
    pub fn new(grid: &RadialGrid, stride: usize, t_end: f64, t_floor: f64) -> Result<TimeLattice> {
        if stride == 0 || !(t_end > 0.0 && t_floor > 0.0 && t_floor <= t_end && t_end.is_finite()) {
            return Err(Error::domain(format!(
                "time lattice needs stride >= 1 and 0 < t_floor <= t_end, got stride {stride}, [{t_floor}, {t_end}]"
            )));
        }
        let step = 2.0 * grid.h() * stride as f64;
        let count = ((t_end / t_floor).ln() / step + 1e-9).floor() as usize + 1;
        Ok(TimeLattice { t_end, h: grid.h(), stride, count })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Ratio between consecutive times.
    pub fn ratio(&self) -> f64 {
        (2.0 * self.h * self.stride as f64).exp()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t_end * (-2.0 * self.h * (self.shift(k)) as f64).exp()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.time(k)).collect()
    }

    /// Index shift of time node `k`.
    pub fn shift(&self, k: usize) -> usize {
        self.stride * (self.count - 1 - k)
    }

    fn max_shift(&self) -> usize {
        self.shift(0)
    }
}

/// Table for the operators `e^{-c t_k L_a}` at every lattice time `t_k`.
#[derive(Debug)]
pub struct LatticeKernel {
    factor: f64,
    n: usize,
    lattice: TimeLattice,
    rows: Vec<KernelRow>,
}

impl LatticeKernel {
    /// Table for time factor `c ∈ (0, 1]` on `grid`.
    pub fn build(params: &ProblemParams, factor: f64, grid: &RadialGrid, lattice: &TimeLattice) -> Result<LatticeKernel> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::domain(format!("time factor must be positive, got {factor}")));
        }
        if (lattice.h - grid.h()).abs() > 1e-15 * grid.h() {
            return Err(Error::GridMismatch("time lattice was built for another grid".into()));
        }
        let kernel = RadialKernel::new(params, factor * lattice.t_end)?;
        let n = grid.len();
        let s = lattice.stride;
        let smax = lattice.max_shift();
        let total = n + smax;
        let set = NodeSet::new(grid.ln_nodes()[0], grid.h(), total);
        let rows = (0..total)
            .into_par_iter()
            .map(|a| {
                // Blocks m ∈ sZ ∩ [0, smax] containing row a.
                let m_lo = (a + 1).saturating_sub(n).div_ceil(s) * s;
                let m_hi = (a / s * s).min(smax);
                if m_lo > m_hi {
                    return KernelRow::default();
                }
                build_row(&kernel, &set, a, m_lo..m_hi + n)
            })
            .collect();
        Ok(LatticeKernel { factor, n, lattice: lattice.clone(), rows })
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn lattice(&self) -> &TimeLattice {
        &self.lattice
    }

    /// Number of stored entries.
    pub fn stored(&self) -> usize {
        self.rows.iter().map(KernelRow::len).sum()
    }

    /// `e^{-c t_k L_a}` applied to node values. `corrected` holds the values
    /// multiplied by the grid's end-correction factors and `raw` the plain
    /// values; point-value rows use the former, product-integration rows the
    /// latter.
    pub fn apply_into(&self, k: usize, corrected: &[f64], raw: &[f64], out: &mut [f64]) {
        let m = self.lattice.shift(k);
        for (i, o) in out.iter_mut().enumerate().take(self.n) {
            let row = &self.rows[m + i];
            *o = if row.narrow { row.dot_shifted(raw, m) } else { row.dot_shifted(corrected, m) };
        }
    }

    /// Convenience wrapper computing the corrected input itself.
    pub fn apply(&self, grid: &Arc<RadialGrid>, k: usize, f: &[f64]) -> Vec<f64> {
        let corrected: Vec<f64> = f.iter().enumerate().map(|(l, v)| v * grid.unit_weight(l)).collect();
        let mut out = vec![0.0; self.n];
        self.apply_into(k, &corrected, f, &mut out);
        out
    }
}
