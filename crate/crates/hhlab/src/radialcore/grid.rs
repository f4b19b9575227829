use std::sync::Arc;

use crate::error::{Error, Result};

/// Highest Gregory correction order tried; the order actually used is the
/// largest one not exceeding this whose end weights are all positive.
const MAX_GREGORY_ORDER: usize = 8;

/// Identity of a grid, used as a cache key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridKey {
    r_min_bits: u64,
    r_max_bits: u64,
    n: usize,
}

/// Log-uniform radial grid on `[r_min, r_max]`.
#[derive(Debug, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    h: f64,
    nodes: Vec<f64>,
    ln_nodes: Vec<f64>,
    /// Trapezoid-with-corrections weights in `u = ln r`, before the `h r^d`
    /// factor.
    unit_weights: Vec<f64>,
}

impl RadialGrid {
    pub const DEFAULT_R_MIN: f64 = 1e-6;
    pub const DEFAULT_R_MAX: f64 = 1e3;
    pub const DEFAULT_NODES: usize = 2048;

    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Arc<RadialGrid>> {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::domain(format!("grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if n < 4 * MAX_GREGORY_ORDER {
            return Err(Error::domain(format!("grid needs at least {} nodes, got {n}", 4 * MAX_GREGORY_ORDER)));
        }
        let (u0, u1) = (r_min.ln(), r_max.ln());
        let h = (u1 - u0) / (n - 1) as f64;
        let ln_nodes: Vec<f64> = (0..n).map(|i| if i == n - 1 { u1 } else { u0 + i as f64 * h }).collect();
        let mut nodes: Vec<f64> = ln_nodes.iter().map(|u| u.exp()).collect();
        nodes[0] = r_min;
        nodes[n - 1] = r_max;
        let corr = gregory_corrections();
        let mut unit_weights = vec![1.0; n];
        for (j, c) in corr.iter().enumerate() {
            unit_weights[j] += c;
            unit_weights[n - 1 - j] += c;
        }
        Ok(Arc::new(RadialGrid { r_min, r_max, h, nodes, ln_nodes, unit_weights }))
    }

    pub fn default_grid() -> Arc<RadialGrid> {
        RadialGrid::new(Self::DEFAULT_R_MIN, Self::DEFAULT_R_MAX, Self::DEFAULT_NODES).expect("valid defaults")
    }

    /// The same grid with every node multiplied by `lambda`.
    pub fn rescaled(&self, lambda: f64) -> Result<Arc<RadialGrid>> {
        RadialGrid::new(self.r_min * lambda, self.r_max * lambda, self.len())
    }

    pub fn key(&self) -> GridKey {
        GridKey { r_min_bits: self.r_min.to_bits(), r_max_bits: self.r_max.to_bits(), n: self.len() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Spacing in `ln r`.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn ln_nodes(&self) -> &[f64] {
        &self.ln_nodes
    }

    /// Correction factor of node `i` relative to the plain rule (1 inside).
    pub fn unit_weight(&self, i: usize) -> f64 {
        self.unit_weights[i]
    }

    /// Weights for `∫ g(r) r^{d-1} dr` over `[r_min, r_max]`.
    pub fn weights(&self, d: u32) -> Vec<f64> {
        self.nodes.iter().zip(&self.unit_weights).map(|(r, c)| self.h * c * r.powi(d as i32)).collect()
    }

    /// Exact `∫_{r_min}^{r_max} r^{d-1} dr`.
    pub fn exact_volume(&self, d: u32) -> f64 {
        let d = d as i32;
        (self.r_max.powi(d) - self.r_min.powi(d)) / d as f64
    }

    /// Index `i` with `r_i ≤ r < r_{i+1}` and the fractional position in
    /// `ln r`, or `None` outside the grid.
    pub fn locate(&self, r: f64) -> Option<(usize, f64)> {
        if !(r >= self.r_min && r <= self.r_max) {
            return None;
        }
        let x = (r.ln() - self.ln_nodes[0]) / self.h;
        let i = (x.floor() as usize).min(self.len() - 2);
        Some((i, (x - i as f64).clamp(0.0, 1.0)))
    }
}

/// Endpoint corrections `δ_0, …, δ_{m-1}` added to the unit trapezoid
/// weights (including the `-½` of the trapezoid end node) so that the rule
/// integrates polynomials of degree `< m` exactly. They solve
/// `Σ_j δ_j j^i = B_{i+1}/(i+1)` for odd `i` and `0` for even `i`, with the
/// plain trapezoid end weight folded in.
fn gregory_corrections() -> Vec<f64> {
    for m in (2..=MAX_GREGORY_ORDER).rev() {
        let delta = gregory_order(m);
        if delta.iter().all(|c| 1.0 + c > 0.0) {
            return delta;
        }
    }
    vec![-0.5]
}

fn gregory_order(m: usize) -> Vec<f64> {
    // B_0, B_2, B_4, B_6, B_8.
    const BERNOULLI_EVEN: [f64; 5] = [1.0, 1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![0.0; m];
    for i in 0..m {
        for (j, row) in a[i].iter_mut().enumerate() {
            *row = if i == 0 { 1.0 } else { (j as f64).powi(i as i32) };
        }
        // Trapezoid end weight is already ½ lower than 1 at node 0; express
        // the correction relative to unit weights.
        let end_shift = if i == 0 { -0.5 } else { 0.0 };
        b[i] = end_shift + if i % 2 == 1 { BERNOULLI_EVEN[i.div_ceil(2)] / (i + 1) as f64 } else { 0.0 };
    }
    solve_dense(a, b)
}

/// Gaussian elimination with partial pivoting for the small systems above.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (x, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}
