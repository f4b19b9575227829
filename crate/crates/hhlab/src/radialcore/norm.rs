use rayon::prelude::*;

use super::function::RadialFunction;
use super::grid::RadialGrid;
use crate::besselkernel::sphere_area;
use crate::error::{Error, Result};

/// Below this many terms the sum is formed serially.
const PARALLEL_THRESHOLD: usize = 8192;

/// A norm value with an estimate of what the truncated domain misses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    /// Estimated mass of `|r^s f|^q` on `(0, r_min)`, relative to the mass
    /// inside the grid. Infinite when the integrand is not decaying towards
    /// the origin; zero for `q = ∞`.
    pub tail_origin: f64,
    /// The same for `(r_max, ∞)`.
    pub tail_infinity: f64,
}

impl NormEstimate {
    /// Both tails together.
    pub fn tail(&self) -> f64 {
        self.tail_origin + self.tail_infinity
    }
}

/// `‖|x|^s f‖_{L^q(R^d)} = (|S^{d-1}| ∫ |r^s f(r)|^q r^{d-1} dr)^{1/q}` over the
/// grid, or `sup |r^s f|` for `q = ∞`. Exponents `q = 1` and `q = ∞` are
/// accepted as well.
pub fn weighted_norm(f: &RadialFunction, q: f64, s: f64, d: u32) -> Result<f64> {
    weighted_norm_on(f.grid(), f.values(), q, s, d).map(|e| e.value)
}

/// Like [`weighted_norm`] but also reports the tail estimate.
pub fn weighted_norm_estimate(f: &RadialFunction, q: f64, s: f64, d: u32) -> Result<NormEstimate> {
    weighted_norm_on(f.grid(), f.values(), q, s, d)
}

/// Norm of raw samples on `grid`.
pub fn weighted_norm_on(grid: &RadialGrid, values: &[f64], q: f64, s: f64, d: u32) -> Result<NormEstimate> {
    if values.len() != grid.len() {
        return Err(Error::GridMismatch(format!("{} values for a grid of {} nodes", values.len(), grid.len())));
    }
    if !(q >= 1.0) {
        return Err(Error::domain(format!("norm exponent q must be at least 1, got {q}")));
    }
    if q.is_infinite() {
        let mut m = 0.0f64;
        for (&r, &v) in grid.nodes().iter().zip(values) {
            m = m.max((r.powf(s) * v).abs());
        }
        if !m.is_finite() {
            return Err(Error::Overflow(format!("sup of |r^{s} f| overflowed")));
        }
        return Ok(NormEstimate { value: m, tail_origin: 0.0, tail_infinity: 0.0 });
    }
    let h = grid.h();
    let ln_r = grid.ln_nodes();
    // Integrand in u = ln r, |r^s f|^q r^d, evaluated in log form.
    let term = |i: usize| -> f64 {
        let v = values[i].abs();
        if v == 0.0 {
            0.0
        } else {
            (q * (s * ln_r[i] + v.ln()) + d as f64 * ln_r[i]).exp()
        }
    };
    let terms: Vec<f64> = if values.len() >= PARALLEL_THRESHOLD {
        (0..values.len()).into_par_iter().map(term).collect()
    } else {
        (0..values.len()).map(term).collect()
    };
    let weighted: Vec<f64> = terms.iter().enumerate().map(|(i, t)| h * grid.unit_weight(i) * t).collect();
    let total = sphere_area(d) * pairwise_sum(&weighted);
    if !total.is_finite() {
        return Err(Error::Overflow(format!("L^{q}_{s} integral overflowed")));
    }
    let relative = |left| if total > 0.0 { sphere_area(d) * end_tail(&terms, h, left) / total } else { 0.0 };
    Ok(NormEstimate { value: total.powf(1.0 / q), tail_origin: relative(true), tail_infinity: relative(false) })
}

/// Extrapolated mass beyond one end, assuming exponential behaviour in `u`
/// fitted over the last few nodes.
fn end_tail(terms: &[f64], h: f64, left: bool) -> f64 {
    const SPAN: usize = 4;
    let n = terms.len();
    let (edge, inner) = if left { (terms[0], terms[SPAN]) } else { (terms[n - 1], terms[n - 1 - SPAN]) };
    if edge == 0.0 {
        return 0.0;
    }
    if inner == 0.0 {
        return f64::INFINITY;
    }
    // Decay rate towards the end, per unit u.
    let rate = (inner / edge).ln() / (SPAN as f64 * h);
    if rate <= 0.0 {
        f64::INFINITY
    } else {
        edge / rate
    }
}

/// Pairwise (cascade) summation in a fixed order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        xs.iter().sum()
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::besselkernel::ln_gamma;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn monomials_match_closed_form() {
        let g = RadialGrid::default_grid();
        // ∫_{rmin}^{rmax} r^{(s+m)q + d - 1} dr for a few exponents.
        for &(m, q, s, d) in &[(0.0, 2.0, 0.0, 3u32), (-0.5, 3.0, 0.25, 3), (1.0, 1.5, -1.0, 2), (-1.2, 2.0, 0.0, 4)] {
            let f = RadialFunction::from_fn(g.clone(), |r: f64| r.powf(m)).unwrap();
            let e = (s + m) * q + d as f64;
            let exact = (sphere_area(d) * (g.r_max().powf(e) - g.r_min().powf(e)) / e).powf(1.0 / q);
            let got = weighted_norm(&f, q, s, d).unwrap();
            assert!((got / exact - 1.0).abs() < 1e-10, "{m} {q} {s} {d}: {got} vs {exact}");
        }
    }

    #[test]
    fn gaussian_norm_and_tail() {
        let g = RadialGrid::default_grid();
        let f = RadialFunction::from_fn(g, |r: f64| (-r * r).exp()).unwrap();
        // ∫_0^∞ e^{-2r²} r² dr = Γ(3/2) / (2 · 2^{3/2}).
        let exact = (4.0 * PI * ln_gamma(1.5).exp() / (2.0 * 2f64.powf(1.5))).sqrt();
        let est = weighted_norm_estimate(&f, 2.0, 0.0, 3).unwrap();
        assert!((est.value / exact - 1.0).abs() < 1e-10);
        assert!(est.tail() < 1e-12);
        // r^{-3} is not L^1 near the origin in d = 3: tail flags it.
        let g = RadialGrid::new(1e-3, 1.0, 128).unwrap();
        let sing = RadialFunction::from_fn(g, |r: f64| r.powi(-3) * (-r).exp()).unwrap();
        assert!(weighted_norm_estimate(&sing, 1.0, 0.0, 3).unwrap().tail_origin.is_infinite());
    }

    #[test]
    fn indicator_of_unit_shell() {
        let g = RadialGrid::new(0.1, 10.0, 20001).unwrap();
        let f = RadialFunction::from_fn(g, |r| if (1.0..=2.0).contains(&r) { 1.0 } else { 0.0 }).unwrap();
        let got = weighted_norm(&f, 2.0, 0.0, 3).unwrap();
        assert!((got - (28.0 * PI / 3.0).sqrt()).abs() < 1e-3, "{got}");
    }

    #[test]
    fn truncation_never_increases_norm() {
        let g = RadialGrid::new(1e-3, 1e2, 300).unwrap();
        let f = RadialFunction::from_fn(g, |r: f64| r.powf(-0.7) * (-r).exp()).unwrap();
        let cut = f.map(|r, v| if (0.05..3.0).contains(&r) { v } else { 0.0 }).unwrap();
        for &(q, s) in &[(1.5, 0.0), (2.0, 0.4), (4.0, -0.2)] {
            assert!(weighted_norm(&cut, q, s, 3).unwrap() <= weighted_norm(&f, q, s, 3).unwrap());
        }
    }

    #[test]
    fn power_membership_threshold() {
        // |x|^{-b} on (0, 1] is in L^q_s iff b < s + d/q; the left tail says so.
        let g = RadialGrid::new(1e-6, 1.0, 1024).unwrap();
        let (q, s, d) = (2.0, 0.5, 3u32);
        for &(b, finite) in &[(1.9, true), (2.1, false)] {
            let f = RadialFunction::from_fn(g.clone(), |r: f64| r.powf(-b)).unwrap();
            let est = weighted_norm_estimate(&f, q, s, d).unwrap();
            assert_eq!(est.tail_origin.is_finite(), finite, "b = {b}");
        }
    }

    #[test]
    fn dilation_scaling() {
        let g = RadialGrid::new(1e-4, 1e2, 1200).unwrap();
        let lambda = 3.7;
        let f = RadialFunction::from_fn(g.clone(), |r: f64| r.powf(-0.4) * (-r * r).exp()).unwrap();
        let g2 = g.rescaled(1.0 / lambda).unwrap();
        let f2 = RadialFunction::from_fn(g2, |r: f64| {
            let x = lambda * r;
            x.powf(-0.4) * (-x * x).exp()
        })
        .unwrap();
        let (q, s, d) = (2.5, 0.3, 3u32);
        let ratio = weighted_norm(&f2, q, s, d).unwrap() / weighted_norm(&f, q, s, d).unwrap();
        assert!((ratio / lambda.powf(-s - d as f64 / q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_norm_and_errors() {
        let g = RadialGrid::new(0.5, 4.0, 64).unwrap();
        let f = RadialFunction::from_fn(g.clone(), |r| (-r).exp()).unwrap();
        let sup = weighted_norm(&f, f64::INFINITY, 1.0, 3).unwrap();
        assert!((sup - (-1f64).exp()).abs() < 1e-3);
        assert!(weighted_norm(&f, 0.5, 0.0, 3).is_err());
        let big = RadialFunction::from_fn(g, |_| 1e300).unwrap();
        assert!(matches!(weighted_norm(&big, 4.0, 0.0, 3), Err(Error::Overflow(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn holder(m1 in -1.0f64..1.0, m2 in -1.0f64..1.0, q in 1.2f64..5.0, s in -0.5f64..0.5, c in 0.2f64..3.0) {
            let g = RadialGrid::new(1e-3, 1e2, 400).unwrap();
            let f = RadialFunction::from_fn(g.clone(), |r: f64| r.powf(m1) * (-r).exp()).unwrap();
            let h = RadialFunction::from_fn(g.clone(), |r: f64| if r < c { r.powf(m2) } else { 0.5 * r.powf(-m2) * (-r).exp() }).unwrap();
            let fg = RadialFunction::new(g, f.values().iter().zip(h.values()).map(|(a, b)| a * b).collect()).unwrap();
            let qc = q / (q - 1.0);
            let lhs = weighted_norm(&fg, 1.0, 0.0, 3).unwrap();
            let rhs = weighted_norm(&f, q, s, 3).unwrap() * weighted_norm(&h, qc, -s, 3).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }

        #[test]
        fn homogeneous_and_triangle(c in -5.0f64..5.0, q in 1.0f64..6.0, s in -1.0f64..1.0, k in 0.5f64..3.0) {
            let g = RadialGrid::new(1e-3, 1e2, 256).unwrap();
            let f = RadialFunction::from_fn(g.clone(), |r: f64| (-r * r).exp()).unwrap();
            let h = RadialFunction::from_fn(g, |r: f64| (-k * r).exp() * r.sin()).unwrap();
            let nf = weighted_norm(&f, q, s, 3).unwrap();
            let ncf = weighted_norm(&f.scale(c).unwrap(), q, s, 3).unwrap();
            prop_assert!((ncf - c.abs() * nf).abs() <= 1e-12 * (1.0 + ncf));
            let nh = weighted_norm(&h, q, s, 3).unwrap();
            let nsum = weighted_norm(&f.add(&h).unwrap(), q, s, 3).unwrap();
            prop_assert!(nsum <= (nf + nh) * (1.0 + 1e-12));
        }
    }
}
