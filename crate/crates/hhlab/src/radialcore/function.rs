use std::sync::Arc;

use super::grid::RadialGrid;
use crate::error::{Error, Result};

/// Samples of a radial function on a [`RadialGrid`]. Every value is finite.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialFunction {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>) -> Result<RadialFunction> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} values for a grid of {} nodes", values.len(), grid.len())));
        }
        check_finite(&values)?;
        Ok(RadialFunction { grid, values })
    }

    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Result<RadialFunction> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        RadialFunction::new(grid, values)
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> RadialFunction {
        let n = grid.len();
        RadialFunction { grid, values: vec![0.0; n] }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Result<RadialFunction> {
        let values = self.grid.nodes().iter().zip(&self.values).map(|(&r, &v)| f(r, v)).collect();
        RadialFunction::new(self.grid.clone(), values)
    }

    pub fn scale(&self, c: f64) -> Result<RadialFunction> {
        self.map(|_, v| c * v)
    }

    pub fn add(&self, other: &RadialFunction) -> Result<RadialFunction> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RadialFunction) -> Result<RadialFunction> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &RadialFunction, f: impl Fn(f64, f64) -> f64) -> Result<RadialFunction> {
        if self.grid.key() != other.grid.key() {
            return Err(Error::GridMismatch("functions live on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        RadialFunction::new(self.grid.clone(), values)
    }

    /// Linear interpolation in `ln r`; zero outside the grid.
    pub fn eval(&self, r: f64) -> f64 {
        match self.grid.locate(r) {
            Some((i, w)) => (1.0 - w) * self.values[i] + w * self.values[i + 1],
            None => 0.0,
        }
    }

    /// Largest absolute value.
    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index, value: values[index] }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan_and_mismatch() {
        let g = RadialGrid::new(0.1, 10.0, 64).unwrap();
        let mut v = vec![1.0; 64];
        v[7] = f64::NAN;
        assert!(matches!(RadialFunction::new(g.clone(), v), Err(Error::NonFinite { index: 7, .. })));
        assert!(matches!(RadialFunction::new(g.clone(), vec![0.0; 3]), Err(Error::GridMismatch(_))));
        let f = RadialFunction::from_fn(g.clone(), |r| 1.0 / r).unwrap();
        assert!(f.scale(f64::INFINITY).is_err());
        let other = RadialFunction::zeros(RadialGrid::new(0.1, 10.0, 65).unwrap());
        assert!(f.add(&other).is_err());
    }

    #[test]
    fn interpolation_is_exact_for_log_linear_data() {
        let g = RadialGrid::new(0.1, 10.0, 64).unwrap();
        let f = RadialFunction::from_fn(g, |r| 2.0 + r.ln()).unwrap();
        assert!((f.eval(1.234) - (2.0 + 1.234f64.ln())).abs() < 1e-13);
        assert_eq!(f.eval(20.0), 0.0);
    }
}
