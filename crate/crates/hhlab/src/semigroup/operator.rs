use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use rayon::prelude::*;

use super::rows::{build_row, KernelRow, NodeSet};
use crate::besselkernel::RadialKernel;
use crate::error::{Error, Result};
use crate::exponents::ProblemParams;
use crate::radialcore::{weighted_norm_on, GridKey, RadialFunction, RadialGrid};

/// Matrix of `e^{-tL_a}` on one grid, stored as row segments.
#[derive(Debug)]
pub struct SemigroupOperator {
    t: f64,
    grid: Arc<RadialGrid>,
    rows: Vec<KernelRow>,
}

impl SemigroupOperator {
    pub fn build(params: &ProblemParams, t: f64, grid: &Arc<RadialGrid>) -> Result<SemigroupOperator> {
        let kernel = RadialKernel::new(params, t)?;
        let n = grid.len();
        let set = NodeSet::new(grid.ln_nodes()[0], grid.h(), n);
        let rows = (0..n).into_par_iter().map(|a| build_row(&kernel, &set, a, 0..n)).collect();
        Ok(SemigroupOperator { t, grid: grid.clone(), rows })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    /// Number of stored entries.
    pub fn stored(&self) -> usize {
        self.rows.iter().map(KernelRow::len).sum()
    }

    /// Apply to raw node values.
    pub fn apply_values(&self, f: &[f64]) -> Vec<f64> {
        let g = &self.grid;
        let corrected: Vec<f64> = f.iter().enumerate().map(|(l, v)| v * g.unit_weight(l)).collect();
        self.rows
            .par_iter()
            .map(|row| if row.narrow { row.dot_shifted(f, 0) } else { row.dot_shifted(&corrected, 0) })
            .collect()
    }

    pub fn apply(&self, f: &RadialFunction) -> Result<RadialFunction> {
        if f.grid().key() != self.grid.key() {
            return Err(Error::GridMismatch("operator and data live on different grids".into()));
        }
        RadialFunction::new(self.grid.clone(), self.apply_values(f.values()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct CacheKey {
    a: u64,
    d: u32,
    t: u64,
    grid: GridKey,
}

/// Upper bound on cached matrix entries (about 400 MB).
const CACHE_BUDGET: usize = 50_000_000;

#[derive(Default)]
struct Cache {
    map: HashMap<CacheKey, Arc<SemigroupOperator>>,
    stored: usize,
}

fn cache() -> &'static RwLock<Cache> {
    static CACHE: OnceLock<RwLock<Cache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached operator for `(a, d, t, grid)`. When the cache would exceed its
/// budget it is emptied first.
pub fn semigroup_operator(params: &ProblemParams, t: f64, grid: &Arc<RadialGrid>) -> Result<Arc<SemigroupOperator>> {
    let key = CacheKey { a: params.a().to_bits(), d: params.d(), t: t.to_bits(), grid: grid.key() };
    if let Some(op) = cache().read().map.get(&key) {
        return Ok(op.clone());
    }
    let op = Arc::new(SemigroupOperator::build(params, t, grid)?);
    let mut c = cache().write();
    if let Some(existing) = c.map.get(&key) {
        return Ok(existing.clone());
    }
    if c.stored + op.stored() > CACHE_BUDGET {
        c.map.clear();
        c.stored = 0;
    }
    c.stored += op.stored();
    c.map.insert(key, op.clone());
    Ok(op)
}

/// `e^{-tL_a} f` on the grid of `f`.
pub fn apply_semigroup(params: &ProblemParams, t: f64, f: &RadialFunction) -> Result<RadialFunction> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::precondition(format!("semigroup time must be positive, got {t}")));
    }
    semigroup_operator(params, t, f.grid())?.apply(f)
}

/// Relative tail threshold above which [`apply_semigroup_checked`] warns.
pub const TAIL_WARNING: f64 = 1e-9;

/// [`apply_semigroup`] plus a warning when the data or the output has more
/// than [`TAIL_WARNING`] of its mass outside the grid.
pub fn apply_semigroup_checked(
    params: &ProblemParams,
    t: f64,
    f: &RadialFunction,
) -> Result<(RadialFunction, Option<String>)> {
    let out = apply_semigroup(params, t, f)?;
    let d = params.d();
    let tail_in = weighted_norm_on(f.grid(), f.values(), 1.0, 0.0, d)?.tail();
    let tail_out = weighted_norm_on(out.grid(), out.values(), 1.0, 0.0, d)?.tail();
    let worst = tail_in.max(tail_out);
    let warning = (worst > TAIL_WARNING)
        .then(|| format!("quadrature tail estimate {worst:.3e} exceeds {TAIL_WARNING:e}; widen the grid"));
    Ok((out, warning))
}
