use super::function::RadialFunction;
use super::norm::weighted_norm;
use crate::error::{Error, Result};

/// Snapshots `u(t_j)` at increasing times, with the Kato weight exponent
/// `β` attached. The Kato norm takes a max over the stored times.
#[derive(Clone, Debug, PartialEq)]
pub struct KatoFrame {
    times: Vec<f64>,
    snapshots: Vec<RadialFunction>,
    beta: f64,
}

impl KatoFrame {
    pub fn new(times: Vec<f64>, snapshots: Vec<RadialFunction>, beta: f64) -> Result<KatoFrame> {
        if times.is_empty() || times.len() != snapshots.len() {
            return Err(Error::domain(format!(
                "frame needs matching nonempty times and snapshots, got {} and {}",
                times.len(),
                snapshots.len()
            )));
        }
        if !(times[0] > 0.0) || times.windows(2).any(|w| !(w[1] > w[0])) || !times.iter().all(|t| t.is_finite()) {
            return Err(Error::domain("frame times must be positive, finite and increasing"));
        }
        let key = snapshots[0].grid().key();
        if snapshots.iter().any(|s| s.grid().key() != key) {
            return Err(Error::GridMismatch("frame snapshots must share one grid".into()));
        }
        Ok(KatoFrame { times, snapshots, beta })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn snapshots(&self) -> &[RadialFunction] {
        &self.snapshots
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> (f64, &RadialFunction) {
        let n = self.len() - 1;
        (self.times[n], &self.snapshots[n])
    }

    /// Per-time weighted norms `t^β ‖u(t)‖_{L^p_k}`.
    pub fn weighted_history(&self, p: f64, k: f64, d: u32) -> Result<Vec<f64>> {
        self.times
            .iter()
            .zip(&self.snapshots)
            .map(|(&t, u)| Ok(t.powf(self.beta) * weighted_norm(u, p, k, d)?))
            .collect()
    }
}

/// `max_j t_j^β ‖u(t_j)‖_{L^p_k}`.
pub fn kato_norm(frame: &KatoFrame, p: f64, k: f64, d: u32) -> Result<f64> {
    Ok(frame.weighted_history(p, k, d)?.into_iter().fold(0.0, f64::max))
}

/// Kato distance `max_j t_j^β ‖u(t_j) - v(t_j)‖_{L^p_k}` between two frames on
/// the same times.
pub fn kato_distance(u: &KatoFrame, v: &KatoFrame, p: f64, k: f64, d: u32) -> Result<f64> {
    if u.times != v.times {
        return Err(Error::GridMismatch("frames have different time nodes".into()));
    }
    let mut m = 0.0f64;
    for ((&t, a), b) in u.times.iter().zip(&u.snapshots).zip(&v.snapshots) {
        m = m.max(t.powf(u.beta) * weighted_norm(&a.sub(b)?, p, k, d)?);
    }
    Ok(m)
}
