//! Ehrenfest consistency: the weighted ensemble mean of a free-packet
//! swarm must ride the classical path.

use serde::{Deserialize, Serialize};

use crate::traj::TrajectoryEnsemble;
use crate::GaussianParams;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EhrenfestReport {
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Set when the mean drifts off the classical path: for exact
    /// dynamics that means the initial sample did not represent the
    /// packet (e.g. one-sided).
    pub nonrepresentative_sampling: bool,
    /// (t, mean, classical) triples.
    pub means: Vec<(f64, f64, f64)>,
}

/// Check `<x>(t) = center + v0 t` for a free-packet ensemble (axis 0).
pub fn ehrenfest_check(
    ensemble: &TrajectoryEnsemble,
    params: &GaussianParams,
    tolerance: f64,
) -> EhrenfestReport {
    let mut means = Vec::with_capacity(ensemble.times.len());
    let mut max_dev = 0.0f64;
    for (k, &t) in ensemble.times.iter().enumerate() {
        let mut num = 0.0;
        let mut den = 0.0;
        for (path, w) in ensemble.paths.iter().zip(&ensemble.weights) {
            let x = path[k][0];
            if x.is_finite() {
                num += w * x;
                den += w;
            }
        }
        let mean = num / den;
        let classical = params.center[0] + params.velocity[0] * t;
        max_dev = max_dev.max((mean - classical).abs());
        means.push((t, mean, classical));
    }
    let pass = max_dev <= tolerance;
    EhrenfestReport {
        max_abs_deviation: max_dev,
        tolerance,
        pass,
        nonrepresentative_sampling: !pass,
        means,
    }
}
