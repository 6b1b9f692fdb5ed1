//! Ensembles of trajectories over a shared time base.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::TrajectoryError;
use crate::traj::{integrate_path, AdaptiveOptions, PathHalt, VelocityProvider};
use crate::Pos;

/// N time-indexed paths with shared times, per-path weights, and the
/// initial conditions they started from. Positions after a halted path's
/// halt time are NaN.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryEnsemble {
    pub dimension: usize,
    pub times: Vec<f64>,
    /// `paths[i][k]` is the position of path `i` at `times[k]`.
    pub paths: Vec<Vec<Pos>>,
    pub weights: Vec<f64>,
    pub initial_positions: Vec<Pos>,
    pub halts: Vec<(usize, PathHalt)>,
}

/// Sidecar metadata for ensemble exports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleMeta {
    pub tolerance: f64,
    pub provider: String,
    pub seed: Option<u64>,
    pub n_paths: usize,
    pub t_span: [f64; 2],
    pub parameters: serde_json::Value,
}

/// Integrate every initial position through the provider, resampling all
/// paths onto `output_times` (strictly increasing, inside the provider's
/// time range). Weights default to uniform `1/n` when `None`.
pub fn integrate_ensemble(
    provider: &(impl VelocityProvider + ?Sized),
    initial: &[Pos],
    weights: Option<&[f64]>,
    output_times: &[f64],
    tol: f64,
) -> Result<TrajectoryEnsemble, TrajectoryError> {
    if initial.is_empty() {
        return Err(TrajectoryError::InvalidInput("no initial positions".into()));
    }
    if output_times.len() < 2 {
        return Err(TrajectoryError::InvalidInput(
            "need at least two output times".into(),
        ));
    }
    if output_times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(TrajectoryError::InvalidInput(
            "output times must be strictly increasing".into(),
        ));
    }
    let (t0, t1) = provider.time_range();
    let (a, b) = (output_times[0], *output_times.last().unwrap());
    let slack = 1e-9 * (t1 - t0).min(f64::MAX).max(1.0);
    if a < t0 - slack || b > t1 + slack {
        return Err(TrajectoryError::ProviderRangeExceeded(format!(
            "requested [{a}, {b}] outside provider range [{t0}, {t1}]"
        )));
    }
    if let Some(w) = weights {
        if w.len() != initial.len() {
            return Err(TrajectoryError::InvalidInput(format!(
                "{} weights for {} paths",
                w.len(),
                initial.len()
            )));
        }
    }

    let options = AdaptiveOptions::with_tol(tol);
    let outcomes: Vec<_> = initial
        .par_iter()
        .map(|&x0| integrate_path(provider, x0, output_times, &options))
        .collect();

    let mut paths = Vec::with_capacity(initial.len());
    let mut halts = Vec::new();
    for (i, o) in outcomes.into_iter().enumerate() {
        if let Some(h) = o.halt {
            halts.push((i, h));
        }
        paths.push(o.positions);
    }
    let n = initial.len();
    Ok(TrajectoryEnsemble {
        dimension: provider.dimension(),
        times: output_times.to_vec(),
        paths,
        weights: weights
            .map(|w| w.to_vec())
            .unwrap_or_else(|| vec![1.0 / n as f64; n]),
        initial_positions: initial.to_vec(),
        halts,
    })
}

impl TrajectoryEnsemble {
    /// Positions of all (finite) paths at time index `k`, axis 0.
    pub fn positions_at(&self, k: usize) -> Vec<f64> {
        self.paths
            .iter()
            .map(|p| p[k][0])
            .filter(|x| x.is_finite())
            .collect()
    }

    /// Per-path least-squares slope over a time window (axis 0).
    pub fn slopes_in_window(&self, window: [f64; 2]) -> Result<Vec<f64>, TrajectoryError> {
        let [a, b] = window;
        let t0 = self.times[0];
        let t1 = *self.times.last().unwrap();
        let idx: Vec<usize> = self
            .times
            .iter()
            .enumerate()
            .filter(|(_, &t)| t >= a && t <= b)
            .map(|(i, _)| i)
            .collect();
        if a >= b || idx.len() < 2 {
            return Err(TrajectoryError::WindowOutOfRange { a, b, t0, t1 });
        }
        let tm: f64 = idx.iter().map(|&i| self.times[i]).sum::<f64>() / idx.len() as f64;
        let denom: f64 = idx
            .iter()
            .map(|&i| (self.times[i] - tm) * (self.times[i] - tm))
            .sum();
        Ok(self
            .paths
            .iter()
            .map(|p| {
                let xm: f64 = idx.iter().map(|&i| p[i][0]).sum::<f64>() / idx.len() as f64;
                idx.iter()
                    .map(|&i| (self.times[i] - tm) * (p[i][0] - xm))
                    .sum::<f64>()
                    / denom
            })
            .collect())
    }

    /// One row per (path, time): `path_id,t,x[,y]`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        if self.dimension == 2 {
            writeln!(w, "path_id,t,x,y")?;
        } else {
            writeln!(w, "path_id,t,x")?;
        }
        for (i, path) in self.paths.iter().enumerate() {
            for (k, &t) in self.times.iter().enumerate() {
                if self.dimension == 2 {
                    writeln!(w, "{},{},{},{}", i, t, path[k][0], path[k][1])?;
                } else {
                    writeln!(w, "{},{},{}", i, t, path[k][0])?;
                }
            }
        }
        Ok(())
    }
}

/// Outcome of the 1D ordering check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoncrossingReport {
    pub pass: bool,
    /// First violation: `(time_index, t, path_a, path_b)`.
    pub first_violation: Option<(usize, f64, usize, usize)>,
    pub paths_checked: usize,
}

/// Verify that the permutation sorting paths by position is identical at
/// every time index (1D non-crossing). Halted paths are excluded.
pub fn check_noncrossing(ensemble: &TrajectoryEnsemble) -> NoncrossingReport {
    let alive: Vec<usize> = (0..ensemble.paths.len())
        .filter(|&i| ensemble.paths[i].iter().all(|p| p[0].is_finite()))
        .collect();
    let mut order: Vec<usize> = alive.clone();
    order.sort_by(|&i, &j| {
        ensemble.paths[i][0][0]
            .partial_cmp(&ensemble.paths[j][0][0])
            .unwrap()
    });
    for (k, &t) in ensemble.times.iter().enumerate() {
        for w in order.windows(2) {
            let (i, j) = (w[0], w[1]);
            if ensemble.paths[i][k][0] > ensemble.paths[j][k][0] {
                return NoncrossingReport {
                    pass: false,
                    first_violation: Some((k, t, i, j)),
                    paths_checked: alive.len(),
                };
            }
        }
    }
    NoncrossingReport {
        pass: true,
        first_violation: None,
        paths_checked: alive.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traj::AnalyticProvider;
    use crate::{GaussianParams, SuperpositionSpec};

    fn free_ensemble(n: usize) -> TrajectoryEnsemble {
        let provider = AnalyticProvider::new(SuperpositionSpec::single(
            GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.0).unwrap(),
        ));
        let initial: Vec<Pos> = (0..n)
            .map(|i| [-2.0 + 4.0 * i as f64 / (n - 1) as f64, 0.0])
            .collect();
        let times: Vec<f64> = (0..=40).map(|i| 0.05 * i as f64).collect();
        integrate_ensemble(&provider, &initial, None, &times, 1e-8).unwrap()
    }

    #[test]
    fn free_ensemble_never_crosses() {
        let e = free_ensemble(9);
        let report = check_noncrossing(&e);
        assert!(report.pass);
        assert_eq!(report.paths_checked, 9);
        // First index equals the initial conditions.
        for (i, p) in e.paths.iter().enumerate() {
            assert_eq!(p[0], e.initial_positions[i]);
        }
    }

    #[test]
    fn constructed_swap_is_caught() {
        let mut e = free_ensemble(5);
        let k = 17;
        let tmp = e.paths[1][k];
        e.paths[1][k] = e.paths[2][k];
        e.paths[2][k] = tmp;
        let report = check_noncrossing(&e);
        assert!(!report.pass);
        let (at, _, _, _) = report.first_violation.unwrap();
        assert_eq!(at, k);
    }

    #[test]
    fn slopes_of_classical_paths() {
        let provider = AnalyticProvider::new(SuperpositionSpec::single(
            GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 1.5).unwrap(),
        ));
        let times: Vec<f64> = (0..=50).map(|i| 0.2 * i as f64).collect();
        let e = integrate_ensemble(&provider, &[[0.0, 0.0]], None, &times, 1e-10).unwrap();
        let slopes = e.slopes_in_window([5.0, 10.0]).unwrap();
        assert!((slopes[0] - 1.5).abs() < 1e-8);
        assert!(matches!(
            e.slopes_in_window([100.0, 200.0]),
            Err(TrajectoryError::WindowOutOfRange { .. })
        ));
    }

    #[test]
    fn range_validation() {
        let provider = AnalyticProvider::new(SuperpositionSpec::single(
            GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.0).unwrap(),
        ));
        assert!(matches!(
            integrate_ensemble(&provider, &[], None, &[0.0, 1.0], 1e-8),
            Err(TrajectoryError::InvalidInput(_))
        ));
        assert!(matches!(
            integrate_ensemble(&provider, &[[0.0, 0.0]], None, &[0.0, 0.0], 1e-8),
            Err(TrajectoryError::InvalidInput(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let e = free_ensemble(2);
        let mut buf = Vec::new();
        e.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "path_id,t,x");
        assert!(lines.next().unwrap().starts_with("0,0,"));
    }
}
