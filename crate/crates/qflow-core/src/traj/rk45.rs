//! Adaptive embedded Runge–Kutta integration of single trajectories.
//!
//! Dormand–Prince 5(4) with PI-free step control and FSAL reuse. Steps
//! are clipped to land exactly on every requested output time, so no
//! dense-output interpolation enters the recorded positions.

use crate::traj::{ProviderError, VelocityProvider};
use crate::Pos;

/// Butcher tableau of the Dormand–Prince 5(4) pair.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
/// b - b*: weights of the embedded error estimate (k7 = FSAL stage).
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone)]
pub struct AdaptiveOptions {
    /// Local relative error target; also used as the absolute floor.
    pub tol: f64,
    pub max_steps: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_steps: 10_000_000,
        }
    }
}

impl AdaptiveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// Why a path stopped before the end of the requested span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltCause {
    /// Undefined velocity: the path reached a nodal region.
    NodalRegion,
    /// The path left the provider's spatial domain.
    OutOfDomain,
    /// Required step size fell below machine resolution.
    StepSizeUnderflow,
    /// Step budget exhausted.
    MaxSteps,
}

#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct PathHalt {
    pub t: f64,
    pub cause: HaltCause,
}

/// Positions at the requested output times; entries after a halt are NaN.
#[derive(Debug, Clone)]
pub struct PathOutcome {
    pub positions: Vec<Pos>,
    pub halt: Option<PathHalt>,
}

/// Integrate one trajectory, recording the state at every output time.
/// `output_times` must be strictly increasing; the first entry is the
/// initial time.
pub fn integrate_path<P: VelocityProvider + ?Sized>(
    provider: &P,
    start: Pos,
    output_times: &[f64],
    options: &AdaptiveOptions,
) -> PathOutcome {
    let dim = provider.dimension();
    let n_out = output_times.len();
    let mut positions = vec![[f64::NAN, f64::NAN]; n_out];
    positions[0] = start;

    let halt_from = |e: ProviderError, t: f64| PathHalt {
        t,
        cause: match e {
            ProviderError::NodalRegion { .. } => HaltCause::NodalRegion,
            ProviderError::OutOfDomain => HaltCause::OutOfDomain,
            ProviderError::OutOfTimeRange => HaltCause::OutOfDomain,
        },
    };

    let mut t = output_times[0];
    let mut y = start;
    let mut f = match provider.velocity(y, t) {
        Ok(v) => v,
        Err(e) => {
            return PathOutcome {
                positions,
                halt: Some(halt_from(e, t)),
            }
        }
    };

    let span = output_times[n_out - 1] - t;
    let mut h = (span / 100.0).min(output_times[1] - t).max(1e-12);
    let tol = options.tol;
    let mut next_out = 1usize;
    let mut steps = 0usize;

    while next_out < n_out {
        if steps >= options.max_steps {
            return PathOutcome {
                positions,
                halt: Some(PathHalt {
                    t,
                    cause: HaltCause::MaxSteps,
                }),
            };
        }
        steps += 1;

        // Clip to the next output time.
        let t_target = output_times[next_out];
        let mut clipped = false;
        if t + h >= t_target {
            h = t_target - t;
            clipped = true;
        }
        if h <= f64::EPSILON * t.abs().max(1.0) * 16.0 {
            // Step underflow (can only happen away from an exact output
            // landing, where h stays finite).
            if !clipped {
                return PathOutcome {
                    positions,
                    halt: Some(PathHalt {
                        t,
                        cause: HaltCause::StepSizeUnderflow,
                    }),
                };
            }
        }

        // Stage evaluations.
        let mut k = [[0.0f64; 2]; 7];
        k[0] = f;
        let mut failed: Option<ProviderError> = None;
        let mut stage_t = t;
        for s in 0..6 {
            let mut ys = y;
            for axis in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[axis];
                }
                ys[axis] += h * acc;
            }
            stage_t = t + C[s] * h;
            match provider.velocity(ys, stage_t) {
                Ok(v) => k[s + 1] = v,
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = failed {
            // Try shrinking into the defined region before giving up.
            if h > 1e3 * f64::EPSILON * t.abs().max(1.0) {
                h *= 0.25;
                continue;
            }
            return PathOutcome {
                positions,
                halt: Some(halt_from(e, stage_t)),
            };
        }

        // 5th-order solution (row 6 of A) and embedded error.
        let mut y_new = y;
        let mut err_norm = 0.0f64;
        for axis in 0..dim {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += A[5][j] * kj[axis];
            }
            y_new[axis] += h * acc;
        }
        // FSAL stage at (t + h, y_new).
        let f_new = match provider.velocity(y_new, t + h) {
            Ok(v) => v,
            Err(_) if h > 1e3 * f64::EPSILON * t.abs().max(1.0) => {
                h *= 0.25;
                continue;
            }
            Err(e) => {
                return PathOutcome {
                    positions,
                    halt: Some(halt_from(e, t + h)),
                }
            }
        };
        k[6] = f_new;
        for axis in 0..dim {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[axis];
            }
            e *= h;
            let scale = tol + tol * y[axis].abs().max(y_new[axis].abs());
            err_norm += (e / scale) * (e / scale);
        }
        err_norm = (err_norm / dim as f64).sqrt();

        if err_norm <= 1.0 {
            t = t + h;
            y = y_new;
            f = f_new;
            if clipped {
                positions[next_out] = y;
                next_out += 1;
            }
        }

        // Step-size controller (order 5: exponent 1/5), clamped.
        let factor = if err_norm > 0.0 {
            0.9 * err_norm.powf(-0.2)
        } else {
            5.0
        };
        h *= factor.clamp(0.2, 5.0);
        let remaining = output_times[n_out - 1] - t;
        if remaining > 0.0 {
            h = h.min(remaining);
        }
    }

    PathOutcome {
        positions,
        halt: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traj::AnalyticProvider;
    use crate::{GaussianParams, SuperpositionSpec};

    fn free_provider(v0: f64) -> AnalyticProvider {
        AnalyticProvider::new(SuperpositionSpec::single(
            GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, v0).unwrap(),
        ))
    }

    #[test]
    fn free_gaussian_endpoint_matches_closed_form() {
        let p = free_provider(0.0);
        let times: Vec<f64> = (0..=20).map(|i| 0.1 * i as f64).collect();
        let out = integrate_path(&p, [1.0, 0.0], &times, &AdaptiveOptions::with_tol(1e-8));
        assert!(out.halt.is_none());
        let end = out.positions.last().unwrap()[0];
        assert!((end - std::f64::consts::SQRT_2).abs() < 1e-6, "end {end}");
        // Interior point also matches the closed form.
        let params = GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        for (i, &t) in times.iter().enumerate() {
            let expect = params.trajectory(0, 1.0, t);
            assert!((out.positions[i][0] - expect).abs() < 1e-6);
        }
    }

    #[test]
    fn center_path_is_classical() {
        let p = free_provider(0.7);
        let times: Vec<f64> = (0..=10).map(|i| 0.5 * i as f64).collect();
        let out = integrate_path(&p, [0.0, 0.0], &times, &AdaptiveOptions::with_tol(1e-10));
        for (i, &t) in times.iter().enumerate() {
            assert!((out.positions[i][0] - 0.7 * t).abs() < 1e-8);
        }
    }

    #[test]
    fn tolerance_controls_error() {
        let p = free_provider(0.0);
        let times = vec![0.0, 2.0];
        let exact = std::f64::consts::SQRT_2;
        let err = |tol: f64| {
            let out = integrate_path(&p, [1.0, 0.0], &times, &AdaptiveOptions::with_tol(tol));
            (out.positions[1][0] - exact).abs()
        };
        let e1 = err(1e-5);
        let e2 = err(5e-6);
        // Halving the tolerance at least halves the endpoint error.
        assert!(e2 <= e1 / 2.0 + 1e-14, "e1 = {e1:.3e}, e2 = {e2:.3e}");
    }

    #[test]
    fn halts_in_nodal_region() {
        let spec = SuperpositionSpec::single(
            GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.0).unwrap(),
        )
        .with_floor(1e-8);
        let p = AnalyticProvider::new(spec);
        // Start far out in the floored tail.
        let out = integrate_path(&p, [10.0, 0.0], &[0.0, 1.0], &AdaptiveOptions::default());
        let halt = out.halt.expect("must halt");
        assert_eq!(halt.cause, HaltCause::NodalRegion);
        assert!(out.positions[1][0].is_nan());
    }
}
