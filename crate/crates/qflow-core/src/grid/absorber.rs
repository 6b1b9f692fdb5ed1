//! Complex absorbing layer for open-boundary 2D scenarios.

use crate::error::GridError;
use crate::grid::GridState;

/// Smooth absorbing mask applied once per step near domain edges.
///
/// The decay rate ramps as `strength * sin^2(pi xi / 2)` with `xi` going
/// 0 → 1 across the layer, so the mask is exactly 1 outside the layer
/// and the absorbed probability is tracked cumulatively.
#[derive(Debug, Clone)]
pub struct AbsorbingLayer {
    width: f64,
    strength: f64,
    absorbed: f64,
}

impl AbsorbingLayer {
    pub fn new(state_geometry_extent: [f64; 2], width: f64, strength: f64) -> Result<Self, GridError> {
        let span = state_geometry_extent[1] - state_geometry_extent[0];
        if width < 0.0 || width > 0.25 * span {
            return Err(GridError::InvalidGeometry(format!(
                "absorbing width {width} must be in [0, {}] (25% of the domain)",
                0.25 * span
            )));
        }
        Ok(Self {
            width,
            strength,
            absorbed: 0.0,
        })
    }

    /// Probability absorbed so far.
    pub fn absorbed(&self) -> f64 {
        self.absorbed
    }

    /// Apply the mask for one step of `dt`; returns the new state and the
    /// probability absorbed in this application.
    pub fn apply(&mut self, state: &GridState, dt: f64) -> (GridState, f64) {
        let g = &state.geometry;
        let before = state.norm_sqr();
        let mut psi = state.psi.clone();
        if self.width > 0.0 && self.strength != 0.0 {
            for (i, p) in psi.iter_mut().enumerate() {
                let pos = g.position(i);
                let mut gamma = 0.0;
                for axis in 0..g.dimension() {
                    let [min, max] = g.extents(axis);
                    let x = pos[axis];
                    let from_left = (min + self.width - x) / self.width;
                    let from_right = (x - (max - self.width)) / self.width;
                    for xi in [from_left, from_right] {
                        if xi > 0.0 {
                            let xi = xi.min(1.0);
                            let s = (std::f64::consts::FRAC_PI_2 * xi).sin();
                            gamma += self.strength * s * s;
                        }
                    }
                }
                if gamma > 0.0 {
                    *p *= (-gamma * dt).exp();
                }
            }
        }
        let next = GridState::new(g.clone(), psi, state.t).expect("same geometry");
        let absorbed = before - next.norm_sqr();
        self.absorbed += absorbed;
        (next, absorbed)
    }
}
