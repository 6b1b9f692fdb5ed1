//! Potentials the grid propagators understand.

use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::well::EffectiveWellParams;
use crate::GridGeometry;

/// Potential selection for a propagation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    /// V = 0 everywhere.
    Free,
    /// Time-dependent square well plus infinite wall at x = 0 (1D,
    /// Dirichlet grids only).
    EffectiveWell(EffectiveWellParams),
    /// Saddle between two valleys: a Gaussian barrier along x plus a
    /// harmonic transverse channel whose floor follows a smooth curve.
    ModelPes2d(ModelPes2d),
    /// Static node potentials supplied directly (row-major).
    CustomTabulated { values: Vec<f64> },
}

/// Model 2D potential-energy surface
/// `V(x, y) = V_b exp(-x^2/w^2) + (m omega^2 / 2) (y - f(x))^2` with
/// valley-floor curve `f(x) = y_shift * tanh(x / bend_scale)`.
///
/// This is a stand-in: it reproduces the qualitative reactant-to-product
/// geometry of a bent reaction channel through a saddle, with every
/// parameter exposed here rather than taken from any published surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelPes2d {
    pub barrier_height: f64,
    pub barrier_width: f64,
    pub mass: f64,
    pub omega: f64,
    pub y_shift: f64,
    pub bend_scale: f64,
}

impl ModelPes2d {
    /// Valley-floor curve f(x).
    pub fn valley_floor(&self, x: f64) -> f64 {
        self.y_shift * (x / self.bend_scale).tanh()
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        let dy = y - self.valley_floor(x);
        self.barrier_height * (-x * x / (self.barrier_width * self.barrier_width)).exp()
            + 0.5 * self.mass * self.omega * self.omega * dy * dy
    }

    /// Mirror the surface in y (used by symmetry checks).
    pub fn mirrored_y(&self) -> Self {
        Self {
            y_shift: -self.y_shift,
            ..self.clone()
        }
    }
}

impl PotentialSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            PotentialSpec::Free => "free",
            PotentialSpec::EffectiveWell(_) => "effective_well",
            PotentialSpec::ModelPes2d(_) => "model_pes_2d",
            PotentialSpec::CustomTabulated { .. } => "custom_tabulated",
        }
    }

    pub fn is_time_dependent(&self) -> bool {
        matches!(self, PotentialSpec::EffectiveWell(_))
    }

    /// Node potentials at time `t`, plus the Dirichlet wall mask if this
    /// potential carries one.
    pub fn on_grid(
        &self,
        geometry: &GridGeometry,
        t: f64,
    ) -> Result<(Vec<f64>, Option<Vec<bool>>), GridError> {
        match self {
            PotentialSpec::Free => Ok((vec![0.0; geometry.len()], None)),
            PotentialSpec::EffectiveWell(params) => {
                let on_grid = params
                    .potential_on_grid(geometry, t)
                    .map_err(|e| GridError::UnsupportedPotential(e.to_string()))?;
                Ok((on_grid.values, Some(on_grid.dirichlet)))
            }
            PotentialSpec::ModelPes2d(pes) => {
                if geometry.dimension() != 2 {
                    return Err(GridError::UnsupportedPotential(
                        "model_pes_2d needs a 2D grid".into(),
                    ));
                }
                let v = (0..geometry.len())
                    .map(|i| {
                        let p = geometry.position(i);
                        pes.value(p[0], p[1])
                    })
                    .collect();
                Ok((v, None))
            }
            PotentialSpec::CustomTabulated { values } => {
                if values.len() != geometry.len() {
                    return Err(GridError::InvalidGeometry(format!(
                        "tabulated potential length {} vs grid size {}",
                        values.len(),
                        geometry.len()
                    )));
                }
                Ok((values.clone(), None))
            }
        }
    }
}
