//! Grid wavefunction snapshots and initialization from analytic specs.

use num_complex::Complex64;

use crate::error::GridError;
use crate::{GridGeometry, SuperpositionSpec};

/// Complex wavefunction on a uniform grid plus its geometry and time
/// stamp. Immutable snapshot: stepping produces a new state.
#[derive(Debug, Clone)]
pub struct GridState {
    pub geometry: GridGeometry,
    pub psi: Vec<Complex64>,
    pub t: f64,
}

impl GridState {
    pub fn new(geometry: GridGeometry, psi: Vec<Complex64>, t: f64) -> Result<Self, GridError> {
        if psi.len() != geometry.len() {
            return Err(GridError::InvalidGeometry(format!(
                "psi length {} does not match grid size {}",
                psi.len(),
                geometry.len()
            )));
        }
        Ok(Self { geometry, psi, t })
    }

    /// Discrete norm `sum |psi|^2 * cell volume`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        let v = self.geometry.cell_volume();
        self.psi.iter().map(|p| p.norm_sqr()).sum::<f64>() * v
    }

    /// Probability density at every node.
    pub fn density(&self) -> Vec<f64> {
        self.psi.iter().map(|p| p.norm_sqr()).collect()
    }

    /// Mean position of `|psi|^2` along `axis`.
    pub fn centroid(&self, axis: usize) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, p) in self.psi.iter().enumerate() {
            let rho = p.norm_sqr();
            num += rho * self.geometry.position(i)[axis];
            den += rho;
        }
        num / den
    }

    /// Variance of `|psi|^2` along `axis`; its square root is the
    /// measured packet width.
    pub fn variance(&self, axis: usize) -> f64 {
        let mean = self.centroid(axis);
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, p) in self.psi.iter().enumerate() {
            let rho = p.norm_sqr();
            let d = self.geometry.position(i)[axis] - mean;
            num += rho * d * d;
            den += rho;
        }
        num / den
    }
}

/// Sample the analytic superposition on grid nodes at `t = 0`, without
/// renormalization.
pub fn sample_on_grid(spec: &SuperpositionSpec, geometry: &GridGeometry) -> Vec<Complex64> {
    (0..geometry.len())
        .map(|i| spec.psi(geometry.position(i), 0.0))
        .collect()
}

/// Initialize a grid state from an analytic spec: sample `Psi(x, 0)` at
/// the nodes and renormalize on the grid.
///
/// Fails with [`GridError::GridTooSmall`] unless the extents cover at
/// least `8 sigma0` beyond every packet center on every axis, and with
/// [`GridError::BoundaryDensityTooLarge`] if the initial boundary density
/// exceeds `1e-12` of the peak.
pub fn initialize_grid(
    spec: &SuperpositionSpec,
    geometry: &GridGeometry,
) -> Result<GridState, GridError> {
    if spec.dimension() != geometry.dimension() {
        return Err(GridError::InvalidGeometry(format!(
            "spec dimension {} vs grid dimension {}",
            spec.dimension(),
            geometry.dimension()
        )));
    }
    for axis in 0..geometry.dimension() {
        let [min, max] = geometry.extents(axis);
        for c in spec.components() {
            let clearance = 8.0 * c.sigma0[axis];
            if c.center[axis] - clearance < min || c.center[axis] + clearance > max {
                return Err(GridError::GridTooSmall {
                    axis,
                    center: c.center[axis],
                    sigma0: c.sigma0[axis],
                    required: clearance,
                    min,
                    max,
                });
            }
        }
    }

    let psi = sample_on_grid(spec, geometry);
    let peak = psi.iter().map(|p| p.norm_sqr()).fold(0.0, f64::max);
    let boundary_max = boundary_nodes(geometry)
        .map(|i| psi[i].norm_sqr())
        .fold(0.0, f64::max);
    if peak > 0.0 && boundary_max / peak > 1e-12 {
        return Err(GridError::BoundaryDensityTooLarge {
            ratio: boundary_max / peak,
        });
    }

    let mut state = GridState::new(geometry.clone(), psi, 0.0)?;
    let norm = state.norm();
    if norm > 0.0 {
        let scale = 1.0 / norm;
        for p in &mut state.psi {
            *p *= scale;
        }
    }
    Ok(state)
}

/// Flat indices of all boundary nodes (first/last node per axis).
fn boundary_nodes(geometry: &GridGeometry) -> impl Iterator<Item = usize> + '_ {
    let nx = geometry.points(0);
    let ny = geometry.points(1);
    (0..geometry.len()).filter(move |i| {
        let ix = i / ny;
        let iy = i % ny;
        ix == 0 || ix == nx - 1 || (geometry.dimension() == 2 && (iy == 0 || iy == ny - 1))
    })
}
