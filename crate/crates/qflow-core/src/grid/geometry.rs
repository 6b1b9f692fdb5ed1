//! Uniform grid geometry for 1D and 2D domains.

use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::Pos;

/// Boundary handling of a grid. Spectral stepping requires `Periodic`;
/// the implicit stepper requires `Dirichlet` (psi = 0 at the domain
/// edges and at any wall nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Periodic,
    Dirichlet,
}

/// Uniform 1D/2D grid.
///
/// Nodes sit at `min + j * spacing` for `j in 0..points`; the periodic
/// convention excludes the right edge, so `spacing = (max - min) / points`
/// on every axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridGeometry {
    dimension: usize,
    extents: [[f64; 2]; 2],
    points: [usize; 2],
    spacing: Pos,
    boundary: Boundary,
}

impl GridGeometry {
    pub fn new_1d(min: f64, max: f64, points: usize, boundary: Boundary) -> Result<Self, GridError> {
        Self::new([[min, max], [0.0, 1.0]], [points, 1], 1, boundary)
    }

    pub fn new_2d(
        extents: [[f64; 2]; 2],
        points: [usize; 2],
        boundary: Boundary,
    ) -> Result<Self, GridError> {
        Self::new(extents, points, 2, boundary)
    }

    fn new(
        extents: [[f64; 2]; 2],
        points: [usize; 2],
        dimension: usize,
        boundary: Boundary,
    ) -> Result<Self, GridError> {
        let mut spacing = [0.0; 2];
        for axis in 0..dimension {
            let [min, max] = extents[axis];
            if !(max > min) || !min.is_finite() || !max.is_finite() {
                return Err(GridError::InvalidGeometry(format!(
                    "axis {axis}: extents [{min}, {max}]"
                )));
            }
            if points[axis] < 16 {
                return Err(GridError::InvalidGeometry(format!(
                    "axis {axis}: {} points < 16",
                    points[axis]
                )));
            }
            if boundary == Boundary::Periodic && !points[axis].is_power_of_two() {
                return Err(GridError::InvalidGeometry(format!(
                    "axis {axis}: spectral (periodic) grids need a power-of-two node count, got {}",
                    points[axis]
                )));
            }
            spacing[axis] = (max - min) / points[axis] as f64;
        }
        Ok(Self {
            dimension,
            extents,
            points,
            spacing,
            boundary,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn extents(&self, axis: usize) -> [f64; 2] {
        self.extents[axis]
    }

    pub fn points(&self, axis: usize) -> usize {
        if axis < self.dimension {
            self.points[axis]
        } else {
            1
        }
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.spacing[axis]
    }

    /// Total node count.
    pub fn len(&self) -> usize {
        self.points(0) * self.points(1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Volume of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        (0..self.dimension).map(|a| self.spacing[a]).product()
    }

    /// Coordinate of node `j` on `axis`.
    pub fn coord(&self, axis: usize, j: usize) -> f64 {
        self.extents[axis][0] + j as f64 * self.spacing[axis]
    }

    /// Row-major flat index of node `(ix, iy)`; `iy` is the fast axis.
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        ix * self.points(1) + iy
    }

    /// Position of a flat node index.
    pub fn position(&self, flat: usize) -> Pos {
        let ny = self.points(1);
        let ix = flat / ny;
        let iy = flat % ny;
        let mut p = [self.coord(0, ix), 0.0];
        if self.dimension == 2 {
            p[1] = self.coord(1, iy);
        }
        p
    }

    /// Index of the node closest to `x` on `axis`, clamped to the grid.
    pub fn nearest(&self, axis: usize, x: f64) -> usize {
        let j = ((x - self.extents[axis][0]) / self.spacing[axis]).round();
        (j.max(0.0) as usize).min(self.points(axis) - 1)
    }

    /// Exact node index of coordinate `x` on `axis`, if `x` lies on a node
    /// (to 1e-9 of a cell).
    pub fn node_at(&self, axis: usize, x: f64) -> Option<usize> {
        let j = (x - self.extents[axis][0]) / self.spacing[axis];
        let r = j.round();
        if (j - r).abs() < 1e-9 && r >= 0.0 && (r as usize) < self.points(axis) {
            Some(r as usize)
        } else {
            None
        }
    }

    /// Angular wavenumbers in FFT bin order for one axis.
    pub fn wavenumbers(&self, axis: usize) -> Vec<f64> {
        let n = self.points(axis);
        let l = self.extents[axis][1] - self.extents[axis][0];
        let dk = 2.0 * std::f64::consts::PI / l;
        (0..n)
            .map(|j| {
                let j = if j <= n / 2 { j as i64 } else { j as i64 - n as i64 };
                j as f64 * dk
            })
            .collect()
    }
}
