//! Velocity-field providers: analytic superpositions and interpolated
//! grid snapshot sequences.

use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::grid::{synthesize_fields, Boundary, GridState};
use crate::{GridGeometry, Pos, SuperpositionSpec};

/// Why a velocity query failed at a point.
#[derive(Debug, Clone, PartialEq)]
pub enum ProviderError {
    /// Density at or below the floor: nodal region, velocity undefined.
    NodalRegion { rho: f64 },
    /// Position outside the provider's spatial domain.
    OutOfDomain,
    /// Time outside the snapshot range.
    OutOfTimeRange,
}

/// A queryable Bohmian velocity field. Providers must be shareable for
/// concurrent reads; all implementations here are immutable after
/// construction.
pub trait VelocityProvider: Sync {
    fn dimension(&self) -> usize;
    /// Inclusive time range over which queries are valid.
    fn time_range(&self) -> (f64, f64);
    fn velocity(&self, x: Pos, t: f64) -> Result<Pos, ProviderError>;
}

/// Closed-form provider: velocities straight from the analytic fields.
pub struct AnalyticProvider {
    spec: SuperpositionSpec,
}

impl AnalyticProvider {
    pub fn new(spec: SuperpositionSpec) -> Self {
        Self { spec }
    }

    pub fn spec(&self) -> &SuperpositionSpec {
        &self.spec
    }
}

impl VelocityProvider for AnalyticProvider {
    fn dimension(&self) -> usize {
        self.spec.dimension()
    }

    fn time_range(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    fn velocity(&self, x: Pos, t: f64) -> Result<Pos, ProviderError> {
        let s = self.spec.field_sample(x, t);
        s.v.ok_or(ProviderError::NodalRegion { rho: s.rho })
    }
}

/// Spatial interpolation order for grid providers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Linear per axis: cheap, noticeably less accurate.
    Bilinear,
    /// Catmull–Rom cubic per axis (default).
    Cubic,
}

/// Velocity field synthesized from a snapshot sequence: the chosen
/// spatial interpolation within each snapshot, linear interpolation in
/// time between them. Undefined (nodal) nodes poison any stencil that
/// touches them.
pub struct GridVelocityProvider {
    geometry: GridGeometry,
    times: Vec<f64>,
    velocities: Vec<Vec<Pos>>, // NaN marks undefined nodes
    interpolation: Interpolation,
}

impl GridVelocityProvider {
    /// Build from snapshots (strictly increasing times required).
    pub fn new(
        snapshots: &[GridState],
        mass: f64,
        hbar: f64,
        floor: f64,
        interpolation: Interpolation,
    ) -> Result<Self, GridError> {
        if snapshots.len() < 2 {
            return Err(GridError::InvalidGeometry(
                "need at least two snapshots to bracket query times".into(),
            ));
        }
        let geometry = snapshots[0].geometry.clone();
        let mut times = Vec::with_capacity(snapshots.len());
        let mut velocities = Vec::with_capacity(snapshots.len());
        for s in snapshots {
            if s.geometry != geometry {
                return Err(GridError::GeometryMismatch);
            }
            if let Some(&last) = times.last() {
                if s.t <= last {
                    return Err(GridError::InvalidGeometry(
                        "snapshot times must be strictly increasing".into(),
                    ));
                }
            }
            times.push(s.t);
            velocities.push(synthesize_fields(s, mass, hbar, floor)?.velocity_grid());
        }
        Ok(Self {
            geometry,
            times,
            velocities,
            interpolation,
        })
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn snapshot_times(&self) -> &[f64] {
        &self.times
    }

    /// Interpolate one velocity component grid at position `x`.
    fn interp_spatial(&self, snapshot: usize, x: Pos) -> Result<Pos, ProviderError> {
        let g = &self.geometry;
        let v = &self.velocities[snapshot];
        let ny = g.points(1);

        // Per-axis base index and fraction.
        let mut base = [0isize; 2];
        let mut frac = [0.0; 2];
        for axis in 0..g.dimension() {
            let [min, max] = g.extents(axis);
            if x[axis] < min || x[axis] > max {
                return Err(ProviderError::OutOfDomain);
            }
            let u = (x[axis] - min) / g.spacing(axis);
            base[axis] = u.floor() as isize;
            frac[axis] = u - u.floor();
        }

        let resolve = |axis: usize, j: isize| -> Result<usize, ProviderError> {
            let n = g.points(axis) as isize;
            match g.boundary() {
                Boundary::Periodic => Ok(j.rem_euclid(n) as usize),
                Boundary::Dirichlet => {
                    if j < 0 || j >= n {
                        Err(ProviderError::OutOfDomain)
                    } else {
                        Ok(j as usize)
                    }
                }
            }
        };

        let stencil: &[isize] = match self.interpolation {
            Interpolation::Bilinear => &[0, 1],
            Interpolation::Cubic => &[-1, 0, 1, 2],
        };
        let weights = |f: f64| -> [f64; 4] {
            match self.interpolation {
                Interpolation::Bilinear => [1.0 - f, f, 0.0, 0.0],
                Interpolation::Cubic => catmull_rom(f),
            }
        };

        let wx = weights(frac[0]);
        let mut out = [0.0; 2];
        if g.dimension() == 1 {
            for (sw, so) in wx.iter().zip(stencil) {
                let j = resolve(0, base[0] + so)?;
                let vj = v[j][0];
                if vj.is_nan() {
                    return Err(ProviderError::NodalRegion { rho: 0.0 });
                }
                out[0] += sw * vj;
            }
        } else {
            let wy = weights(frac[1]);
            for (swx, sox) in wx.iter().zip(stencil) {
                let jx = resolve(0, base[0] + sox)?;
                for (swy, soy) in wy.iter().zip(stencil) {
                    let jy = resolve(1, base[1] + soy)?;
                    let node = v[jx * ny + jy];
                    if node[0].is_nan() || node[1].is_nan() {
                        return Err(ProviderError::NodalRegion { rho: 0.0 });
                    }
                    let w = swx * swy;
                    out[0] += w * node[0];
                    out[1] += w * node[1];
                }
            }
        }
        Ok(out)
    }
}

/// Catmull–Rom weights for nodes at offsets [-1, 0, 1, 2].
fn catmull_rom(f: f64) -> [f64; 4] {
    let f2 = f * f;
    let f3 = f2 * f;
    [
        -0.5 * f3 + f2 - 0.5 * f,
        1.5 * f3 - 2.5 * f2 + 1.0,
        -1.5 * f3 + 2.0 * f2 + 0.5 * f,
        0.5 * f3 - 0.5 * f2,
    ]
}

impl VelocityProvider for GridVelocityProvider {
    fn dimension(&self) -> usize {
        self.geometry.dimension()
    }

    fn time_range(&self) -> (f64, f64) {
        (self.times[0], *self.times.last().unwrap())
    }

    fn velocity(&self, x: Pos, t: f64) -> Result<Pos, ProviderError> {
        let (t0, t1) = self.time_range();
        let slack = 1e-9 * (t1 - t0).max(1.0);
        if t < t0 - slack || t > t1 + slack {
            return Err(ProviderError::OutOfTimeRange);
        }
        let t = t.clamp(t0, t1);
        // Bracketing snapshots.
        let hi = match self.times.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i.max(1),
            Err(i) => i.clamp(1, self.times.len() - 1),
        };
        let lo = hi - 1;
        let f = (t - self.times[lo]) / (self.times[hi] - self.times[lo]);
        let va = self.interp_spatial(lo, x)?;
        let vb = self.interp_spatial(hi, x)?;
        Ok([
            (1.0 - f) * va[0] + f * vb[0],
            (1.0 - f) * va[1] + f * vb[1],
        ])
    }
}
