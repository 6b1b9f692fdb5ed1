//! Crank–Nicolson stepping on 1D Dirichlet grids.
//!
//! `(I + i dt H/2hbar) psi' = (I - i dt H/2hbar) psi` with the potential
//! sampled at the midpoint time. Each step is a Cayley transform of a
//! Hermitian operator, so the discrete norm is conserved exactly; wall
//! and edge nodes stay identically zero.

use num_complex::Complex64;

use crate::error::GridError;
use crate::grid::{Boundary, GridState, PotentialSpec};
use crate::GridGeometry;

pub struct CrankNicolson {
    geometry: GridGeometry,
    mass: f64,
    hbar: f64,
    // Reused solver workspaces.
    diag: Vec<Complex64>,
    rhs: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl CrankNicolson {
    pub fn new(geometry: &GridGeometry, mass: f64, hbar: f64) -> Result<Self, GridError> {
        if geometry.dimension() != 1 {
            return Err(GridError::InvalidGeometry(
                "implicit stepping is 1D only".into(),
            ));
        }
        if geometry.boundary() != Boundary::Dirichlet {
            return Err(GridError::InvalidGeometry(
                "implicit stepping needs a Dirichlet grid".into(),
            ));
        }
        let n = geometry.len();
        Ok(Self {
            geometry: geometry.clone(),
            mass,
            hbar,
            diag: vec![Complex64::ZERO; n],
            rhs: vec![Complex64::ZERO; n],
            scratch: vec![Complex64::ZERO; n],
        })
    }

    pub fn step(
        &mut self,
        state: &GridState,
        potential: &PotentialSpec,
        dt: f64,
    ) -> Result<GridState, GridError> {
        if state.geometry != self.geometry {
            return Err(GridError::GeometryMismatch);
        }
        let n = self.geometry.len();
        let (v, wall) = potential.on_grid(&self.geometry, state.t + dt / 2.0)?;

        // Active unknowns: everything except domain edges and wall nodes.
        // Wall regions must be contiguous for the tridiagonal solve.
        let is_fixed = |j: usize| -> bool {
            j == 0 || j == n - 1 || wall.as_ref().is_some_and(|w| w[j])
        };
        let lo = (0..n).find(|&j| !is_fixed(j)).ok_or_else(|| {
            GridError::SolverFailure("no active nodes".into())
        })?;
        let hi = (0..n).rfind(|&j| !is_fixed(j)).unwrap();
        if (lo..=hi).any(is_fixed) {
            return Err(GridError::SolverFailure(
                "non-contiguous Dirichlet mask".into(),
            ));
        }

        let h = self.geometry.spacing(0);
        let kin = self.hbar * self.hbar / (self.mass * h * h);
        let off_h = -0.5 * kin; // off-diagonal of H
        let r = Complex64::new(0.0, dt / (2.0 * self.hbar));
        let off = r * off_h;

        let mut psi = vec![Complex64::ZERO; n];

        // Assemble rhs = (I - r H) psi and lhs diagonal of (I + r H) over
        // the active range; psi is zero at fixed neighbors.
        for j in lo..=hi {
            let d_h = kin + v[j];
            let left = if j > lo { state.psi[j - 1] } else { Complex64::ZERO };
            let right = if j < hi { state.psi[j + 1] } else { Complex64::ZERO };
            self.rhs[j] = state.psi[j] - r * (off_h * (left + right) + d_h * state.psi[j]);
            self.diag[j] = 1.0 + r * d_h;
        }

        // Thomas solve on [lo, hi] with constant off-diagonal `off`.
        let m = hi - lo + 1;
        let c = &mut self.scratch[..m]; // modified upper diagonal
        let d = &mut self.rhs[lo..=hi];
        let a = &self.diag[lo..=hi];
        let mut beta = a[0];
        if beta.norm_sqr() == 0.0 {
            return Err(GridError::SolverFailure("zero pivot".into()));
        }
        c[0] = off / beta;
        d[0] /= beta;
        for i in 1..m {
            beta = a[i] - off * c[i - 1];
            if !beta.is_finite() || beta.norm_sqr() == 0.0 {
                return Err(GridError::SolverFailure(format!("pivot at row {i}")));
            }
            c[i] = off / beta;
            d[i] = (d[i] - off * d[i - 1]) / beta;
        }
        for i in (0..m - 1).rev() {
            let correction = c[i] * d[i + 1];
            d[i] -= correction;
        }

        psi[lo..=hi].copy_from_slice(d);
        if psi.iter().any(|p| !p.is_finite()) {
            return Err(GridError::SolverFailure("non-finite solution".into()));
        }
        GridState::new(self.geometry.clone(), psi, state.t + dt)
    }
}

/// Single-step convenience wrapper around [`CrankNicolson`].
pub fn step_implicit(
    state: &GridState,
    potential: &PotentialSpec,
    dt: f64,
    mass: f64,
    hbar: f64,
) -> Result<GridState, GridError> {
    CrankNicolson::new(&state.geometry, mass, hbar)?.step(state, potential, dt)
}
