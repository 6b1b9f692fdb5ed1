//! Split-step Fourier propagation on periodic grids.
//!
//! One step is half-potential, full-kinetic in wavenumber space,
//! half-potential: unitary to round-off and second-order accurate in
//! `dt`. Time-dependent potentials are sampled at the step midpoint to
//! retain the second order.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::GridError;
use crate::grid::{Boundary, GridState, PotentialSpec};
use crate::GridGeometry;

pub struct SpectralStepper {
    geometry: GridGeometry,
    mass: f64,
    hbar: f64,
    forward: [Arc<dyn Fft<f64>>; 2],
    inverse: [Arc<dyn Fft<f64>>; 2],
    /// Kinetic phase table for the most recent dt.
    kinetic: Option<(f64, Vec<Complex64>)>,
}

impl SpectralStepper {
    pub fn new(geometry: &GridGeometry, mass: f64, hbar: f64) -> Result<Self, GridError> {
        if geometry.boundary() != Boundary::Periodic {
            return Err(GridError::InvalidGeometry(
                "spectral stepping needs a periodic grid".into(),
            ));
        }
        let mut planner = FftPlanner::new();
        let nx = geometry.points(0);
        let ny = geometry.points(1);
        Ok(Self {
            geometry: geometry.clone(),
            mass,
            hbar,
            forward: [planner.plan_fft_forward(nx), planner.plan_fft_forward(ny)],
            inverse: [planner.plan_fft_inverse(nx), planner.plan_fft_inverse(ny)],
            kinetic: None,
        })
    }

    /// Full kinetic phase `exp(-i hbar k^2 dt / 2m)` per FFT bin,
    /// including the inverse-transform normalization.
    fn kinetic_table(&mut self, dt: f64) -> &[Complex64] {
        let rebuild = match &self.kinetic {
            Some((cached_dt, _)) => *cached_dt != dt,
            None => true,
        };
        if rebuild {
            let g = &self.geometry;
            let kx = g.wavenumbers(0);
            let ky: Vec<f64> = if g.dimension() == 2 {
                g.wavenumbers(1)
            } else {
                vec![0.0]
            };
            let norm = 1.0 / g.len() as f64;
            let coeff = -self.hbar * dt / (2.0 * self.mass);
            let mut table = Vec::with_capacity(g.len());
            for &kxv in &kx {
                for &kyv in &ky {
                    let phase = coeff * (kxv * kxv + kyv * kyv);
                    table.push(Complex64::from_polar(norm, phase));
                }
            }
            self.kinetic = Some((dt, table));
        }
        &self.kinetic.as_ref().unwrap().1
    }

    /// Advance one step of `dt`.
    pub fn step(
        &mut self,
        state: &GridState,
        potential: &PotentialSpec,
        dt: f64,
    ) -> Result<GridState, GridError> {
        if state.geometry != self.geometry {
            return Err(GridError::GeometryMismatch);
        }
        if matches!(potential, PotentialSpec::EffectiveWell(_)) {
            return Err(GridError::UnsupportedPotential(
                "effective_well has a hard wall; periodic boundaries cannot represent it".into(),
            ));
        }
        let (v, _) = potential.on_grid(&self.geometry, state.t + dt / 2.0)?;
        let vmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let stability = dt * vmax / self.hbar;
        if stability >= 0.5 {
            return Err(GridError::StabilityViolation { value: stability });
        }

        let mut psi = state.psi.clone();
        let half = -dt / (2.0 * self.hbar);
        let half_potential = |psi: &mut [Complex64]| {
            psi.par_iter_mut().zip(v.par_iter()).for_each(|(p, &vj)| {
                *p *= Complex64::from_polar(1.0, half * vj);
            });
        };

        half_potential(&mut psi);
        self.transform(&mut psi, true);
        {
            let table = self.kinetic_table(dt);
            psi.par_iter_mut().zip(table.par_iter()).for_each(|(p, k)| *p *= k);
        }
        self.transform(&mut psi, false);
        half_potential(&mut psi);

        GridState::new(self.geometry.clone(), psi, state.t + dt)
    }

    /// In-place FFT over all active axes (unnormalized; the kinetic table
    /// folds in 1/N).
    fn transform(&self, psi: &mut [Complex64], forward: bool) {
        let ny = self.geometry.points(1);
        let plans = if forward { &self.forward } else { &self.inverse };
        if self.geometry.dimension() == 1 {
            plans[0].process(psi);
            return;
        }
        // Fast axis: contiguous rows.
        psi.par_chunks_exact_mut(ny).for_each(|row| plans[1].process(row));
        // Slow axis: gather strided columns.
        let nx = self.geometry.points(0);
        let columns: Vec<Vec<Complex64>> = (0..ny)
            .into_par_iter()
            .map(|iy| {
                let mut col: Vec<Complex64> = (0..nx).map(|ix| psi[ix * ny + iy]).collect();
                plans[0].process(&mut col);
                col
            })
            .collect();
        for (iy, col) in columns.iter().enumerate() {
            for (ix, value) in col.iter().enumerate() {
                psi[ix * ny + iy] = *value;
            }
        }
    }
}

/// Single-step convenience wrapper; long runs should hold a
/// [`SpectralStepper`] to reuse FFT plans.
pub fn step_spectral(
    state: &GridState,
    potential: &PotentialSpec,
    dt: f64,
    mass: f64,
    hbar: f64,
) -> Result<GridState, GridError> {
    SpectralStepper::new(&state.geometry, mass, hbar)?.step(state, potential, dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::initialize_grid;
    use crate::{GaussianParams, SuperpositionSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn free_packet(v0: f64) -> SuperpositionSpec {
        SuperpositionSpec::single(GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, v0).unwrap())
    }

    #[test]
    fn norm_preserved_over_thousand_steps() {
        let g = GridGeometry::new_1d(-20.0, 20.0, 512, Boundary::Periodic).unwrap();
        let mut s = initialize_grid(&free_packet(0.0), &g).unwrap();
        let mut stepper = SpectralStepper::new(&g, 1.0, 1.0).unwrap();
        let n0 = s.norm_sqr();
        for _ in 0..1000 {
            s = stepper.step(&s, &PotentialSpec::Free, 1e-3).unwrap();
        }
        assert!((s.norm_sqr() - n0).abs() < 1e-9);
    }

    #[test]
    fn spreading_matches_closed_form() {
        let g = GridGeometry::new_1d(-20.0, 20.0, 1024, Boundary::Periodic).unwrap();
        let mut s = initialize_grid(&free_packet(0.0), &g).unwrap();
        let mut stepper = SpectralStepper::new(&g, 1.0, 1.0).unwrap();
        let dt = 1e-3;
        for _ in 0..2000 {
            s = stepper.step(&s, &PotentialSpec::Free, dt).unwrap();
        }
        // sigma(2) = sqrt(2) for tau = 2.
        let sigma = s.variance(0).sqrt();
        assert_abs_diff_eq!(sigma, std::f64::consts::SQRT_2, epsilon = 1e-4);
    }

    #[test]
    fn centroid_follows_classical_path() {
        let g = GridGeometry::new_1d(-20.0, 20.0, 1024, Boundary::Periodic).unwrap();
        let mut s = initialize_grid(&free_packet(1.0), &g).unwrap();
        let mut stepper = SpectralStepper::new(&g, 1.0, 1.0).unwrap();
        let dt = 1e-3;
        for _ in 0..5000 {
            s = stepper.step(&s, &PotentialSpec::Free, dt).unwrap();
        }
        assert_abs_diff_eq!(s.centroid(0), 5.0, epsilon = 1e-6);
    }

    #[test]
    fn plane_wave_dispersion_exact() {
        let g = GridGeometry::new_1d(0.0, 32.0, 64, Boundary::Periodic).unwrap();
        let k = g.wavenumbers(0)[3];
        let psi: Vec<Complex64> = (0..64)
            .map(|j| Complex64::from_polar(1.0, k * g.coord(0, j)))
            .collect();
        let state = GridState::new(g.clone(), psi, 0.0).unwrap();
        let dt = 0.01;
        let mut stepper = SpectralStepper::new(&g, 1.0, 1.0).unwrap();
        let next = stepper.step(&state, &PotentialSpec::Free, dt).unwrap();
        let expected = -k * k * dt / 2.0;
        for j in 0..64 {
            let advance = (next.psi[j] / state.psi[j]).arg();
            assert_relative_eq!(advance, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_wall_potential_and_large_dt() {
        let g = GridGeometry::new_1d(-20.0, 20.0, 256, Boundary::Periodic).unwrap();
        let s = initialize_grid(&free_packet(0.0), &g).unwrap();
        let mut stepper = SpectralStepper::new(&g, 1.0, 1.0).unwrap();
        let v = PotentialSpec::CustomTabulated {
            values: vec![100.0; g.len()],
        };
        assert!(matches!(
            stepper.step(&s, &v, 0.01),
            Err(GridError::StabilityViolation { .. })
        ));
        let well = crate::well::EffectiveWellParams::new(
            GaussianParams::new_1d(1.0, 1.0, 1.0, -6.0, 1.0).unwrap(),
            6.0,
        )
        .unwrap();
        assert!(matches!(
            stepper.step(&s, &PotentialSpec::EffectiveWell(well), 1e-3),
            Err(GridError::UnsupportedPotential(_))
        ));
    }
}
