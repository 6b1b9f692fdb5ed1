//! Hydrodynamic fields synthesized from grid wavefunctions.
//!
//! Derivatives are spectral on periodic grids and 4th-order central
//! differences (with zero ghost nodes) on Dirichlet grids; density,
//! current, velocity, and quantum potential then follow the same
//! formulas as the analytic route, with the same density-floor rule.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::analytic::FieldSample;
use crate::error::GridError;
use crate::grid::{Boundary, GridState};
use crate::GridGeometry;

/// Per-node field samples synthesized from one grid state.
#[derive(Debug, Clone)]
pub struct SynthesizedFields {
    pub geometry: GridGeometry,
    pub t: f64,
    pub samples: Vec<FieldSample>,
}

impl SynthesizedFields {
    /// Velocity per node with NaN marking undefined (nodal) entries —
    /// the layout interpolating providers consume.
    pub fn velocity_grid(&self) -> Vec<[f64; 2]> {
        self.samples
            .iter()
            .map(|s| s.v.unwrap_or([f64::NAN, f64::NAN]))
            .collect()
    }
}

/// Synthesize `(rho, grad S, J, v, Q)` at every node.
pub fn synthesize_fields(
    state: &GridState,
    mass: f64,
    hbar: f64,
    floor: f64,
) -> Result<SynthesizedFields, GridError> {
    let g = &state.geometry;
    let dim = g.dimension();
    let grad = gradient(state)?;
    let second = second_derivative(state)?;

    let mut samples = Vec::with_capacity(g.len());
    for i in 0..g.len() {
        let psi = state.psi[i];
        let rho = psi.norm_sqr();
        let mut j = [0.0; 2];
        let mut grad_rho = [0.0; 2];
        let mut lap_rho = 0.0;
        for axis in 0..dim {
            let cross = psi.conj() * grad[axis][i];
            j[axis] = hbar / mass * cross.im;
            grad_rho[axis] = 2.0 * cross.re;
            lap_rho += 2.0 * (psi.conj() * second[axis][i]).re + 2.0 * grad[axis][i].norm_sqr();
        }
        let defined = rho > floor;
        let (grad_s, v, q) = if defined {
            let mut gs = [0.0; 2];
            let mut vel = [0.0; 2];
            let mut grad_sq = 0.0;
            for axis in 0..dim {
                vel[axis] = j[axis] / rho;
                gs[axis] = mass * vel[axis];
                grad_sq += (grad_rho[axis] / rho) * (grad_rho[axis] / rho);
            }
            let q = hbar * hbar / (4.0 * mass) * (0.5 * grad_sq - lap_rho / rho);
            (Some(gs), Some(vel), Some(q))
        } else {
            (None, None, None)
        };
        samples.push(FieldSample {
            rho,
            j,
            grad_s,
            v,
            q,
        });
    }
    Ok(SynthesizedFields {
        geometry: g.clone(),
        t: state.t,
        samples,
    })
}

/// First derivative of psi along every active axis.
pub fn gradient(state: &GridState) -> Result<Vec<Vec<Complex64>>, GridError> {
    Ok(derivative_of(&state.geometry, &state.psi, 1))
}

/// Second derivative of psi along every active axis.
pub fn second_derivative(state: &GridState) -> Result<Vec<Vec<Complex64>>, GridError> {
    Ok(derivative_of(&state.geometry, &state.psi, 2))
}

/// Derivative of arbitrary node data along every active axis, using the
/// grid's native scheme (spectral on periodic, 4th-order central on
/// Dirichlet).
pub fn derivative_of(
    geometry: &GridGeometry,
    data: &[Complex64],
    order: usize,
) -> Vec<Vec<Complex64>> {
    match geometry.boundary() {
        Boundary::Periodic => spectral_derivative(geometry, data, order),
        Boundary::Dirichlet => fd4_derivative(geometry, data, order),
    }
}

fn spectral_derivative(g: &GridGeometry, data: &[Complex64], order: usize) -> Vec<Vec<Complex64>> {
    let mut planner = FftPlanner::new();
    let mut out = Vec::new();
    for axis in 0..g.dimension() {
        let n = g.points(axis);
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let k = g.wavenumbers(axis);
        let norm = 1.0 / n as f64;
        let factor: Vec<Complex64> = k
            .iter()
            .map(|&kv| match order {
                1 => Complex64::new(0.0, kv) * norm,
                _ => Complex64::new(-kv * kv, 0.0) * norm,
            })
            .collect();

        let ny = g.points(1);
        let nx = g.points(0);
        let mut d = data.to_vec();
        if axis == 1 {
            for row in d.chunks_exact_mut(ny) {
                fft.process(row);
                for (v, f) in row.iter_mut().zip(&factor) {
                    *v *= f;
                }
                ifft.process(row);
            }
        } else if g.dimension() == 1 {
            fft.process(&mut d);
            for (v, f) in d.iter_mut().zip(&factor) {
                *v *= f;
            }
            ifft.process(&mut d);
        } else {
            let mut col = vec![Complex64::ZERO; nx];
            for iy in 0..ny {
                for ix in 0..nx {
                    col[ix] = d[ix * ny + iy];
                }
                fft.process(&mut col);
                for (v, f) in col.iter_mut().zip(&factor) {
                    *v *= f;
                }
                ifft.process(&mut col);
                for ix in 0..nx {
                    d[ix * ny + iy] = col[ix];
                }
            }
        }
        out.push(d);
    }
    out
}

/// 4th-order central differences; nodes beyond the boundary are zero,
/// consistent with the Dirichlet stepper.
fn fd4_derivative(g: &GridGeometry, data: &[Complex64], order: usize) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    for axis in 0..g.dimension() {
        let n = g.points(axis);
        let h = g.spacing(axis);
        let mut d = vec![Complex64::ZERO; g.len()];
        let ny = g.points(1);
        let stride = if axis == 0 { ny } else { 1 };
        let lanes = g.len() / n;
        for lane in 0..lanes {
            let base = if axis == 0 { lane } else { lane * ny };
            let at = |j: isize| -> Complex64 {
                if j < 0 || j >= n as isize {
                    Complex64::ZERO
                } else {
                    data[base + j as usize * stride]
                }
            };
            for j in 0..n as isize {
                let v = match order {
                    1 => {
                        (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h)
                    }
                    _ => {
                        (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1)
                            - at(j - 2))
                            / (12.0 * h * h)
                    }
                };
                d[base + j as usize * stride] = v;
            }
        }
        out.push(d);
    }
    out
}

/// Current density per node along each axis (helper for flux and
/// continuity diagnostics).
pub fn current_density(
    state: &GridState,
    mass: f64,
    hbar: f64,
) -> Result<Vec<[f64; 2]>, GridError> {
    let grad = gradient(state)?;
    let g = &state.geometry;
    Ok((0..g.len())
        .map(|i| {
            let mut j = [0.0; 2];
            for axis in 0..g.dimension() {
                j[axis] = hbar / mass * (state.psi[i].conj() * grad[axis][i]).im;
            }
            j
        })
        .collect())
}
