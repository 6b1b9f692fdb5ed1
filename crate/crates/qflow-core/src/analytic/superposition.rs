//! Superpositions of Gaussian packets and their hydrodynamic fields.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::WaveError;
use crate::{GaussianParams, Pos, DENSITY_FLOOR};

/// Ordered list of Gaussian components forming `Psi = sum_i w_i psi_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionSpec {
    components: Vec<GaussianParams>,
    dimension: usize,
    /// Density floor below which velocity and quantum potential are
    /// reported as undefined.
    #[serde(default = "default_floor")]
    pub density_floor: f64,
}

fn default_floor() -> f64 {
    DENSITY_FLOOR
}

impl SuperpositionSpec {
    pub fn new(components: Vec<GaussianParams>, dimension: usize) -> Result<Self, WaveError> {
        if components.is_empty() {
            return Err(WaveError::InvalidSuperposition("no components".into()));
        }
        if dimension != 1 && dimension != 2 {
            return Err(WaveError::InvalidSuperposition(format!(
                "dimension {dimension} not in {{1, 2}}"
            )));
        }
        let (m0, h0) = (components[0].mass, components[0].hbar);
        if components.iter().any(|c| c.mass != m0 || c.hbar != h0) {
            return Err(WaveError::InvalidSuperposition(
                "all components must share mass and hbar".into(),
            ));
        }
        if components.iter().all(|c| c.weight.norm_sqr() == 0.0) {
            return Err(WaveError::InvalidSuperposition(
                "at least one component needs a nonzero weight".into(),
            ));
        }
        Ok(Self {
            components,
            dimension,
            density_floor: DENSITY_FLOOR,
        })
    }

    pub fn single(params: GaussianParams) -> Self {
        Self::new(vec![params], 1).expect("single packet is always a valid superposition")
    }

    pub fn single_2d(params: GaussianParams) -> Self {
        let mut s = Self::single(params);
        s.dimension = 2;
        s
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.density_floor = floor;
        self
    }

    pub fn components(&self) -> &[GaussianParams] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn mass(&self) -> f64 {
        self.components[0].mass
    }

    pub fn hbar(&self) -> f64 {
        self.components[0].hbar
    }

    /// Relative weight of the second component against the first,
    /// `|w_2 / w_1|^2`. Only meaningful for two-component superpositions;
    /// the direct `|Psi|^2` evaluation is the authoritative route and
    /// never goes through this number.
    pub fn relative_weight_alpha(&self) -> Option<f64> {
        if self.components.len() != 2 {
            return None;
        }
        let w1 = self.components[0].weight.norm_sqr();
        if w1 == 0.0 {
            return None;
        }
        Some(self.components[1].weight.norm_sqr() / w1)
    }

    /// Complex amplitude `Psi(x, t)`.
    pub fn psi(&self, x: Pos, t: f64) -> Complex64 {
        let mut total = Complex64::ZERO;
        for c in &self.components {
            let mut p = c.weight;
            for axis in 0..self.dimension {
                p *= c.psi_axis(axis, x[axis], t);
            }
            total += p;
        }
        total
    }

    /// `Psi` together with its gradient and per-axis second derivatives,
    /// all closed-form.
    pub fn psi_derivatives(&self, x: Pos, t: f64) -> PsiDerivatives {
        let mut out = PsiDerivatives::default();
        for c in &self.components {
            let mut value = c.weight;
            let mut g = [Complex64::ZERO; 2];
            let mut g2 = [Complex64::ZERO; 2];
            for axis in 0..self.dimension {
                value *= c.psi_axis(axis, x[axis], t);
                g[axis] = c.log_derivative(axis, x[axis], t);
                g2[axis] = g[axis] * g[axis] + c.log_derivative_slope(axis, t);
            }
            out.psi += value;
            for axis in 0..self.dimension {
                out.grad[axis] += value * g[axis];
                out.second[axis] += value * g2[axis];
            }
        }
        out
    }

    /// All Bohmian fields at a spacetime point.
    ///
    /// * `rho = |Psi|^2`
    /// * `j = (hbar/m) Im(Psi* grad Psi)` from closed-form gradients
    /// * `grad_s = hbar Im(grad Psi / Psi)` and `v = j / rho`, defined
    ///   only where `rho` exceeds the density floor
    /// * `q = (hbar^2/4m) [ (grad rho / rho)^2 / 2 - lap rho / rho ]`
    ///   from closed-form first and second density derivatives
    pub fn field_sample(&self, x: Pos, t: f64) -> FieldSample {
        let d = self.psi_derivatives(x, t);
        let m = self.mass();
        let hbar = self.hbar();
        let rho = d.psi.norm_sqr();

        let mut j = [0.0; 2];
        let mut grad_rho = [0.0; 2];
        let mut lap_rho = 0.0;
        for axis in 0..self.dimension {
            let cross = d.psi.conj() * d.grad[axis];
            j[axis] = hbar / m * cross.im;
            grad_rho[axis] = 2.0 * cross.re;
            lap_rho += 2.0 * (d.psi.conj() * d.second[axis]).re + 2.0 * d.grad[axis].norm_sqr();
        }

        let defined = rho > self.density_floor;
        let (grad_s, v, q) = if defined {
            let mut gs = [0.0; 2];
            let mut vel = [0.0; 2];
            let mut grad_sq = 0.0;
            for axis in 0..self.dimension {
                vel[axis] = j[axis] / rho;
                gs[axis] = m * vel[axis];
                grad_sq += (grad_rho[axis] / rho) * (grad_rho[axis] / rho);
            }
            let q = hbar * hbar / (4.0 * m) * (0.5 * grad_sq - lap_rho / rho);
            (Some(gs), Some(vel), Some(q))
        } else {
            (None, None, None)
        };

        FieldSample {
            rho,
            j,
            grad_s,
            v,
            q,
        }
    }
}

/// `Psi` and its spatial derivatives at one point.
#[derive(Debug, Clone, Copy, Default)]
pub struct PsiDerivatives {
    pub psi: Complex64,
    pub grad: [Complex64; 2],
    /// Per-axis second derivatives; their sum is the Laplacian.
    pub second: [Complex64; 2],
}

/// Hydrodynamic fields `(rho, grad S, J, v, Q)` at one spacetime point.
///
/// `grad_s`, `v`, and `q` are `None` inside nodal regions (density at or
/// below the floor) — undefined-at-node markers, never fabricated values.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FieldSample {
    /// Probability density, always finite and nonnegative.
    pub rho: f64,
    /// Probability current density.
    pub j: Pos,
    /// Phase gradient in momentum units; equals `m v` where defined.
    pub grad_s: Option<Pos>,
    /// Velocity field `J / rho`.
    pub v: Option<Pos>,
    /// Quantum potential.
    pub q: Option<f64>,
}

impl FieldSample {
    /// Velocity, or a degenerate-density marker error.
    pub fn require_velocity(&self) -> Result<Pos, WaveError> {
        self.v.ok_or_else(|| {
            WaveError::InvalidSuperposition(format!(
                "degenerate density {:.3e}: velocity undefined at node",
                self.rho
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn unit_packet() -> GaussianParams {
        GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.0).unwrap()
    }

    /// Counter-propagating pair at centers -c and +c with speeds +v, -v.
    fn mirror_pair(c: f64, v: f64) -> SuperpositionSpec {
        SuperpositionSpec::new(
            vec![
                GaussianParams::new_1d(1.0, 1.0, 1.0, -c, v).unwrap(),
                GaussianParams::new_1d(1.0, 1.0, 1.0, c, -v).unwrap(),
            ],
            1,
        )
        .unwrap()
    }

    #[test]
    fn peak_amplitude_at_t0() {
        let spec = SuperpositionSpec::single(unit_packet());
        let a = spec.psi([0.0, 0.0], 0.0).norm();
        assert_relative_eq!(a, 0.6316187777460647, max_relative = 1e-14);
    }

    #[test]
    fn normalization_by_quadrature() {
        // Adaptive-free oracle: fine Simpson over +-12 sigma_t.
        let check = |spec: &SuperpositionSpec, t: f64, sigma_t: f64, expect: f64| {
            let a = -12.0 * sigma_t;
            let b = 12.0 * sigma_t;
            let n = 40_001; // odd count for Simpson
            let h = (b - a) / (n - 1) as f64;
            let mut sum = 0.0;
            for i in 0..n {
                let x = a + i as f64 * h;
                let w = if i == 0 || i == n - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                sum += w * spec.psi([x, 0.0], t).norm_sqr();
            }
            sum *= h / 3.0;
            assert_abs_diff_eq!(sum, expect, epsilon = 1e-8);
        };
        let spec = SuperpositionSpec::single(unit_packet());
        for t in [0.0, 1.0, 2.0, 7.5] {
            check(&spec, t, spec.components()[0].sigma_t(0, t), 1.0);
        }
        let spec = SuperpositionSpec::single(
            GaussianParams::new_1d(1.5, 2.0, 0.7, 3.0, -1.2).unwrap(),
        );
        check(&spec, 4.0, 3.0 + spec.components()[0].sigma_t(0, 4.0), 1.0);
    }

    #[test]
    fn two_packet_interference_at_origin() {
        // |psi1 + psi2|^2 at the symmetry point must take the
        // 4 |psi1|^2 cos^2(phi/2) form with equal moduli.
        let spec = mirror_pair(4.0, 0.3);
        for t in [0.5, 2.0, 6.0] {
            let p1 = spec.components()[0].psi_axis(0, 0.0, t);
            let p2 = spec.components()[1].psi_axis(0, 0.0, t);
            assert_relative_eq!(p1.norm(), p2.norm(), max_relative = 1e-12);
            let phi = p2.arg() - p1.arg();
            let expect = 4.0 * p1.norm_sqr() * (phi / 2.0).cos().powi(2);
            let got = spec.psi([0.0, 0.0], t).norm_sqr();
            assert_relative_eq!(got, expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn velocity_at_center_is_group_velocity() {
        let spec = SuperpositionSpec::single(
            GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.8).unwrap(),
        );
        for t in [0.0, 1.0, 5.0] {
            let s = spec.field_sample([0.8 * t, 0.0], t);
            assert_abs_diff_eq!(s.v.unwrap()[0], 0.8, epsilon = 1e-12);
        }
    }

    #[test]
    fn velocity_from_quantum_drift() {
        // sigma0 = m = hbar = 1, v0 = 0, t = tau = 2, x = sqrt(2):
        // v = (sigma0/sigma_t)(t/tau^2) x0 = 1/(2 sqrt 2).
        let spec = SuperpositionSpec::single(unit_packet());
        let s = spec.field_sample([std::f64::consts::SQRT_2, 0.0], 2.0);
        assert_relative_eq!(s.v.unwrap()[0], 0.35355339059327373, max_relative = 1e-12);

        // Finite-difference oracle on the phase of psi.
        let h = 1e-5;
        let x = std::f64::consts::SQRT_2;
        let fd = (spec.psi([x + h, 0.0], 2.0) - spec.psi([x - h, 0.0], 2.0))
            / (2.0 * h)
            / spec.psi([x, 0.0], 2.0);
        assert_relative_eq!(s.v.unwrap()[0], fd.im, max_relative = 1e-8);
    }

    #[test]
    fn velocity_phase_consistency_converges_second_order() {
        let spec = mirror_pair(2.0, 0.4);
        let x = [0.63, 0.0];
        let t = 1.7;
        let v = spec.field_sample(x, t).v.unwrap()[0];
        let fd = |h: f64| {
            let p = spec.psi(x, t);
            ((spec.psi([x[0] + h, 0.0], t) - spec.psi([x[0] - h, 0.0], t)) / (2.0 * h) / p).im
        };
        let e1 = (fd(1e-3) - v).abs();
        let e2 = (fd(5e-4) - v).abs();
        // Halving h cuts the error about 4x.
        assert!(e1 / e2 > 3.5 && e1 / e2 < 4.5, "ratio {}", e1 / e2);
    }

    #[test]
    fn symmetry_axis_velocity_vanishes() {
        let spec = mirror_pair(5.0, 1.0);
        for t in [0.3, 1.0, 4.0] {
            let s = spec.field_sample([0.0, 0.0], t);
            assert_abs_diff_eq!(s.v.unwrap()[0], 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn mirror_antisymmetry_of_velocity() {
        let spec = mirror_pair(3.0, 0.6);
        for (x, t) in [(0.7, 0.9), (2.2, 2.5), (4.0, 1.1)] {
            let sp = spec.field_sample([x, 0.0], t);
            let sm = spec.field_sample([-x, 0.0], t);
            assert_relative_eq!(sp.rho, sm.rho, max_relative = 1e-11);
            assert_abs_diff_eq!(
                sp.v.unwrap()[0] + sm.v.unwrap()[0],
                0.0,
                epsilon = 1e-9 * sp.v.unwrap()[0].abs().max(1.0)
            );
        }
    }

    #[test]
    fn quantum_potential_at_center() {
        // Q(center, 0) = hbar^2 / (4 m sigma0^2) = 0.25 in natural units.
        let spec = SuperpositionSpec::single(unit_packet());
        let s = spec.field_sample([0.0, 0.0], 0.0);
        assert_relative_eq!(s.q.unwrap(), 0.25, max_relative = 1e-12);

        // Finite-difference Laplacian of sqrt(rho) as oracle.
        let h = 1e-4;
        let sq = |x: f64| spec.psi([x, 0.0], 0.0).norm();
        let lap = (sq(h) - 2.0 * sq(0.0) + sq(-h)) / (h * h);
        let q_fd = -0.5 * lap / sq(0.0);
        assert_relative_eq!(s.q.unwrap(), q_fd, max_relative = 1e-6);
    }

    #[test]
    fn current_velocity_identity() {
        let spec = mirror_pair(2.0, 0.2);
        for x in [-3.0, -0.4, 0.9, 2.6] {
            let s = spec.field_sample([x, 0.0], 1.3);
            assert!(s.rho >= 0.0);
            let v = s.v.unwrap()[0];
            assert_relative_eq!(v * s.rho, s.j[0], max_relative = 1e-13);
            assert_relative_eq!(s.grad_s.unwrap()[0], v * spec.mass(), max_relative = 1e-13);
        }
    }

    #[test]
    fn nodal_region_markers() {
        let spec = SuperpositionSpec::single(unit_packet()).with_floor(1e-10);
        let s = spec.field_sample([12.0, 0.0], 0.0); // rho ~ e^-72
        assert!(s.v.is_none() && s.q.is_none() && s.grad_s.is_none());
        assert!(s.require_velocity().is_err());
    }

    #[test]
    fn separable_2d_fields() {
        let p = GaussianParams::new_2d(1.0, 1.0, [1.0, 0.5], [0.0, 1.0], [0.3, -0.2]).unwrap();
        let spec = SuperpositionSpec::single_2d(p);
        let s = spec.field_sample([0.3, 0.8], 1.0);
        // v = J / rho on both axes.
        let v = s.v.unwrap();
        assert_relative_eq!(v[0] * s.rho, s.j[0], max_relative = 1e-13);
        assert_relative_eq!(v[1] * s.rho, s.j[1], max_relative = 1e-13);
        // The center follows both group velocities.
        let c = spec.field_sample([0.3 * 1.0, 1.0 - 0.2 * 1.0], 1.0);
        let vc = c.v.unwrap();
        assert_abs_diff_eq!(vc[0], 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(vc[1], -0.2, epsilon = 1e-12);
    }

    #[test]
    fn spec_validation() {
        assert!(SuperpositionSpec::new(vec![], 1).is_err());
        let a = unit_packet();
        let mut b = unit_packet();
        b.mass = 2.0;
        assert!(SuperpositionSpec::new(vec![a.clone(), b], 1).is_err());
        let zero = unit_packet().with_weight(Complex64::ZERO);
        assert!(SuperpositionSpec::new(vec![zero], 1).is_err());
        assert!(SuperpositionSpec::new(vec![a], 3).is_err());
    }

    #[test]
    fn alpha_is_weight_ratio() {
        let a = unit_packet().with_weight(Complex64::new(1.0, 0.0));
        let b = unit_packet().with_weight(Complex64::new(0.0, 2.0));
        let spec = SuperpositionSpec::new(vec![a, b], 1).unwrap();
        assert_relative_eq!(spec.relative_weight_alpha().unwrap(), 4.0);
    }
}
