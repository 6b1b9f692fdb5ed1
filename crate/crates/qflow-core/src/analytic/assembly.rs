//! Density and current assembled from component polar data.
//!
//! For `Psi = sum_i w_i psi_i` with `w_i psi_i = sqrt(rho_i) e^{i S_i/hbar}`:
//!
//! ```text
//! rho = sum_i rho_i + 2 sum_{i<j} sqrt(rho_i rho_j) cos(phi_ij)
//! J   = (1/m) [ sum_i rho_i grad S_i
//!       + sum_{i<j} sqrt(rho_i rho_j) grad(S_i + S_j) cos(phi_ij)
//!       + hbar (sqrt(rho_i) grad sqrt(rho_j)
//!               - sqrt(rho_j) grad sqrt(rho_i)) sin(phi_ij) ]
//! ```
//!
//! with `phi_ij = (S_j - S_i)/hbar` for `i < j`. This sign convention is
//! the one under which the interference term of the current comes out
//! identical to `(hbar/m) Im(Psi* grad Psi)`; the equality is exercised
//! pointwise to 1e-10 relative by the test suite, which doubles as the
//! cross-check between the two published forms of the velocity
//! denominator.

use crate::{Pos, SuperpositionSpec};

/// Polar data of one weighted component at a point: `sqrt(rho)`, its
/// gradient, the phase (in action units), and the phase gradient.
#[derive(Debug, Clone, Copy)]
pub struct ComponentPolar {
    pub sqrt_rho: f64,
    pub grad_sqrt_rho: Pos,
    /// Phase `S` including the weight's argument; only differences enter
    /// the assembly, so the 2 pi branch is irrelevant.
    pub s: f64,
    pub grad_s: Pos,
}

impl ComponentPolar {
    /// Evaluate component `index` of `spec` at `(x, t)` in polar form.
    pub fn evaluate(spec: &SuperpositionSpec, index: usize, x: Pos, t: f64) -> Self {
        let c = &spec.components()[index];
        let hbar = c.hbar;
        let mut sqrt_rho = c.weight.norm();
        let mut s = hbar * c.weight.arg();
        let mut grad_sqrt = [0.0; 2];
        let mut grad_s = [0.0; 2];
        for axis in 0..spec.dimension() {
            let psi = c.psi_axis(axis, x[axis], t);
            sqrt_rho *= psi.norm();
            s += hbar * psi.arg();
            let g = c.log_derivative(axis, x[axis], t);
            // d(sqrt rho)/dx = sqrt(rho) Re(g), dS/dx = hbar Im(g).
            grad_sqrt[axis] = g.re;
            grad_s[axis] = hbar * g.im;
        }
        for axis in 0..spec.dimension() {
            grad_sqrt[axis] *= sqrt_rho;
        }
        Self {
            sqrt_rho,
            grad_sqrt_rho: grad_sqrt,
            s,
            grad_s,
        }
    }
}

/// Assemble `(rho, J)` at `(x, t)` from component polar data, pairwise
/// over all components. Equals the direct complex evaluation
/// `(|Psi|^2, (hbar/m) Im(Psi* grad Psi))` identically.
pub fn assemble_fields(spec: &SuperpositionSpec, x: Pos, t: f64) -> (f64, Pos) {
    let n = spec.components().len();
    let m = spec.mass();
    let hbar = spec.hbar();
    let dim = spec.dimension();
    let polar: Vec<ComponentPolar> = (0..n)
        .map(|i| ComponentPolar::evaluate(spec, i, x, t))
        .collect();

    let mut rho = 0.0;
    let mut j = [0.0; 2];
    for (i, a) in polar.iter().enumerate() {
        let rho_i = a.sqrt_rho * a.sqrt_rho;
        rho += rho_i;
        for axis in 0..dim {
            j[axis] += rho_i * a.grad_s[axis] / m;
        }
        for b in polar.iter().skip(i + 1) {
            let phi = (b.s - a.s) / hbar;
            let (sin_phi, cos_phi) = phi.sin_cos();
            let cross = a.sqrt_rho * b.sqrt_rho;
            rho += 2.0 * cross * cos_phi;
            for axis in 0..dim {
                j[axis] += (cross * (a.grad_s[axis] + b.grad_s[axis]) * cos_phi
                    + hbar
                        * (a.sqrt_rho * b.grad_sqrt_rho[axis]
                            - b.sqrt_rho * a.grad_sqrt_rho[axis])
                        * sin_phi)
                    / m;
            }
        }
    }
    (rho, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianParams;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn two_packet() -> SuperpositionSpec {
        SuperpositionSpec::new(
            vec![
                GaussianParams::new_1d(1.0, 1.0, 1.0, -5.0, 2.0).unwrap(),
                GaussianParams::new_1d(1.0, 1.0, 1.0, 5.0, -2.0).unwrap(),
            ],
            1,
        )
        .unwrap()
    }

    #[test]
    fn assembly_matches_direct_evaluation() {
        let spec = two_packet();
        for t in [0.0, 1.0, 2.5, 5.0] {
            for i in 0..200 {
                let x = -10.0 + 0.1 * i as f64;
                let (rho, j) = assemble_fields(&spec, [x, 0.0], t);
                let s = spec.field_sample([x, 0.0], t);
                if s.rho > 1e-12 {
                    assert_relative_eq!(rho, s.rho, max_relative = 1e-10);
                    assert_relative_eq!(j[0], s.j[0], max_relative = 1e-10, epsilon = 1e-22);
                }
            }
        }
    }

    #[test]
    fn assembly_with_unequal_weights() {
        let spec = SuperpositionSpec::new(
            vec![
                GaussianParams::new_1d(1.0, 1.0, 1.0, -3.0, 1.0)
                    .unwrap()
                    .with_weight(Complex64::new(0.8, 0.1)),
                GaussianParams::new_1d(1.0, 1.0, 1.3, 3.0, -0.7)
                    .unwrap()
                    .with_weight(Complex64::new(-0.2, 0.55)),
            ],
            1,
        )
        .unwrap();
        for x in [-4.0, -1.0, 0.3, 2.2] {
            let (rho, j) = assemble_fields(&spec, [x, 0.0], 1.8);
            let s = spec.field_sample([x, 0.0], 1.8);
            assert_relative_eq!(rho, s.rho, max_relative = 1e-10);
            assert_relative_eq!(j[0], s.j[0], max_relative = 1e-10, epsilon = 1e-22);
        }
    }

    #[test]
    fn three_components_pairwise() {
        let spec = SuperpositionSpec::new(
            vec![
                GaussianParams::new_1d(1.0, 1.0, 1.0, -4.0, 1.0).unwrap(),
                GaussianParams::new_1d(1.0, 1.0, 0.8, 0.0, 0.0).unwrap(),
                GaussianParams::new_1d(1.0, 1.0, 1.2, 4.0, -1.0).unwrap(),
            ],
            1,
        )
        .unwrap();
        for x in [-2.0, 0.0, 1.7] {
            let (rho, j) = assemble_fields(&spec, [x, 0.0], 2.0);
            let s = spec.field_sample([x, 0.0], 2.0);
            assert_relative_eq!(rho, s.rho, max_relative = 1e-10);
            assert_relative_eq!(j[0], s.j[0], max_relative = 1e-10, epsilon = 1e-22);
        }
    }
}
