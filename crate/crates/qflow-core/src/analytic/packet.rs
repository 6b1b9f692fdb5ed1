//! Single free Gaussian wave packet: parameters and per-axis closed forms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::WaveError;
use crate::Pos;

const QUARTER_ROOT_2PI: f64 = 0.6316187777460647; // (2*pi)^(-1/4)

/// Physical parameters of one Gaussian packet.
///
/// 2D packets are separable products of 1D Gaussians; each axis carries
/// its own width, center, and group velocity. 1D packets simply ignore
/// axis 1 (constructors fill it with inert values).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub mass: f64,
    pub hbar: f64,
    /// Initial width per axis, `sigma0 > 0`.
    pub sigma0: Pos,
    /// Initial packet-center position per axis.
    pub center: Pos,
    /// Initial group velocity per axis.
    pub velocity: Pos,
    /// Complex amplitude multiplier applied to the normalized packet.
    pub weight: Complex64,
}

impl GaussianParams {
    /// One-dimensional packet with unit weight.
    pub fn new_1d(
        mass: f64,
        hbar: f64,
        sigma0: f64,
        center: f64,
        velocity: f64,
    ) -> Result<Self, WaveError> {
        Self::new_2d(mass, hbar, [sigma0, 1.0], [center, 0.0], [velocity, 0.0])
    }

    /// Two-dimensional separable packet with unit weight.
    pub fn new_2d(
        mass: f64,
        hbar: f64,
        sigma0: Pos,
        center: Pos,
        velocity: Pos,
    ) -> Result<Self, WaveError> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(WaveError::InvalidParams(format!("mass {mass} must be > 0")));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(WaveError::InvalidParams(format!("hbar {hbar} must be > 0")));
        }
        for (axis, s) in sigma0.iter().enumerate() {
            if !(*s > 0.0) || !s.is_finite() {
                return Err(WaveError::InvalidParams(format!(
                    "sigma0[{axis}] = {s} must be > 0"
                )));
            }
        }
        for v in center.iter().chain(velocity.iter()) {
            if !v.is_finite() {
                return Err(WaveError::InvalidParams("non-finite center/velocity".into()));
            }
        }
        Ok(Self {
            mass,
            hbar,
            sigma0,
            center,
            velocity,
            weight: Complex64::new(1.0, 0.0),
        })
    }

    pub fn with_weight(mut self, weight: Complex64) -> Self {
        self.weight = weight;
        self
    }

    /// Spreading timescale `tau = 2 m sigma0^2 / hbar` for one axis.
    /// Finite and positive for any valid packet.
    pub fn tau(&self, axis: usize) -> f64 {
        2.0 * self.mass * self.sigma0[axis] * self.sigma0[axis] / self.hbar
    }

    /// Spreading rate `v_s = hbar / (2 m sigma0)`: the velocity scale that
    /// separates collision-like from interference-like superposition
    /// dynamics.
    pub fn spreading_rate(&self, axis: usize) -> f64 {
        self.hbar / (2.0 * self.mass * self.sigma0[axis])
    }

    /// Width at time `t` for one axis:
    /// `sigma_t = sigma0 * sqrt(1 + (hbar t / 2 m sigma0^2)^2)`.
    ///
    /// Even in `t`, monotone nondecreasing for `t >= 0`, and `>= sigma0`
    /// always.
    pub fn sigma_t(&self, axis: usize, t: f64) -> f64 {
        let b = t / self.tau(axis);
        self.sigma0[axis] * (1.0 + b * b).sqrt()
    }

    /// Complex width `sigma~_t = sigma0 (1 + i hbar t / 2 m sigma0^2)`,
    /// whose modulus is `sigma_t`.
    pub fn sigma_tilde(&self, axis: usize, t: f64) -> Complex64 {
        let b = t / self.tau(axis);
        self.sigma0[axis] * Complex64::new(1.0, b)
    }

    /// Momentum `p0 = m v0` for one axis.
    pub fn momentum(&self, axis: usize) -> f64 {
        self.mass * self.velocity[axis]
    }

    /// Quantum trajectory through `x_start` at `t = 0`, for one axis:
    /// `x(t) = center + v0 t + (sigma_t / sigma0) (x_start - center)`.
    /// Exact; no integration involved.
    pub fn trajectory(&self, axis: usize, x_start: f64, t: f64) -> f64 {
        let x0 = x_start - self.center[axis];
        self.center[axis] + self.velocity[axis] * t + self.sigma_t(axis, t) / self.sigma0[axis] * x0
    }

    /// Asymptotic trajectory approximations. `x0` is the initial
    /// displacement from the packet center (the same convention as
    /// [`Self::trajectory`] after subtracting the center).
    ///
    /// * Fresnel (early times): `x0 + v0 t + (x0 / 2 tau^2) t^2`, the
    ///   uniformly accelerated form with `a_q = x0 / tau^2`.
    /// * Fraunhofer (late times): `(v0 + x0 / tau) t`, uniform motion with
    ///   an initial-position-dependent velocity.
    pub fn asymptotic_trajectory(
        &self,
        axis: usize,
        x0: f64,
        t: f64,
        regime: AsymptoticRegime,
    ) -> f64 {
        let tau = self.tau(axis);
        let c = self.center[axis];
        match regime {
            AsymptoticRegime::Fresnel => {
                c + x0 + self.velocity[axis] * t + 0.5 * x0 / (tau * tau) * t * t
            }
            AsymptoticRegime::Fraunhofer => c + (self.velocity[axis] + x0 / tau) * t,
        }
    }

    /// Amplitude of the normalized packet along one axis at `(x, t)`.
    /// The weight is *not* applied here; superpositions fold it in once
    /// per component.
    pub(crate) fn psi_axis(&self, axis: usize, x: f64, t: f64) -> Complex64 {
        let st = self.sigma_tilde(axis, t);
        let xr = x - self.center[axis] - self.velocity[axis] * t;
        let p0 = self.momentum(axis);
        let energy = 0.5 * p0 * self.velocity[axis];
        // (2 pi sigma~_t^2)^(-1/4) via the principal square root of
        // sigma~_t, which is continuous for all t because Re(sigma~_t) > 0.
        let amp = QUARTER_ROOT_2PI / st.sqrt();
        let exponent = -xr * xr / (4.0 * st * self.sigma0[axis])
            + Complex64::new(0.0, (p0 * xr + energy * t) / self.hbar);
        amp * exponent.exp()
    }

    /// Logarithmic derivative `g = psi'/psi` along one axis (closed form).
    pub(crate) fn log_derivative(&self, axis: usize, x: f64, t: f64) -> Complex64 {
        let st = self.sigma_tilde(axis, t);
        let xr = x - self.center[axis] - self.velocity[axis] * t;
        -xr / (2.0 * st * self.sigma0[axis]) + Complex64::new(0.0, self.momentum(axis) / self.hbar)
    }

    /// Derivative of [`Self::log_derivative`] in `x`; together they give
    /// `psi'' = psi (g^2 + g')`.
    pub(crate) fn log_derivative_slope(&self, axis: usize, t: f64) -> Complex64 {
        -1.0 / (2.0 * self.sigma_tilde(axis, t) * self.sigma0[axis])
    }
}

/// Which asymptotic closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticRegime {
    Fresnel,
    Fraunhofer,
}
