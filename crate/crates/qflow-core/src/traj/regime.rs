//! Dynamical-regime classification of free-packet evolution.

use serde::{Deserialize, Serialize};

use crate::GaussianParams;

/// The three spreading regimes of a free packet, in units of the
/// spreading time `tau = 2 m sigma0^2 / hbar`: negligible spreading,
/// quadratic-in-time quantum drift, and asymptotically uniform motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Huygens,
    Fresnel,
    Fraunhofer,
}

/// Regime boundaries in units of tau. The defaults are conventions, not
/// sharp physical thresholds; both are configurable.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub theta1: f64,
    pub theta2: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            theta1: 0.1,
            theta2: 10.0,
        }
    }
}

/// Huygens for `t < theta1 tau`, Fraunhofer for `t > theta2 tau`,
/// Fresnel between.
pub fn classify_regime(params: &GaussianParams, t: f64, thresholds: RegimeThresholds) -> Regime {
    let tau = params.tau(0);
    if t < thresholds.theta1 * tau {
        Regime::Huygens
    } else if t > thresholds.theta2 * tau {
        Regime::Fraunhofer
    } else {
        Regime::Fresnel
    }
}
