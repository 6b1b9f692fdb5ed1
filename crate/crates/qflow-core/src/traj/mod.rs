//! Trajectory-ensemble engine: sample initial conditions from `rho_0`,
//! integrate `dx/dt = v(x, t)` through any velocity-field provider, and
//! extract the regime/ordering/slope diagnostics the dynamics is judged
//! by.

mod ensemble;
mod provider;
mod regime;
mod rk45;
mod sample;

pub use ensemble::{
    check_noncrossing, integrate_ensemble, EnsembleMeta, NoncrossingReport, TrajectoryEnsemble,
};
pub use provider::{
    AnalyticProvider, GridVelocityProvider, Interpolation, ProviderError, VelocityProvider,
};
pub use regime::{classify_regime, Regime, RegimeThresholds};
pub use rk45::{integrate_path, AdaptiveOptions, HaltCause, PathHalt, PathOutcome};
pub use sample::{
    product_quantiles_2d, quantile_positions, rejection_sample_2d, seeded_samples,
    superposition_quantiles, superposition_range,
};

/// Least-squares slopes of every path over a time window (used for the
/// asymptotic, uniform-motion regime).
pub fn asymptotic_slope(
    ensemble: &TrajectoryEnsemble,
    window: [f64; 2],
) -> Result<Vec<f64>, crate::error::TrajectoryError> {
    ensemble.slopes_in_window(window)
}
