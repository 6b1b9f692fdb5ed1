//! Spreading-law fits: variance of density snapshots against
//! `sigma_t^2 = sigma0^2 (1 + (t/tau)^2)`.

use serde::{Deserialize, Serialize};

use crate::analysis::SampledProfile;
use crate::error::AnalysisError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SigmaFit {
    pub sigma0: f64,
    pub tau: f64,
    pub rms_residual: f64,
    /// RMS residual over the mean variance; the fit is flagged as
    /// diverged above `max_relative_residual`.
    pub relative_residual: f64,
}

/// Variance of a sampled density profile (normalization-free).
pub fn variance_of_profile(profile: &SampledProfile) -> f64 {
    let mut w = 0.0;
    let mut mean = 0.0;
    for (i, &v) in profile.values.iter().enumerate() {
        w += v;
        mean += v * profile.coord(i);
    }
    mean /= w;
    let mut var = 0.0;
    for (i, &v) in profile.values.iter().enumerate() {
        let d = profile.coord(i) - mean;
        var += v * d * d;
    }
    var / w
}

/// Least-squares fit of snapshot variances to the spreading law.
///
/// The model `var(t) = sigma0^2 + (sigma0/tau)^2 t^2` is linear in the
/// basis `{1, t^2}`, so the optimum over `(sigma0, tau)` is obtained in
/// closed form. Needs at least 5 snapshots; fails with `FitDiverged`
/// when the recovered coefficients are unphysical or the relative
/// residual exceeds `max_relative_residual` (model mismatch, e.g. a
/// multi-packet series).
pub fn fit_sigma(
    snapshots: &[(f64, SampledProfile)],
    max_relative_residual: f64,
) -> Result<SigmaFit, AnalysisError> {
    if snapshots.len() < 5 {
        return Err(AnalysisError::InvalidInput(format!(
            "need >= 5 snapshots, got {}",
            snapshots.len()
        )));
    }
    let pts: Vec<(f64, f64)> = snapshots
        .iter()
        .map(|(t, p)| (t * t, variance_of_profile(p)))
        .collect();

    // Linear least squares var = a + b u with u = t^2.
    let n = pts.len() as f64;
    let su: f64 = pts.iter().map(|p| p.0).sum();
    let sv: f64 = pts.iter().map(|p| p.1).sum();
    let suu: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let suv: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let det = n * suu - su * su;
    if det.abs() < f64::EPSILON * n * suu.max(1.0) {
        return Err(AnalysisError::FitDiverged("degenerate time base".into()));
    }
    let a = (suu * sv - su * suv) / det;
    let b = (n * suv - su * sv) / det;
    if !(a > 0.0) || !(b > 0.0) {
        return Err(AnalysisError::FitDiverged(format!(
            "unphysical coefficients a = {a:.3e}, b = {b:.3e}"
        )));
    }

    let mut ss = 0.0;
    for (u, v) in &pts {
        let r = v - (a + b * u);
        ss += r * r;
    }
    let rms = (ss / n).sqrt();
    let relative = rms / (sv / n);
    if relative > max_relative_residual {
        return Err(AnalysisError::FitDiverged(format!(
            "relative residual {relative:.3e} exceeds {max_relative_residual:.3e}; \
             the single-packet spreading model does not describe this series"
        )));
    }
    Ok(SigmaFit {
        sigma0: a.sqrt(),
        tau: (a / b).sqrt(),
        rms_residual: rms,
        relative_residual: relative,
    })
}
