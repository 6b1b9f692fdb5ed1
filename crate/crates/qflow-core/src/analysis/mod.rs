//! Observables the physics claims are stated in: fringe structure, peak
//! widths, spreading fits, continuity residuals, Ehrenfest means, and 2D
//! phase-singularity detection.

mod continuity;
mod ehrenfest;
mod fringes;
mod spreading;
mod vortex;

pub use continuity::continuity_residual;
pub use ehrenfest::{ehrenfest_check, EhrenfestReport};
pub use fringes::{find_fringes, FringeReport, Peak, SampledProfile};
pub use spreading::{fit_sigma, variance_of_profile, SigmaFit};
pub use vortex::{detect_vortices, Vortex, VortexReport};

/// Kolmogorov–Smirnov distance between a sorted sample and a CDF.
pub fn ks_distance(sorted_sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted_sample.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted_sample.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max((f - (i as f64 + 1.0) / n).abs());
    }
    d
}
