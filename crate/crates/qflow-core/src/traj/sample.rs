//! Initial-condition sampling from probability densities.
//!
//! Default sampling is deterministic quantiles: position `i` sits at the
//! `(i - 1/2)/n` quantile of the cumulative distribution, with equal
//! weights `1/n`. That makes equivariance and non-crossing checks fully
//! reproducible. Seeded random sampling is also available.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::TrajectoryError;
use crate::{Pos, SuperpositionSpec};

const CDF_RESOLUTION: usize = 200_000;

/// Deterministic quantile positions of an arbitrary 1D density over
/// `range`. The density is tabulated at `CDF_RESOLUTION` points and the
/// trapezoid CDF inverted by interpolation.
pub fn quantile_positions(
    rho: impl Fn(f64) -> f64,
    range: (f64, f64),
    n: usize,
) -> Result<Vec<f64>, TrajectoryError> {
    if n == 0 {
        return Err(TrajectoryError::InvalidInput("n must be >= 1".into()));
    }
    let cdf = Cdf::build(rho, range)?;
    Ok((0..n)
        .map(|i| cdf.invert((i as f64 + 0.5) / n as f64))
        .collect())
}

/// Seeded random draws from the same inverse-CDF machinery.
pub fn seeded_samples(
    rho: impl Fn(f64) -> f64,
    range: (f64, f64),
    n: usize,
    seed: u64,
) -> Result<Vec<f64>, TrajectoryError> {
    let cdf = Cdf::build(rho, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| cdf.invert(rng.random::<f64>())).collect())
}

/// Spatial range comfortably covering a superposition at time `t`
/// (every component center transported to `t`, padded by 12 sigma_t).
pub fn superposition_range(spec: &SuperpositionSpec, t: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in spec.components() {
        let center = c.center[0] + c.velocity[0] * t;
        let pad = 12.0 * c.sigma_t(0, t);
        lo = lo.min(center - pad);
        hi = hi.max(center + pad);
    }
    (lo, hi)
}

/// Quantile positions of `|Psi(x, t)|^2` for a 1D superposition.
pub fn superposition_quantiles(
    spec: &SuperpositionSpec,
    t: f64,
    n: usize,
) -> Result<Vec<f64>, TrajectoryError> {
    quantile_positions(
        |x| spec.psi([x, 0.0], t).norm_sqr(),
        superposition_range(spec, t),
        n,
    )
}

/// Product quantiles for a separable 2D density: an `nx * ny` tensor
/// grid of per-axis quantiles.
pub fn product_quantiles_2d(
    rho_x: impl Fn(f64) -> f64,
    range_x: (f64, f64),
    nx: usize,
    rho_y: impl Fn(f64) -> f64,
    range_y: (f64, f64),
    ny: usize,
) -> Result<Vec<Pos>, TrajectoryError> {
    let xs = quantile_positions(rho_x, range_x, nx)?;
    let ys = quantile_positions(rho_y, range_y, ny)?;
    let mut out = Vec::with_capacity(nx * ny);
    for &x in &xs {
        for &y in &ys {
            out.push([x, y]);
        }
    }
    Ok(out)
}

/// Seeded rejection sampling for non-separable 2D densities.
pub fn rejection_sample_2d(
    rho: impl Fn(Pos) -> f64,
    bounds: [(f64, f64); 2],
    n: usize,
    seed: u64,
) -> Result<Vec<Pos>, TrajectoryError> {
    // Envelope from a coarse scan, padded.
    let mut peak = 0.0f64;
    let scan = 256;
    for i in 0..scan {
        for j in 0..scan {
            let x = bounds[0].0 + (bounds[0].1 - bounds[0].0) * (i as f64 + 0.5) / scan as f64;
            let y = bounds[1].0 + (bounds[1].1 - bounds[1].0) * (j as f64 + 0.5) / scan as f64;
            peak = peak.max(rho([x, y]));
        }
    }
    if !(peak > 0.0) || !peak.is_finite() {
        return Err(TrajectoryError::UnnormalizableDensity { integral: peak });
    }
    let envelope = 1.05 * peak;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while out.len() < n {
        attempts += 1;
        if attempts > 10_000_000 {
            return Err(TrajectoryError::InvalidInput(
                "rejection sampling did not converge".into(),
            ));
        }
        let x = bounds[0].0 + (bounds[0].1 - bounds[0].0) * rng.random::<f64>();
        let y = bounds[1].0 + (bounds[1].1 - bounds[1].0) * rng.random::<f64>();
        if rng.random::<f64>() * envelope < rho([x, y]) {
            out.push([x, y]);
        }
    }
    Ok(out)
}

struct Cdf {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl Cdf {
    fn build(rho: impl Fn(f64) -> f64, range: (f64, f64)) -> Result<Self, TrajectoryError> {
        let (a, b) = range;
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(TrajectoryError::InvalidInput(format!(
                "bad sampling range [{a}, {b}]"
            )));
        }
        let n = CDF_RESOLUTION;
        let h = (b - a) / (n - 1) as f64;
        let mut xs = Vec::with_capacity(n);
        let mut density = Vec::with_capacity(n);
        for i in 0..n {
            let x = a + i as f64 * h;
            let f = rho(x);
            if f < 0.0 || !f.is_finite() {
                return Err(TrajectoryError::UnnormalizableDensity { integral: f });
            }
            xs.push(x);
            density.push(f);
        }
        let mut values = Vec::with_capacity(n);
        values.push(0.0);
        for i in 1..n {
            let inc = 0.5 * (density[i] + density[i - 1]) * h;
            values.push(values[i - 1] + inc);
        }
        let total = *values.last().unwrap();
        if !(total > 0.0) || !total.is_finite() {
            return Err(TrajectoryError::UnnormalizableDensity { integral: total });
        }
        for v in &mut values {
            *v /= total;
        }
        Ok(Self { xs, values })
    }

    fn invert(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, 1.0);
        let idx = self
            .values
            .partition_point(|&v| v < q)
            .clamp(1, self.values.len() - 1);
        let (v0, v1) = (self.values[idx - 1], self.values[idx]);
        let f = if v1 > v0 { (q - v0) / (v1 - v0) } else { 0.5 };
        self.xs[idx - 1] + f * (self.xs[idx] - self.xs[idx - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianParams;
    use approx::assert_abs_diff_eq;
    use statrs::distribution::{ContinuousCDF, Normal};

    fn gaussian_rho(sigma: f64) -> impl Fn(f64) -> f64 {
        move |x: f64| (-x * x / (2.0 * sigma * sigma)).exp()
    }

    #[test]
    fn single_sample_is_the_median() {
        let xs = quantile_positions(gaussian_rho(1.0), (-12.0, 12.0), 1).unwrap();
        assert_abs_diff_eq!(xs[0], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn two_samples_are_quartiles() {
        // |Psi_0|^2 of a sigma0 = 1 packet has standard deviation 1; the
        // quartiles come from the normal inverse CDF.
        let spec = SuperpositionSpec::single(
            GaussianParams::new_1d(1.0, 1.0, 1.0, 0.0, 0.0).unwrap(),
        );
        let xs = superposition_quantiles(&spec, 0.0, 2).unwrap();
        let normal = Normal::new(0.0, 1.0).unwrap();
        let q = normal.inverse_cdf(0.75);
        assert_abs_diff_eq!(q, 0.6744897501960817, epsilon = 1e-12);
        assert_abs_diff_eq!(xs[0], -q, epsilon = 1e-6);
        assert_abs_diff_eq!(xs[1], q, epsilon = 1e-6);
    }

    #[test]
    fn uniform_quantiles() {
        let xs = quantile_positions(|_| 1.0, (0.0, 1.0), 4).unwrap();
        for (got, expect) in xs.iter().zip([0.125, 0.375, 0.625, 0.875]) {
            assert_abs_diff_eq!(*got, expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn rejects_unnormalizable() {
        assert!(matches!(
            quantile_positions(|_| 0.0, (0.0, 1.0), 3),
            Err(TrajectoryError::UnnormalizableDensity { .. })
        ));
        assert!(matches!(
            quantile_positions(|x| x, (f64::NEG_INFINITY, 1.0), 3),
            Err(TrajectoryError::InvalidInput(_))
        ));
    }

    #[test]
    fn seeded_draws_are_reproducible_and_distributed() {
        let a = seeded_samples(gaussian_rho(1.0), (-10.0, 10.0), 500, 42).unwrap();
        let b = seeded_samples(gaussian_rho(1.0), (-10.0, 10.0), 500, 42).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let normal = Normal::new(0.0, 1.0).unwrap();
        let ks = crate::analysis::ks_distance(&sorted, |x| normal.cdf(x));
        assert!(ks < 0.08, "ks {ks}");
    }

    #[test]
    fn product_quantiles_shape() {
        let pts = product_quantiles_2d(
            gaussian_rho(1.0),
            (-10.0, 10.0),
            3,
            gaussian_rho(0.5),
            (-5.0, 5.0),
            2,
        )
        .unwrap();
        assert_eq!(pts.len(), 6);
        assert_abs_diff_eq!(pts[1][0], pts[0][0]);
        assert!(pts[0][1] < pts[1][1]);
    }

    #[test]
    fn rejection_sampling_reproducible() {
        let rho = |p: Pos| (-(p[0] * p[0] + 2.0 * p[1] * p[1]) / 2.0).exp();
        let a = rejection_sample_2d(rho, [(-5.0, 5.0), (-5.0, 5.0)], 100, 7).unwrap();
        let b = rejection_sample_2d(rho, [(-5.0, 5.0), (-5.0, 5.0)], 100, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
    }
}
