//! Interference-fringe extraction from 1D density profiles.

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;

/// Uniformly sampled 1D profile: `values[i]` at `x0 + i * dx`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledProfile {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl SampledProfile {
    pub fn new(x0: f64, dx: f64, values: Vec<f64>) -> Self {
        Self { x0, dx, values }
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }
}

/// One detected fringe maximum. Width is the full width at half the peak
/// height, linearly interpolated; peaks truncated by the profile edge
/// keep the measurable part (which is exactly what makes a wall-adjacent
/// half-peak come out at half the width).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Peak {
    pub position: f64,
    pub height: f64,
    pub fwhm: f64,
    pub prominence: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FringeReport {
    /// Peaks sorted by position.
    pub peaks: Vec<Peak>,
    /// Median adjacent-peak spacing.
    pub spacing_estimate: f64,
    /// FWHM of the peak nearest `x = 0` divided by the median FWHM of the
    /// others; present when at least three peaks were found.
    pub innermost_ratio: Option<f64>,
}

/// Find local maxima with topographic prominence at least
/// `min_prominence` times the global maximum; `min_prominence` must lie
/// in (0, 1).
pub fn find_fringes(
    profile: &SampledProfile,
    min_prominence: f64,
) -> Result<FringeReport, AnalysisError> {
    if !(0.0..1.0).contains(&min_prominence) || min_prominence == 0.0 {
        return Err(AnalysisError::InvalidInput(format!(
            "min_prominence {min_prominence} outside (0, 1)"
        )));
    }
    let v = &profile.values;
    if v.len() < 3 {
        return Err(AnalysisError::TooFewPeaks { found: 0 });
    }
    let global_max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(global_max > 0.0) {
        return Err(AnalysisError::TooFewPeaks { found: 0 });
    }
    let threshold = min_prominence * global_max;

    let n = v.len();
    let mut candidates = Vec::new();
    for i in 0..n {
        let left = if i > 0 { v[i - 1] } else { f64::NEG_INFINITY };
        let right = if i + 1 < n { v[i + 1] } else { f64::NEG_INFINITY };
        // Plateaus resolve to their left edge.
        if v[i] > left && v[i] >= right {
            candidates.push(i);
        }
    }

    let mut peaks = Vec::new();
    for &i in &candidates {
        let prom = prominence(v, i);
        if prom >= threshold {
            let (lo, hi) = half_height_span(profile, i);
            peaks.push(Peak {
                position: profile.coord(i),
                height: v[i],
                fwhm: hi - lo,
                prominence: prom,
            });
        }
    }
    if peaks.len() < 2 {
        return Err(AnalysisError::TooFewPeaks { found: peaks.len() });
    }
    peaks.sort_by(|a, b| a.position.partial_cmp(&b.position).unwrap());

    let mut gaps: Vec<f64> = peaks.windows(2).map(|w| w[1].position - w[0].position).collect();
    gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let spacing_estimate = gaps[gaps.len() / 2];

    let innermost_ratio = if peaks.len() >= 3 {
        let innermost = peaks
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.position.abs().partial_cmp(&b.1.position.abs()).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let mut others: Vec<f64> = peaks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != innermost)
            .map(|(_, p)| p.fwhm)
            .collect();
        others.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = others[others.len() / 2];
        Some(peaks[innermost].fwhm / median)
    } else {
        None
    };

    Ok(FringeReport {
        peaks,
        spacing_estimate,
        innermost_ratio,
    })
}

/// Topographic prominence of sample `i`: height above the higher of the
/// two lowest cols separating it from higher terrain. A side cut off by
/// the profile edge (e.g. a wall-truncated peak) does not constrain the
/// prominence.
fn prominence(v: &[f64], i: usize) -> f64 {
    let h = v[i];
    let walk = |dir: isize| -> Option<f64> {
        let mut low = h;
        let mut j = i as isize;
        loop {
            j += dir;
            if j < 0 || j >= v.len() as isize {
                return if low < h { Some(low) } else { None };
            }
            low = low.min(v[j as usize]);
            if v[j as usize] > h {
                return Some(low);
            }
        }
    };
    match (walk(-1), walk(1)) {
        (Some(l), Some(r)) => h - l.max(r),
        (Some(l), None) => h - l,
        (None, Some(r)) => h - r,
        (None, None) => h,
    }
}

/// Positions where the profile crosses half the peak height on each side
/// of peak `i`, interpolated linearly; a side with no crossing clamps at
/// the profile edge.
fn half_height_span(profile: &SampledProfile, i: usize) -> (f64, f64) {
    let v = &profile.values;
    let half = v[i] / 2.0;
    let mut lo = profile.coord(0);
    let mut j = i;
    while j > 0 {
        j -= 1;
        if v[j] <= half {
            let f = (v[j + 1] - half) / (v[j + 1] - v[j]);
            lo = profile.coord(j + 1) - f * profile.dx;
            break;
        }
    }
    let mut hi = profile.coord(v.len() - 1);
    let mut j = i;
    while j + 1 < v.len() {
        j += 1;
        if v[j] <= half {
            let f = (v[j - 1] - half) / (v[j - 1] - v[j]);
            hi = profile.coord(j - 1) + f * profile.dx;
            break;
        }
    }
    (lo, hi)
}
