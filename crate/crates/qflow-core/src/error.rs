//! Error types, one enum per subsystem.

use thiserror::Error;

/// Invalid physical parameters for analytic wave objects.
#[derive(Debug, Clone, Error)]
pub enum WaveError {
    #[error("invalid packet parameters: {0}")]
    InvalidParams(String),
    #[error("invalid superposition: {0}")]
    InvalidSuperposition(String),
}

/// Grid construction and propagation failures.
#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid grid geometry: {0}")]
    InvalidGeometry(String),
    #[error(
        "grid too small: packet at {center} with sigma0 {sigma0} needs \
         {required} clearance on axis {axis} of [{min}, {max}]"
    )]
    GridTooSmall {
        axis: usize,
        center: f64,
        sigma0: f64,
        required: f64,
        min: f64,
        max: f64,
    },
    #[error("boundary density {ratio:.3e} of peak exceeds 1e-12; enlarge the grid")]
    BoundaryDensityTooLarge { ratio: f64 },
    #[error("stability violation: dt*max|V|/hbar = {value:.3e} >= 0.5")]
    StabilityViolation { value: f64 },
    #[error("potential {0} is not supported by this stepper")]
    UnsupportedPotential(String),
    #[error("linear solve failed: {0}")]
    SolverFailure(String),
    #[error("geometry mismatch between states")]
    GeometryMismatch,
    #[error("snapshot io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed snapshot: {0}")]
    BadSnapshot(String),
}

/// Effective-well model failures.
#[derive(Debug, Clone, Error)]
pub enum WellError {
    #[error("degenerate well at t = {t}: width denominator {denominator:.3e} <= 0")]
    DegenerateWell { t: f64, denominator: f64 },
    #[error("invalid well parameters: {0}")]
    InvalidParams(String),
}

/// Trajectory sampling and integration failures.
#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("density is not normalizable (integral {integral:.3e})")]
    UnnormalizableDensity { integral: f64 },
    #[error("provider range exceeded: {0}")]
    ProviderRangeExceeded(String),
    #[error("path {path} entered an undefined-velocity (nodal) region at t = {t}")]
    NodalRegionEncounter { path: usize, t: f64 },
    #[error("step size underflow at t = {t}; velocity field too stiff")]
    StepSizeUnderflow { t: f64 },
    #[error("fit window [{a}, {b}] outside integrated span [{t0}, {t1}]")]
    WindowOutOfRange { a: f64, b: f64, t0: f64, t1: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Observable-extraction failures.
#[derive(Debug, Clone, Error)]
pub enum AnalysisError {
    #[error("too few peaks: found {found}, need at least 2")]
    TooFewPeaks { found: usize },
    #[error("spreading fit diverged: {0}")]
    FitDiverged(String),
    #[error("geometry mismatch between snapshots")]
    GeometryMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
