//! Quantum-trajectory (Bohmian) dynamics for Gaussian wave packets.
//!
//! The crate is organized around two independent routes to the same physics:
//!
//! * [`analytic`] — closed-form free Gaussian packets and their
//!   superpositions, with exact probability density, phase gradient,
//!   probability current, velocity field, and quantum potential.
//! * [`grid`] — direct numerical propagation of the time-dependent
//!   Schrödinger equation on uniform 1D/2D grids (split-step spectral for
//!   periodic domains, Crank–Nicolson for Dirichlet walls), from which the
//!   same hydrodynamic fields are synthesized.
//!
//! On top of both sit the [`traj`] engine (adaptive integration of
//! trajectory ensembles through any velocity-field provider), the
//! [`well`] module (the time-dependent effective square-well model that
//! lets a single packet mimic two-packet interference against a hard
//! wall), and [`analysis`] (fringe structure, spreading fits, continuity
//! residuals, phase-singularity detection).
//!
//! Everything works in natural units: `mass` and `hbar` are explicit
//! parameters everywhere and default to 1 in the canonical scenarios.

pub mod analysis;
pub mod analytic;
pub mod error;
pub mod grid;
pub mod traj;
pub mod well;

/// A spatial point or vector. 1D data uses component 0; component 1 is
/// zero and ignored. Keeping a fixed-size array gives one allocation-free
/// code path for both dimensions.
pub type Pos = [f64; 2];

/// Default probability-density floor below which velocity and quantum
/// potential are reported as undefined rather than clamped. Nodal regions
/// are physically meaningful (non-crossing barriers), so nothing is
/// fabricated there.
pub const DENSITY_FLOOR: f64 = 1e-300;

pub use analytic::{FieldSample, GaussianParams, SuperpositionSpec};
pub use error::{AnalysisError, GridError, TrajectoryError, WaveError, WellError};
pub use grid::{Boundary, GridGeometry, GridState, PotentialSpec};
pub use traj::{Regime, RegimeThresholds, TrajectoryEnsemble, VelocityProvider};
pub use well::EffectiveWellParams;
