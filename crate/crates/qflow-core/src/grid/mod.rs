//! Numerical solution of the time-dependent Schrödinger equation on
//! uniform 1D/2D grids — the independent, "synthetic" route to the
//! hydrodynamic fields.
//!
//! Two steppers with disjoint jobs:
//!
//! * [`SpectralStepper`] — split-step Fourier (half potential, full
//!   kinetic in wavenumber space, half potential) on periodic grids.
//!   Unitary to round-off and spectrally accurate in space, but a
//!   periodic wrap-around cannot represent a hard wall.
//! * [`CrankNicolson`] — unconditionally stable implicit stepping on 1D
//!   Dirichlet grids, for the time-dependent effective-well scenario
//!   whose infinite wall mandates `psi = 0` nodes.

mod absorber;
mod fields;
mod geometry;
mod implicit;
mod potential;
mod snapshot;
mod spectral;
mod state;

pub use absorber::AbsorbingLayer;
pub use fields::{current_density, derivative_of, gradient, synthesize_fields, SynthesizedFields};
pub use geometry::{Boundary, GridGeometry};
pub use implicit::{step_implicit, CrankNicolson};
pub use potential::{ModelPes2d, PotentialSpec};
pub use snapshot::{
    read_snapshot, read_snapshot_file, write_snapshot, write_snapshot_file, SnapshotManifest,
    SNAPSHOT_FORMAT_VERSION,
};
pub use spectral::{step_spectral, SpectralStepper};
pub use state::{initialize_grid, sample_on_grid, GridState};
