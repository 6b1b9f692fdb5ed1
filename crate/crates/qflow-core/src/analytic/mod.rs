//! Closed-form free Gaussian wave packets, superpositions, and the
//! hydrodynamic fields derived from them.
//!
//! All quantities here are exact expressions evaluated pointwise; no
//! finite differences are used anywhere in this module. The grid
//! propagator provides the independent numerical route to the same
//! fields.

mod assembly;
mod packet;
mod superposition;

pub use assembly::{assemble_fields, ComponentPolar};
pub use packet::{AsymptoticRegime, GaussianParams};
pub use superposition::{FieldSample, SuperpositionSpec};
