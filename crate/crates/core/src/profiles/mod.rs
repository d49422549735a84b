//! One-dimensional transition profiles, the constants `c_p`, the GL radial
//! vortex profile, and the ansatz fields built from them.

mod ansatz;
mod table;
mod vortex;

pub use ansatz::{ansatz_field, gl_vortex_field, LevelSet, ProfileAnsatz, VortexAnsatz};
pub use table::{c_p, optimal_profile, DoubleWell, ProfileTable};
pub use vortex::{GlRadialProfile, RadialShape};
