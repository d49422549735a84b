//! Inner variations of phase-field energies and their sharp-interface limits.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: scalar/vector fields on R^N, the deformation map
//!   `x + t·η + t²/2·ζ`, and the acceleration fields built from it.
//! - [`geometry`]: parametrized interfaces (hypersurfaces and filaments) with
//!   surface quadrature and the surface functionals evaluated on them.
//! - [`profiles`]: 1D transition profiles, the constants `c_p`, the GL vortex
//!   profile and the ansatz fields built from them.
//! - [`variation`]: bulk integrands, quadratures, and the closed-form
//!   first/second (inner) variations with their finite-difference oracle.
//! - [`limits`]: ε-sweeps, extrapolation and the limit experiments.
//! - [`suite`]: JSON experiment configs, the experiment registry and output.

pub mod error;
pub mod field;
pub mod geometry;
pub mod limits;
pub mod numerics;
pub mod profiles;
pub mod suite;
pub mod tolerances;
pub mod variation;

pub use error::{Error, Result};

/// Column vector of dynamic size.
pub type Vector = nalgebra::DVector<f64>;
/// Dense matrix of dynamic size.
pub type Matrix = nalgebra::DMatrix<f64>;
