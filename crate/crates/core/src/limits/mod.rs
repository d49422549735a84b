//! ε-sweeps of the phase-field variations against their sharp-interface
//! limits, plus the volume-constraint checks.

mod ac;
mod constraint;
mod gl;
mod sweep;

pub use ac::{
    ac_limit_experiment, ansatz_energy, equipartition_residuals, tensor_pairing_experiment, AcLimit, Equipartition,
    TensorPairing, TubeOptions,
};
pub use constraint::{
    constrained_poincare_check, perturbed_field, quadratic_forms, volume_admissibility, PerturbedField,
    PoincareCheck, QuadraticForms, VolumeAdmissibility,
};
pub use gl::{gl_limit_experiment, FilamentOptions, GlLimit};
pub use sweep::{
    extrapolate, observed_rate, power_rate, record_gap, relative_gap, ConvergenceRecord, EpsilonSchedule,
    Extrapolation, ExtrapolationRegistry, InverseLog, LinearEps, FIT_POINTS,
};
