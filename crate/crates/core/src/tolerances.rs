//! Pinned tolerances shared by the acceptance checks, the suite runner and
//! the integration tests. Changing one of these changes what "pass" means.

/// `c_1`, `c_2` against their closed forms.
pub const CP_CLOSED_FORM: f64 = 1e-12;
/// `c_p` against the Gamma-function expression.
pub const CP_GAMMA: f64 = 1e-10;

/// `|δA − dA(u, −∇u·η)|`.
pub const FV_RELATION: f64 = 1e-8;
/// `|δ²A − d²A(−∇u·η) − dA(X₀)| ≤ SV_RELATION·(1 + |δ²A|)`.
pub const SV_RELATION: f64 = 1e-6;
/// Closed forms against the finite-difference oracle: absolute floor ...
pub const ORACLE_ABS: f64 = 1e-6;
/// ... and relative part, combined as `max(ORACLE_ABS, ORACLE_REL·|value|)`.
pub const ORACLE_REL: f64 = 1e-4;

/// Volume-preservation identity with analytic derivatives.
pub const GOOD_IDENTITY: f64 = 1e-9;
/// Real vs `∂̄` form of the GL discrepancy density.
pub const GL_FORMS: f64 = 1e-10;

/// AC sharp-interface limit, relative gap of the extrapolated value.
pub const AC_LIMIT_GAP: f64 = 0.01;
/// Lower bound for the fitted first-order ε-rate.
pub const AC_MIN_RATE: f64 = 0.9;
/// `(p−1)`-regression: slope against the discrepancy (relative) ...
pub const LINEARITY_SLOPE: f64 = 0.02;
/// ... and intercept relative to the scale of the targets.
pub const LINEARITY_INTERCEPT: f64 = 0.01;

/// Sphere closed forms.
pub const SPHERE_EXACT: f64 = 1e-8;

/// Tensor pairings after extrapolation.
pub const TENSOR_GAP: f64 = 0.02;
/// Pairings whose surface target vanishes.
pub const OFF_NORMAL: f64 = 1e-6;
/// Power-law slope of the equipartition residuals.
pub const EQUIPARTITION_MIN_RATE: f64 = 0.9;

/// `c2` of volume admissibility under `ζ = ζ^η`.
pub const VOLUME_C2: f64 = 1e-10;
/// `c1` against the flux form.
pub const VOLUME_FLUX: f64 = 1e-8;
/// `|lhs − rhs| ≤ POINCARE·(1 + |rhs|)`.
pub const POINCARE: f64 = 1e-6;
/// Observed power of `h(ε)` must be at least this.
pub const PERTURBATION_MIN_RATE: f64 = 0.9;
/// Quadratic forms, relative to the `‖ξ‖²` scale.
pub const FORMS_GAP: f64 = 0.02;

/// GL energy `E_ε/|log ε| → π H¹(Γ)`.
pub const GL_ENERGY_GAP: f64 = 0.05;
/// GL second inner variation.
pub const GL_LIMIT_GAP: f64 = 0.10;

/// `c_p` by quadrature against the energy of the tabulated profile.
pub const PROFILE_ROUTES: f64 = 1e-8;
/// `|∫∇u_ε·η^ε|` after the perturbation.
pub const PERTURBATION_RESIDUAL: f64 = 1e-9;
