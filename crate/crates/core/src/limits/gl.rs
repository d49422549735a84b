use std::f64::consts::PI;
use std::sync::Arc;

use crate::field::VectorField;
use crate::geometry::{area_second_inner_variation, gl_discrepancy, Filament, GlDiscrepancy};
use crate::profiles::{gl_vortex_field, GlRadialProfile, RadialShape};
use crate::variation::{BulkQuadrature, GinzburgLandau, VariationEngine};
use crate::Result;

use super::sweep::{ConvergenceRecord, EpsilonSchedule, InverseLog};

/// Discretization of the normal disks around a filament.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilamentOptions {
    pub tube_radius: f64,
    pub radial_order: usize,
    pub angular: usize,
    pub shape: RadialShape,
}

impl Default for FilamentOptions {
    fn default() -> Self {
        Self {
            tube_radius: 0.5,
            radial_order: 8,
            angular: 16,
            shape: RadialShape::Shooting,
        }
    }
}

/// The GL sweep and its two targets.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GlLimit {
    /// Values are `δ²E_ε`; residuals `[δE_ε, δ²E_ε − oracle]`.
    pub second: ConvergenceRecord,
    /// Values are `E_ε(u_ε)`, target `π H¹(Γ)`; residuals `[E_ε, 0]`.
    pub energy: ConvergenceRecord,
    /// `δ²E(Γ, η, ζ)`.
    pub surface_variation: f64,
    pub discrepancy: GlDiscrepancy,
}

/// Sweep `δ²E_ε(u_ε, η, ζ)` for the degree-one vortex ansatz around `f`
/// against `π{δ²E(Γ,η,ζ) + ∫_Γ(|D_⊥η^⊥|² − 2Jac_⊥η^⊥)}`.
pub fn gl_limit_experiment(
    f: Arc<dyn Filament>,
    eta: Arc<dyn VectorField>,
    zeta: Arc<dyn VectorField>,
    sched: &EpsilonSchedule,
    opts: &FilamentOptions,
) -> Result<GlLimit> {
    let profile = Arc::new(GlRadialProfile::build(opts.shape)?);
    let discrepancy = gl_discrepancy(f.as_ref(), eta.as_ref())?;
    let surface_variation = area_second_inner_variation(f.as_ref(), eta.as_ref(), zeta.as_ref());
    let target = PI * (surface_variation + discrepancy.real_form);
    let points = sched.sweep(|eps| {
        let u = gl_vortex_field(f.clone(), profile.clone(), eps)?;
        let quad = BulkQuadrature::filament_tube(f.as_ref(), opts.tube_radius, eps, opts.radial_order, opts.angular)?;
        let gl = GinzburgLandau::new(eps)?;
        let e = VariationEngine::new(&gl, &quad);
        let energy = e.energy(&u)?;
        let second = e.second_inner_variation(&u, eta.as_ref(), zeta.as_ref())?;
        let first = e.first_inner_variation(&u, eta.as_ref())?;
        let oracle = e.inner_variation_oracle(&u, eta.as_ref(), zeta.as_ref(), None)?;
        Ok((energy, second, [first, second - oracle.second]))
    })?;
    let eps = sched.epsilons().to_vec();
    let model = sched.model().as_ref();
    let second = ConvergenceRecord::new(
        format!("gl-limit {}", f.label()),
        model,
        eps.clone(),
        points.iter().map(|p| p.1).collect(),
        points.iter().map(|p| p.2).collect(),
        target,
    );
    let energies: Vec<f64> = points.iter().map(|p| p.0).collect();
    let energy = ConvergenceRecord::new(
        format!("gl-energy {}", f.label()),
        &InverseLog,
        eps,
        energies.clone(),
        energies.iter().map(|e| [*e, 0.0]).collect(),
        PI * f.measure(),
    );
    Ok(GlLimit {
        second,
        energy,
        surface_variation,
        discrepancy,
    })
}
