use std::sync::Arc;

use crate::field::{ScalarField, StateField};
use crate::geometry::{Filament, Hypersurface};
use crate::{Error, Matrix, Result, Vector};

use super::{GlRadialProfile, ProfileTable};

/// Level function whose zero set is the interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelSet {
    /// `φ = d`, the signed distance.
    SignedDistance,
    /// `φ = d + d²/(2R)` with `R` the focal distance. On a sphere this is
    /// `(|x − c|² − R²)/(2R)`; on flat pieces it reduces to `d`.
    Quadratic,
}

/// `u_ε = q(φ/ε)` for a hypersurface.
pub struct ProfileAnsatz {
    surface: Arc<dyn Hypersurface>,
    profile: Arc<ProfileTable>,
    eps: f64,
    level: LevelSet,
}

/// Build the ansatz, checking `ε·S_max ≤ focal/2`. The layer may extend past
/// the normal range; bulk quadrature is clipped to the computational domain.
pub fn ansatz_field(
    surface: Arc<dyn Hypersurface>,
    profile: Arc<ProfileTable>,
    eps: f64,
    level: LevelSet,
) -> Result<ProfileAnsatz> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let layer = eps * profile.s_max();
    let limit = 0.5 * surface.focal_distance();
    if layer > limit {
        return Err(Error::EpsilonTooLarge { eps, layer, limit });
    }
    Ok(ProfileAnsatz {
        surface,
        profile,
        eps,
        level,
    })
}

impl ProfileAnsatz {
    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    pub fn profile(&self) -> &ProfileTable {
        &self.profile
    }

    pub fn surface(&self) -> &Arc<dyn Hypersurface> {
        &self.surface
    }

    fn curvature_scale(&self) -> Option<f64> {
        let r = self.surface.focal_distance();
        match self.level {
            LevelSet::Quadratic if r.is_finite() => Some(r),
            _ => None,
        }
    }

    /// `(φ, ∇φ)`.
    pub fn level_value(&self, x: &Vector) -> (f64, Vector) {
        let d = self.surface.signed_distance(x);
        let g = self.surface.distance_gradient(x);
        match self.curvature_scale() {
            Some(r) => (d + d * d / (2.0 * r), g * (1.0 + d / r)),
            None => (d, g),
        }
    }

    fn level_hessian(&self, x: &Vector) -> Matrix {
        let h = self.surface.distance_hessian(x);
        match self.curvature_scale() {
            Some(r) => {
                let d = self.surface.signed_distance(x);
                let g = self.surface.distance_gradient(x);
                h * (1.0 + d / r) + &g * g.transpose() / r
            }
            None => h,
        }
    }
}

impl ScalarField for ProfileAnsatz {
    fn dim(&self) -> usize {
        self.surface.ambient_dim()
    }

    fn eval(&self, x: &Vector) -> f64 {
        let (phi, _) = self.level_value(x);
        self.profile.q(phi / self.eps)
    }

    fn gradient(&self, x: &Vector) -> Vector {
        let (phi, g) = self.level_value(x);
        g * (self.profile.dq(phi / self.eps) / self.eps)
    }

    fn hessian(&self, x: &Vector) -> Matrix {
        let (phi, g) = self.level_value(x);
        let s = phi / self.eps;
        let dq = self.profile.dq(s);
        if dq == 0.0 {
            return Matrix::zeros(g.len(), g.len());
        }
        let ddq = self.profile.ddq(s);
        &g * g.transpose() * (ddq / (self.eps * self.eps)) + self.level_hessian(x) * (dq / self.eps)
    }
}

/// Degree-one vortex ansatz `u = f(ρ/ε)(w, v)/ρ` about a filament, as a
/// two-component state.
pub struct VortexAnsatz {
    filament: Arc<dyn Filament>,
    profile: Arc<GlRadialProfile>,
    eps: f64,
}

/// Build the vortex ansatz. The tube of radius `ε·r_tail` must fit inside the
/// filament's tube and focal distance.
pub fn gl_vortex_field(
    filament: Arc<dyn Filament>,
    profile: Arc<GlRadialProfile>,
    eps: f64,
) -> Result<VortexAnsatz> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let limit = 0.5 * filament.focal_distance();
    if eps > limit {
        return Err(Error::EpsilonTooLarge {
            eps,
            layer: eps,
            limit,
        });
    }
    Ok(VortexAnsatz {
        filament,
        profile,
        eps,
    })
}

impl VortexAnsatz {
    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    pub fn filament(&self) -> &Arc<dyn Filament> {
        &self.filament
    }

    pub fn profile(&self) -> &GlRadialProfile {
        &self.profile
    }
}

impl StateField for VortexAnsatz {
    fn domain_dim(&self) -> usize {
        3
    }

    fn state_dim(&self) -> usize {
        2
    }

    fn state(&self, x: &Vector) -> Vector {
        let t = self.filament.transverse(x);
        let rho = t.w.hypot(t.v);
        let g = self.profile.f_over_r(rho / self.eps) / self.eps;
        Vector::from_vec(vec![g * t.w, g * t.v])
    }

    fn state_jacobian(&self, x: &Vector) -> Matrix {
        let t = self.filament.transverse(x);
        let rho = t.w.hypot(t.v);
        let e = self.eps;
        let g = self.profile.f_over_r(rho / e) / e;
        // g'(ρ)/ρ
        let k = self.profile.quotient(rho / e) / (e * e * e);
        let grad_rho_rho = &t.grad_w * t.w + &t.grad_v * t.v;
        let r1 = &grad_rho_rho * (k * t.w) + &t.grad_w * g;
        let r2 = &grad_rho_rho * (k * t.v) + &t.grad_v * g;
        let mut m = Matrix::zeros(2, 3);
        m.set_row(0, &r1.transpose());
        m.set_row(1, &r2.transpose());
        m
    }

    fn state_hessians(&self, x: &Vector) -> Vec<Matrix> {
        crate::field::fd_hessians(|y| self.state_jacobian(y), 2, x)
    }
}
