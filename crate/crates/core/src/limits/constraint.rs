use std::sync::Arc;

use crate::field::{Combination, DirectionalField, ScalarField, StateField, VectorField, X0Field, ZetaEta};
use crate::geometry::{
    area_second_inner_variation, jacobi_form, quadratic_form_limit, surface_integral, Hypersurface, NormalExtension,
    SurfaceFunction,
};
use crate::numerics::{par_weighted_sum, par_weighted_sums};
use crate::profiles::{c_p, optimal_profile};
use crate::variation::{BulkQuadrature, PAllenCahn, VariationEngine};
use crate::{Error, Result};

use super::ac::{ansatz_and_tube, TubeOptions};
use super::sweep::{ConvergenceRecord, EpsilonSchedule};

/// Volume change coefficients of `Φ_t(E₀)` up to second order.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct VolumeAdmissibility {
    /// `∫_{E₀} div η`.
    pub c1: f64,
    /// `∫_{E₀} div ζ + (div η)² − tr((∇η)²)`.
    pub c2: f64,
    /// `∫_Γ η·n`, the flux form of `c1`.
    pub flux: f64,
}

/// Bulk coefficients over the region enclosed by `g` (radial Gauss rule),
/// with the flux cross-check for `c1`.
pub fn volume_admissibility(
    g: &dyn Hypersurface,
    eta: &dyn VectorField,
    zeta: &dyn VectorField,
    radial_order: usize,
) -> Result<VolumeAdmissibility> {
    let quad = BulkQuadrature::enclosed(g, radial_order)?;
    let [c1, c2] = par_weighted_sums(&quad.nodes, &quad.weights, |x| {
        let j = eta.jacobian(x);
        let div = j.trace();
        [div, zeta.jacobian(x).trace() + div * div - (&j * &j).trace()]
    });
    let flux = surface_integral(g, |s| eta.eval(&s.point).dot(s.normal()));
    Ok(VolumeAdmissibility { c1, c2, flux })
}

/// Both sides of `δ²E(Γ, η, ζ^η) = J(η·n)` for `η` the normal extension of `ξ`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PoincareCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `∫_Γ ξ`.
    pub mean: f64,
    /// `∫_Γ ξ²`.
    pub norm_sq: f64,
}

/// Requires `|∫_Γ ξ| ≤ 1e−10`.
pub fn constrained_poincare_check(
    g: Arc<dyn Hypersurface>,
    xi: SurfaceFunction,
    cutoff_width: f64,
) -> Result<PoincareCheck> {
    let mean = surface_integral(g.as_ref(), |s| xi.value(&s.point));
    if mean.abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("ξ must have zero mean on Γ, got ∫ξ = {mean:e}")));
    }
    let norm_sq = surface_integral(g.as_ref(), |s| xi.value(&s.point).powi(2));
    let rhs = jacobi_form(g.as_ref(), &xi)?;
    let eta: Arc<dyn VectorField> = Arc::new(NormalExtension::new(g.clone(), xi, cutoff_width)?);
    let zeta = ZetaEta::new(eta.clone());
    let lhs = area_second_inner_variation(g.as_ref(), eta.as_ref(), &zeta);
    Ok(PoincareCheck {
        lhs,
        rhs,
        mean,
        norm_sq,
    })
}

/// `η^ε = η + h(ε) φ_ref` with `∫ ∇u_ε·η^ε = 0`.
pub struct PerturbedField {
    pub h: f64,
    pub eta: Combination,
    /// `∫ ∇u_ε·η^ε` after the correction.
    pub residual: f64,
}

/// `h(ε) = −∫u div η / ∫u div φ = −∫∇u·η / ∫∇u·φ` for compactly supported
/// fields; the gradient form is integrated over `quad`, which must cover the
/// support of `∇u`.
pub fn perturbed_field(
    g: &dyn Hypersurface,
    u: &dyn ScalarField,
    eta: Arc<dyn VectorField>,
    phi_ref: Arc<dyn VectorField>,
    quad: &BulkQuadrature,
) -> Result<PerturbedField> {
    let ref_flux = surface_integral(g, |s| phi_ref.eval(&s.point).dot(s.normal()));
    if ref_flux.abs() < 1e-6 {
        return Err(Error::DegenerateReference(format!(
            "reference field has zero flux through Γ ({ref_flux:e})"
        )));
    }
    let eta_flux = surface_integral(g, |s| eta.eval(&s.point).dot(s.normal()));
    let scale = surface_integral(g, |s| eta.eval(&s.point).norm());
    if eta_flux.abs() > 1e-8 * (1.0 + scale) {
        return Err(Error::InvalidArgument(format!("η must have zero flux through Γ, got {eta_flux:e}")));
    }
    let pair = |v: &dyn VectorField| par_weighted_sum(&quad.nodes, &quad.weights, |x| u.gradient(x).dot(&v.eval(x)));
    let den = pair(phi_ref.as_ref());
    if den.abs() < 1e-8 {
        return Err(Error::DegenerateReference(format!("∫u div φ_ref = {den:e} is too small")));
    }
    let num = pair(eta.as_ref());
    let h = -num / den;
    let combined = Combination {
        terms: vec![(1.0, eta), (h, phi_ref)],
    };
    let residual = pair(&combined);
    Ok(PerturbedField {
        h,
        eta: combined,
        residual,
    })
}

/// Allen-Cahn quadratic forms along `−∇u_ε·V`, `V` the normal extension of `ξ`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct QuadraticForms {
    /// Values `Q_ε(−∇u_ε·V)`; residuals `[Q_ε, dE_ε(u_ε, X₀)]`.
    pub raw: ConvergenceRecord,
    /// Values `Q_ε(−∇u_ε·V) + dE_ε(u_ε, X₀)` with `X₀` built from `(V, ζ^V)`.
    /// The ansatz is not critical, so only this form carries the limit;
    /// residuals `[δ²E_ε(u_ε, V, ζ^V), corrected − δ²E_ε]`.
    pub corrected: ConvergenceRecord,
    /// `Q(ξ) = ∫_Γ |∇_Γξ|² − |A|²ξ²`.
    pub limit_form: f64,
    pub c2: f64,
}

/// Sweep the p = 2 quadratic forms against `c₂ Q(ξ)`.
pub fn quadratic_forms(
    g: Arc<dyn Hypersurface>,
    xi: SurfaceFunction,
    cutoff_width: f64,
    sched: &EpsilonSchedule,
    opts: &TubeOptions,
) -> Result<QuadraticForms> {
    let limit_form = quadratic_form_limit(g.as_ref(), &xi)?;
    let c2 = c_p(2.0);
    let v: Arc<dyn VectorField> = Arc::new(NormalExtension::new(g.clone(), xi, cutoff_width)?);
    let zeta = ZetaEta::new(v.clone());
    let table = Arc::new(optimal_profile(2.0)?);
    if 2.0 * sched.largest() * table.s_max() > cutoff_width {
        return Err(Error::EpsilonTooLarge {
            eps: sched.largest(),
            layer: sched.largest() * table.s_max(),
            limit: cutoff_width / 2.0,
        });
    }
    let points = sched.sweep(|eps| {
        let (u, quad) = ansatz_and_tube(&g, &table, eps, opts)?;
        let f = PAllenCahn::new(eps, 2.0)?;
        let e = VariationEngine::new(&f, &quad);
        let us: &dyn StateField = &u;
        let q = e.second_variation(us, &DirectionalField { u: us, eta: v.as_ref() })?;
        let x0 = X0Field {
            u: us,
            eta: v.as_ref(),
            zeta: &zeta,
        };
        // X₀ vanishes with ∇u at the edge of the layer, so the strong form
        // applies and avoids differentiating X₀
        let lagrange = e.euler_lagrange_pairing(us, &x0)?;
        let inner = e.second_inner_variation(us, v.as_ref(), &zeta)?;
        Ok((q, lagrange, inner))
    })?;
    let eps = sched.epsilons().to_vec();
    let model = sched.model().as_ref();
    let target = c2 * limit_form;
    let raw = ConvergenceRecord::new(
        format!("forms-raw {}", g.label()),
        model,
        eps.clone(),
        points.iter().map(|p| p.0).collect(),
        points.iter().map(|p| [p.0, p.1]).collect(),
        target,
    );
    let corrected = ConvergenceRecord::new(
        format!("forms-corrected {}", g.label()),
        model,
        eps,
        points.iter().map(|p| p.0 + p.1).collect(),
        points.iter().map(|p| [p.2, p.0 + p.1 - p.2]).collect(),
        target,
    );
    Ok(QuadraticForms {
        raw,
        corrected,
        limit_form,
        c2,
    })
}
