use std::sync::Arc;

use crate::field::{ScalarField, StateField, VectorField};
use crate::geometry::{ac_discrepancy, area_second_inner_variation, surface_integral, Hypersurface};
use crate::numerics::par_weighted_sums;
use crate::profiles::{ansatz_field, c_p, optimal_profile, DoubleWell, LevelSet, ProfileAnsatz, ProfileTable};
use crate::variation::{BulkQuadrature, PAllenCahn, VariationEngine, P_FLOOR};
use crate::{Error, Result};

use super::sweep::{power_rate, ConvergenceRecord, EpsilonSchedule};

/// Discretization of the tube around a hypersurface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeOptions {
    /// Gauss points per transverse panel.
    pub transverse_order: usize,
    pub level: LevelSet,
}

impl Default for TubeOptions {
    fn default() -> Self {
        Self {
            transverse_order: 10,
            level: LevelSet::SignedDistance,
        }
    }
}

/// Ansatz and a tube quadrature covering its transition layer.
pub(crate) fn ansatz_and_tube(
    g: &Arc<dyn Hypersurface>,
    table: &Arc<ProfileTable>,
    eps: f64,
    opts: &TubeOptions,
) -> Result<(ProfileAnsatz, BulkQuadrature)> {
    let u = ansatz_field(g.clone(), table.clone(), eps, opts.level)?;
    // the quadratic level set stretches the layer on the concave side
    let factor = match opts.level {
        LevelSet::SignedDistance => 1.0,
        LevelSet::Quadratic => 2.0,
    };
    let quad = BulkQuadrature::tube(g.as_ref(), factor * eps * table.s_max(), eps, opts.transverse_order)?;
    Ok((u, quad))
}

/// The p-Allen-Cahn second inner variation sweep and its limit.
#[derive(Clone, Debug, serde::Serialize)]
pub struct AcLimit {
    /// Values are `δ²E_{ε,p}`; residuals are `[δE_{ε,p}, δ²E − oracle]`.
    pub record: ConvergenceRecord,
    pub p: f64,
    pub c_p: f64,
    /// `δ²E(Γ, η, ζ)`.
    pub surface_variation: f64,
    /// `∫_Γ (n, n·∇η)²`.
    pub discrepancy: f64,
}

/// Sweep `δ²E_{ε,p}(u_ε, η, ζ)` over the schedule with the optimal-profile
/// ansatz, against `c_p{δ²E(Γ,η,ζ) + (p−1)∫_Γ(n, n·∇η)²}`.
pub fn ac_limit_experiment(
    g: Arc<dyn Hypersurface>,
    eta: Arc<dyn VectorField>,
    zeta: Arc<dyn VectorField>,
    p: f64,
    sched: &EpsilonSchedule,
    opts: &TubeOptions,
) -> Result<AcLimit> {
    let table = Arc::new(optimal_profile(p)?);
    let cp = c_p(p);
    let surface_variation = area_second_inner_variation(g.as_ref(), eta.as_ref(), zeta.as_ref());
    let discrepancy = ac_discrepancy(g.as_ref(), eta.as_ref());
    let target = cp * (surface_variation + (p - 1.0) * discrepancy);
    let points = sched.sweep(|eps| {
        let (u, quad) = ansatz_and_tube(&g, &table, eps, opts)?;
        let f = PAllenCahn::new(eps, p)?;
        let e = VariationEngine::new(&f, &quad);
        let second = e.second_inner_variation(&u, eta.as_ref(), zeta.as_ref())?;
        let first = e.first_inner_variation(&u, eta.as_ref())?;
        let oracle = e.inner_variation_oracle(&u, eta.as_ref(), zeta.as_ref(), None)?;
        Ok((second, [first, second - oracle.second]))
    })?;
    let (values, residuals) = points.into_iter().unzip();
    let record = ConvergenceRecord::new(
        format!("ac-limit {} p={p}", g.label()),
        sched.model().as_ref(),
        sched.epsilons().to_vec(),
        values,
        residuals,
        target,
    );
    Ok(AcLimit {
        record,
        p,
        c_p: cp,
        surface_variation,
        discrepancy,
    })
}

/// L¹ equipartition residuals of the ansatz.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Equipartition {
    /// `∫|ε^{p−1}|∇u|^p − W(u)/ε|`, target 0; `rate` is the power-law slope.
    pub ab: ConvergenceRecord,
    /// `∫|ε^{p−1}|∇u|^p − |∇Φ(u)||`, target 0.
    pub abphi: ConvergenceRecord,
}

/// Equipartition residuals for `u_ε = q(φ/ε)`. `stretch ≠ 1` replaces the
/// optimal profile by `q(k s)` (a negative control).
pub fn equipartition_residuals(
    g: Arc<dyn Hypersurface>,
    p: f64,
    sched: &EpsilonSchedule,
    stretch: f64,
    opts: &TubeOptions,
) -> Result<Equipartition> {
    let table = Arc::new(optimal_profile(p)?.stretched(stretch));
    let well = DoubleWell;
    let points = sched.sweep(|eps| {
        let (u, quad) = ansatz_and_tube(&g, &table, eps, opts)?;
        let [ab, abphi] = par_weighted_sums(&quad.nodes, &quad.weights, |x| {
            let z = u.eval(x);
            let grad = u.gradient(x).norm();
            let kinetic = eps.powf(p - 1.0) * grad.powf(p);
            let phi = well.primitive_derivative(z, p) * grad;
            [(kinetic - well.w(z) / eps).abs(), (kinetic - phi).abs()]
        });
        Ok([ab, abphi])
    })?;
    let eps = sched.epsilons().to_vec();
    let model = sched.model().as_ref();
    let mut ab = ConvergenceRecord::new(
        format!("equipartition-ab {}", g.label()),
        model,
        eps.clone(),
        points.iter().map(|r| r[0]).collect(),
        points.clone(),
        0.0,
    );
    ab.rate = power_rate(&ab.epsilons, &ab.values);
    let mut abphi = ConvergenceRecord::new(
        format!("equipartition-abphi {}", g.label()),
        model,
        eps,
        points.iter().map(|r| r[1]).collect(),
        points,
        0.0,
    );
    abphi.rate = power_rate(&abphi.epsilons, &abphi.values);
    Ok(Equipartition { ab, abphi })
}

/// Bulk pairing of the 2- or 4-tensor built from `∇u_ε` with a test function.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TensorPairing {
    /// Zero-based coordinate indices.
    pub indices: Vec<usize>,
    /// Values are the bulk pairings; residuals `[pairing, pairing with the
    /// indices reversed]`.
    pub record: ConvergenceRecord,
}

/// `∫ ε^{p−1}|∇u|^{p−k} Π ∂_{i}u · φ`, `k = len(indices) ∈ {2, 4}`, against
/// `c_p ∫_Γ Π n_i φ`.
pub fn tensor_pairing_experiment(
    g: Arc<dyn Hypersurface>,
    p: f64,
    phi: Arc<dyn ScalarField>,
    indices: &[usize],
    sched: &EpsilonSchedule,
    opts: &TubeOptions,
) -> Result<TensorPairing> {
    let k = indices.len();
    if k != 2 && k != 4 {
        return Err(Error::InvalidArgument(format!("tensor pairings take 2 or 4 indices, got {k}")));
    }
    let n = g.ambient_dim();
    if indices.iter().any(|i| *i >= n) {
        return Err(Error::DimensionMismatch(format!("tensor index out of range for R^{n}")));
    }
    let table = Arc::new(optimal_profile(p)?);
    let cp = c_p(p);
    let target = cp * surface_integral(g.as_ref(), |s| {
        let nn = s.normal();
        indices.iter().map(|i| nn[*i]).product::<f64>() * phi.eval(&s.point)
    });
    let reversed: Vec<usize> = indices.iter().rev().copied().collect();
    let points = sched.sweep(|eps| {
        let (u, quad) = ansatz_and_tube(&g, &table, eps, opts)?;
        let scale = eps.powf(p - 1.0);
        let [a, b] = par_weighted_sums(&quad.nodes, &quad.weights, |x| {
            let grad = u.gradient(x);
            let norm = grad.norm();
            if norm < P_FLOOR {
                return [0.0; 2];
            }
            let w = scale * norm.powf(p - k as f64) * phi.eval(x);
            [
                w * indices.iter().map(|i| grad[*i]).product::<f64>(),
                w * reversed.iter().map(|i| grad[*i]).product::<f64>(),
            ]
        });
        Ok((a, [a, b]))
    })?;
    let (values, residuals) = points.into_iter().unzip();
    let record = ConvergenceRecord::new(
        format!("tensor{indices:?} {} p={p}", g.label()),
        sched.model().as_ref(),
        sched.epsilons().to_vec(),
        values,
        residuals,
        target,
    );
    Ok(TensorPairing {
        indices: indices.to_vec(),
        record,
    })
}

/// `E_{ε,p}(u_ε)` on the tube, for energy-convergence checks.
pub fn ansatz_energy(g: &Arc<dyn Hypersurface>, p: f64, eps: f64, opts: &TubeOptions) -> Result<f64> {
    let table = Arc::new(optimal_profile(p)?);
    let (u, quad) = ansatz_and_tube(g, &table, eps, opts)?;
    let f = PAllenCahn::new(eps, p)?;
    VariationEngine::new(&f, &quad).energy(&u as &dyn StateField)
}
