//! Surface functionals: integrals over Γ, the second inner variation of
//! area, the two discrepancy integrals and the Jacobi form.

use std::sync::Arc;

use num_complex::Complex64;

use super::{Hypersurface, Interface, SurfaceNode};
use crate::field::{ScalarField, VectorField};
use crate::numerics::par_weighted_sum;
use crate::{Error, Matrix, Result, Vector};

/// A function on Γ given as the restriction of an ambient scalar field.
/// Only the tangential part of the ambient gradient is ever used.
#[derive(Clone)]
pub struct SurfaceFunction {
    pub field: Arc<dyn ScalarField>,
}

impl SurfaceFunction {
    pub fn new(field: Arc<dyn ScalarField>) -> Self {
        Self { field }
    }

    pub fn value(&self, y: &Vector) -> f64 {
        self.field.eval(y)
    }

    /// `∇_Γ f` at a node.
    pub fn tangential_gradient(&self, node: &SurfaceNode) -> Vector {
        node.tangential(&self.field.gradient(&node.point))
    }
}

/// `∫_Γ f dH^{N−codim}` by the interface's node rule.
pub fn surface_integral(g: &dyn Interface, f: impl Fn(&SurfaceNode) -> f64 + Sync) -> f64 {
    let weights: Vec<f64> = g.nodes().iter().map(|n| n.weight).collect();
    par_weighted_sum(g.nodes(), &weights, f)
}

/// Integrand of the second inner variation of area,
/// `div^Γζ + (div^Γη)² + Σ_i |(D_{τ_i}η)^⊥|² − Σ_{i,j} (τ_i·D_{τ_j}η)(τ_j·D_{τ_i}η)`,
/// for any number of tangent directions.
pub fn area_variation_density(tangents: &[Vector], j_eta: &Matrix, j_zeta: &Matrix) -> f64 {
    let d: Vec<Vector> = tangents.iter().map(|t| j_eta * t).collect();
    let k = tangents.len();
    // g[i][j] = τ_i · D_{τ_j} η
    let g = Matrix::from_fn(k, k, |i, j| tangents[i].dot(&d[j]));
    let div_zeta: f64 = tangents.iter().map(|t| t.dot(&(j_zeta * t))).sum();
    let div_eta = g.trace();
    let mut perp = 0.0;
    for (j, dj) in d.iter().enumerate() {
        let tangential: f64 = (0..k).map(|i| g[(i, j)] * g[(i, j)]).sum();
        perp += dj.norm_squared() - tangential;
    }
    let cross: f64 = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| g[(i, j)] * g[(j, i)])
        .sum();
    div_zeta + div_eta * div_eta + perp - cross
}

/// `δ²E(Γ, η, ζ)`: the second t-derivative of `H^{N−codim}(Φ_t(Γ))` at 0.
pub fn area_second_inner_variation(g: &dyn Interface, eta: &dyn VectorField, zeta: &dyn VectorField) -> f64 {
    surface_integral(g, |n| {
        area_variation_density(&n.tangents, &eta.jacobian(&n.point), &zeta.jacobian(&n.point))
    })
}

/// `H^{N−codim}(Φ_t(Γ))` via the Gram determinant of `∇Φ_t` on tangent vectors.
pub fn pushforward_area(g: &dyn Interface, eta: &dyn VectorField, zeta: &dyn VectorField, t: f64) -> f64 {
    surface_integral(g, |n| {
        let m = Matrix::identity(n.point.len(), n.point.len())
            + eta.jacobian(&n.point) * t
            + zeta.jacobian(&n.point) * (0.5 * t * t);
        let images: Vec<Vector> = n.tangents.iter().map(|tau| &m * tau).collect();
        let k = images.len();
        let gram = Matrix::from_fn(k, k, |i, j| images[i].dot(&images[j]));
        gram.determinant().max(0.0).sqrt()
    })
}

/// `∫_Γ (n, n·∇η)²` (without the `p − 1` factor).
pub fn ac_discrepancy(g: &dyn Hypersurface, eta: &dyn VectorField) -> f64 {
    surface_integral(g, |nd| {
        let n = nd.normal();
        n.dot(&(eta.jacobian(&nd.point) * n)).powi(2)
    })
}

/// Both forms of the GL discrepancy integral, plus the largest pointwise
/// disagreement between their densities.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct GlDiscrepancy {
    /// `∫ |D_⊥ η^⊥|² − 2 Jac_⊥ η^⊥`.
    pub real_form: f64,
    /// `∫ 4 |∂(η^⊥)^C / ∂z̄|²`.
    pub dbar_form: f64,
    pub max_pointwise_gap: f64,
}

/// Pointwise densities `(real, dbar)` of the GL discrepancy at a filament node.
pub fn gl_discrepancy_density(node: &SurfaceNode, j_eta: &Matrix) -> (f64, f64) {
    let (p, q) = (&node.normals[0], &node.normals[1]);
    // m[a][b] = ∂_b (η · a) for a, b ∈ {p, q}
    let m = |a: &Vector, b: &Vector| a.dot(&(j_eta * b));
    let (m11, m12, m21, m22) = (m(p, p), m(p, q), m(q, p), m(q, q));
    let d_perp_sq = m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
    let jac = m11 * m22 - m12 * m21;
    let real = d_perp_sq - 2.0 * jac;
    // f = η^p + i η^q as a function of z = w + i v; ∂/∂z̄ = ½(∂_w + i∂_v)
    let df_dw = Complex64::new(m11, m21);
    let df_dv = Complex64::new(m12, m22);
    let dbar = 0.5 * (df_dw + Complex64::i() * df_dv);
    (real, 4.0 * dbar.norm_sqr())
}

/// The GL discrepancy on a filament (codimension two).
pub fn gl_discrepancy(g: &dyn Interface, eta: &dyn VectorField) -> Result<GlDiscrepancy> {
    if g.codim() != 2 {
        return Err(Error::DimensionMismatch("GL discrepancy needs a codimension-two interface".into()));
    }
    let dens: Vec<(f64, f64)> = g
        .nodes()
        .iter()
        .map(|n| gl_discrepancy_density(n, &eta.jacobian(&n.point)))
        .collect();
    let weights: Vec<f64> = g.nodes().iter().map(|n| n.weight).collect();
    let real: Vec<f64> = dens.iter().zip(&weights).map(|(d, w)| w * d.0).collect();
    let dbar: Vec<f64> = dens.iter().zip(&weights).map(|(d, w)| w * d.1).collect();
    let gap = dens
        .iter()
        .map(|(a, b)| (a - b).abs() / (1.0 + a.abs()))
        .fold(0.0, f64::max);
    Ok(GlDiscrepancy {
        real_form: crate::numerics::pairwise_sum(&real),
        dbar_form: crate::numerics::pairwise_sum(&dbar),
        max_pointwise_gap: gap,
    })
}

/// `J(ξ) = ∫_Γ |∇_Γξ|² − |A_Γ|² ξ²` on a closed hypersurface.
pub fn jacobi_form(g: &dyn Hypersurface, xi: &SurfaceFunction) -> Result<f64> {
    if !g.is_closed() {
        return Err(Error::UnsupportedBoundary("the Jacobi form"));
    }
    Ok(surface_integral(g, |n| {
        let v = xi.value(&n.point);
        xi.tangential_gradient(n).norm_squared() - n.second_fundamental_form_sq() * v * v
    }))
}

/// The limit quadratic form `Q(φ) = ∫_Γ |∇^Γφ|² − |A|²φ²`; on closed
/// interfaces it coincides with [`jacobi_form`].
pub fn quadratic_form_limit(g: &dyn Hypersurface, f: &SurfaceFunction) -> Result<f64> {
    jacobi_form(g, f)
}
