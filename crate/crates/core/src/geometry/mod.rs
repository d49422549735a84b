//! Parametrized interfaces with surface quadrature, and the surface
//! functionals evaluated on them.
//!
//! A [`Hypersurface`] has codimension one, a unit normal `n` and principal
//! curvatures taken with respect to `n` (a sphere with outward normal has
//! `κ_i = 1/R`). A [`Filament`] has codimension two in R³ with an orthonormal
//! normal pair `(p, q)`.

mod extension;
mod functionals;
mod shapes;

use std::io::Write;

use crate::{Matrix, Vector};

pub use extension::{smooth_cutoff, NormalExtension};
pub use functionals::{
    ac_discrepancy, area_second_inner_variation, area_variation_density, gl_discrepancy,
    gl_discrepancy_density, jacobi_form, pushforward_area, quadratic_form_limit, surface_integral,
    GlDiscrepancy, SurfaceFunction,
};
pub use shapes::{Circle, CircularFilament, FlatPatch, Sphere, StraightFilament};

/// A quadrature node on an interface together with its local frame.
#[derive(Clone, Debug)]
pub struct SurfaceNode {
    pub point: Vector,
    pub weight: f64,
    /// Orthonormal tangent frame.
    pub tangents: Vec<Vector>,
    /// Orthonormal normal frame: `[n]` for hypersurfaces, `[p, q]` for filaments.
    pub normals: Vec<Vector>,
    /// Principal curvatures with respect to `normals[0]` (hypersurfaces only).
    pub curvatures: Vec<f64>,
    /// Mean curvature vector `Σ_i D_{τ_i} τ_i` (filaments; zero for hypersurfaces).
    pub curvature_vector: Vector,
}

impl SurfaceNode {
    pub fn normal(&self) -> &Vector {
        &self.normals[0]
    }

    /// Mean curvature `Σ κ_i`.
    pub fn mean_curvature(&self) -> f64 {
        self.curvatures.iter().sum()
    }

    /// `|A_Γ|² = Σ κ_i²`.
    pub fn second_fundamental_form_sq(&self) -> f64 {
        self.curvatures.iter().map(|k| k * k).sum()
    }

    /// Orthogonal projection of `v` onto the tangent space.
    pub fn tangential(&self, v: &Vector) -> Vector {
        let mut out = Vector::zeros(v.len());
        for t in &self.tangents {
            out += t * t.dot(v);
        }
        out
    }
}

/// An interface Γ ⊂ R^N with surface quadrature.
pub trait Interface: Send + Sync {
    fn label(&self) -> String;
    fn ambient_dim(&self) -> usize;
    fn codim(&self) -> usize;
    fn nodes(&self) -> &[SurfaceNode];
    /// Closed-form `H^{N−codim}(Γ)`.
    fn measure(&self) -> f64;
    /// `true` if Γ has no boundary (periodic patches count as closed).
    fn is_closed(&self) -> bool;
    /// Distance to the nearest focal point, `min 1/|κ_i|` (∞ when flat).
    fn focal_distance(&self) -> f64;
}

/// Codimension-one interface with analytic signed distance.
pub trait Hypersurface: Interface {
    /// Signed distance, positive on the side `n` points to.
    fn signed_distance(&self, x: &Vector) -> f64;
    /// `∇d(x) = n(π(x))`.
    fn distance_gradient(&self, x: &Vector) -> Vector;
    /// `∇²d(x)`.
    fn distance_hessian(&self, x: &Vector) -> Matrix;

    fn closest_point(&self, x: &Vector) -> Vector {
        x - self.distance_gradient(x) * self.signed_distance(x)
    }

    /// `∇π(x) = I − ∇d∇dᵀ − d∇²d`.
    fn projection_jacobian(&self, x: &Vector) -> Matrix {
        let n = x.len();
        let g = self.distance_gradient(x);
        Matrix::identity(n, n) - &g * g.transpose() - self.distance_hessian(x) * self.signed_distance(x)
    }

    /// Range of normal offsets `(t_min, t_max)` over which bulk tube
    /// quadrature is set up around Γ.
    fn normal_range(&self) -> (f64, f64);

    /// Quadrature for the enclosed region (disk or ball) with `radial_order`
    /// Gauss points in the radius, when Γ bounds one.
    fn enclosed_quadrature(&self, _radial_order: usize) -> Option<(Vec<Vector>, Vec<f64>)> {
        None
    }
}

/// Local transverse coordinates about a filament.
#[derive(Clone, Debug)]
pub struct Transverse {
    /// Offset along `p`.
    pub w: f64,
    /// Offset along `q`.
    pub v: f64,
    pub grad_w: Vector,
    pub grad_v: Vector,
}

/// Codimension-two interface in R³.
pub trait Filament: Interface {
    fn transverse(&self, x: &Vector) -> Transverse;
    /// Radius of the transverse disk used for bulk quadrature.
    fn tube_radius(&self) -> f64;
}

/// Write the quadrature nodes as CSV: coordinates, weight, first normal,
/// curvatures.
pub fn write_nodes_csv(g: &dyn Interface, mut out: impl Write) -> std::io::Result<()> {
    let n = g.ambient_dim();
    let k = g.nodes().first().map_or(0, |nd| nd.curvatures.len());
    let mut header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    header.push("weight".into());
    header.extend((1..=n).map(|i| format!("n{i}")));
    header.extend((1..=k).map(|i| format!("kappa{i}")));
    writeln!(out, "{}", header.join(","))?;
    for nd in g.nodes() {
        let mut row: Vec<String> = nd.point.iter().map(|v| format!("{v:.17e}")).collect();
        row.push(format!("{:.17e}", nd.weight));
        row.extend(nd.normals[0].iter().map(|v| format!("{v:.17e}")));
        row.extend(nd.curvatures.iter().map(|v| format!("{v:.17e}")));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
