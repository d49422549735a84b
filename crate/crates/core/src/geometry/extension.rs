use std::sync::Arc;

use super::{Hypersurface, SurfaceFunction};
use crate::field::{BoundingBox, VectorField};
use crate::{Error, Matrix, Result, Vector};

fn bump(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

fn bump_prime(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        bump(x) / (x * x)
    }
}

/// C^∞ cutoff `χ(d)`: 1 for `|d| ≤ w/2`, 0 for `|d| ≥ w`. Returns `(χ, χ')`.
pub fn smooth_cutoff(d: f64, width: f64) -> (f64, f64) {
    let half = 0.5 * width;
    let a = d.abs();
    if a <= half {
        return (1.0, 0.0);
    }
    if a >= width {
        return (0.0, 0.0);
    }
    let s = (a - half) / half;
    let (p, q) = (bump(1.0 - s), bump(s));
    let (dp, dq) = (-bump_prime(1.0 - s), bump_prime(s));
    let den = p + q;
    let value = p / den;
    let ds = (dp * q - p * dq) / (den * den);
    (value, ds * d.signum() / half)
}

/// `η(x) = ξ(π(x))·n(π(x))·χ(d(x))`: constant along normals near Γ, so
/// `(n, n·∇η) = 0` on Γ.
pub struct NormalExtension {
    surface: Arc<dyn Hypersurface>,
    xi: SurfaceFunction,
    width: f64,
}

impl NormalExtension {
    pub fn new(surface: Arc<dyn Hypersurface>, xi: SurfaceFunction, cutoff_width: f64) -> Result<Self> {
        let focal = surface.focal_distance();
        if !(cutoff_width > 0.0) || cutoff_width > focal {
            return Err(Error::TubeTooNarrow { width: cutoff_width, focal });
        }
        Ok(Self {
            surface,
            xi,
            width: cutoff_width,
        })
    }

    pub fn surface_function(&self) -> &SurfaceFunction {
        &self.xi
    }
}

impl VectorField for NormalExtension {
    fn dim(&self) -> usize {
        self.surface.ambient_dim()
    }

    fn eval(&self, x: &Vector) -> Vector {
        let d = self.surface.signed_distance(x);
        let (chi, _) = smooth_cutoff(d, self.width);
        if chi == 0.0 {
            return Vector::zeros(x.len());
        }
        let y = self.surface.closest_point(x);
        self.surface.distance_gradient(x) * (self.xi.value(&y) * chi)
    }

    fn jacobian(&self, x: &Vector) -> Matrix {
        let d = self.surface.signed_distance(x);
        let (chi, dchi) = smooth_cutoff(d, self.width);
        let n = x.len();
        if chi == 0.0 && dchi == 0.0 {
            return Matrix::zeros(n, n);
        }
        let y = self.surface.closest_point(x);
        let normal = self.surface.distance_gradient(x);
        let xi = self.xi.value(&y);
        // ∇(ξ∘π) = ∇πᵀ ∇ξ̃(π(x)); ∇π is symmetric
        let grad_xi = self.surface.projection_jacobian(x) * self.xi.field.gradient(&y);
        (&normal * grad_xi.transpose() + self.surface.distance_hessian(x) * xi) * chi
            + &normal * normal.transpose() * (xi * dchi)
    }

    fn support(&self) -> Option<BoundingBox> {
        let focal = self.surface.focal_distance();
        if focal.is_finite() && self.surface.is_closed() {
            // Round shapes: the tube sits inside the ball of radius R + w.
            let nodes = self.surface.nodes();
            let n = self.dim();
            let mut lo = vec![f64::INFINITY; n];
            let mut hi = vec![f64::NEG_INFINITY; n];
            for nd in nodes {
                for i in 0..n {
                    lo[i] = lo[i].min(nd.point[i]);
                    hi[i] = hi[i].max(nd.point[i]);
                }
            }
            let pad = self.width + focal * 0.1;
            Some(BoundingBox {
                lo: lo.iter().map(|v| v - pad).collect(),
                hi: hi.iter().map(|v| v + pad).collect(),
            })
        } else {
            None
        }
    }
}
