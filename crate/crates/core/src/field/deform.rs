use std::sync::Arc;

use super::VectorField;
use crate::{Error, Matrix, Result, Vector};

const NEWTON_MAX_ITERS: usize = 50;

/// `Φ_t(x) = x + t·η(x) + t²/2·ζ(x)`.
#[derive(Clone)]
pub struct DeformationMap {
    pub eta: Arc<dyn VectorField>,
    pub zeta: Arc<dyn VectorField>,
    pub t: f64,
}

impl DeformationMap {
    pub fn new(eta: Arc<dyn VectorField>, zeta: Arc<dyn VectorField>, t: f64) -> Result<Self> {
        if eta.dim() != zeta.dim() {
            return Err(Error::DimensionMismatch(format!(
                "velocity has dimension {}, acceleration {}",
                eta.dim(),
                zeta.dim()
            )));
        }
        Ok(Self { eta, zeta, t })
    }

    pub fn deform(&self, x: &Vector) -> Vector {
        let t = self.t;
        x + self.eta.eval(x) * t + self.zeta.eval(x) * (0.5 * t * t)
    }

    pub fn jacobian(&self, x: &Vector) -> Matrix {
        let t = self.t;
        let n = x.len();
        Matrix::identity(n, n) + self.eta.jacobian(x) * t + self.zeta.jacobian(x) * (0.5 * t * t)
    }

    /// Solve `Φ_t(x) = y` by damped Newton from `x₀ = y − t·η(y)`.
    pub fn invert(&self, y: &Vector) -> Result<Vector> {
        let tol = 1e-14 * y.norm().max(1.0);
        let mut x = y - self.eta.eval(y) * self.t;
        let mut r = self.deform(&x) - y;
        let mut rn = r.norm();
        for _ in 0..NEWTON_MAX_ITERS {
            if rn <= tol {
                return Ok(x);
            }
            let dx = self.jacobian(&x).lu().solve(&r).ok_or_else(|| Error::NonInvertible {
                t: self.t,
                detail: "singular jacobian during Newton inversion".into(),
            })?;
            let mut step = 1.0;
            loop {
                let cand = &x - &dx * step;
                let rc = self.deform(&cand) - y;
                let rcn = rc.norm();
                if rcn < rn || step < 1e-6 {
                    x = cand;
                    r = rc;
                    rn = rcn;
                    break;
                }
                step *= 0.5;
            }
        }
        if rn <= 1e-12 {
            return Ok(x);
        }
        Err(Error::NonInvertible {
            t: self.t,
            detail: format!("Newton residual {rn:e} after {NEWTON_MAX_ITERS} iterations"),
        })
    }

    /// Largest `|t|` for which `‖t∇η + t²/2∇ζ‖_F ≤ ½` at every sample point,
    /// which keeps `det ∇Φ_t > 0` there.
    pub fn safe_t_bound(eta: &dyn VectorField, zeta: &dyn VectorField, samples: &[Vector]) -> f64 {
        let mut a = 0.0f64;
        let mut b = 0.0f64;
        for x in samples {
            a = a.max(eta.jacobian(x).norm());
            b = b.max(zeta.jacobian(x).norm());
        }
        if b == 0.0 {
            return if a == 0.0 { f64::INFINITY } else { 0.5 / a };
        }
        // positive root of (b/2) t² + a t − ½ = 0
        (-a + (a * a + b).sqrt()) / b
    }
}
