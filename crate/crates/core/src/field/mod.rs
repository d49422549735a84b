//! Scalar and vector fields on R^N, the deformation map `Φ_t`, and the
//! acceleration fields derived from a velocity `η`.
//!
//! Derivative conventions: a vector field's jacobian is `J[(i, j)] = ∂η^i/∂x_j`
//! and its second derivatives are `T[i][(j, k)] = ∂²η^i/∂x_j∂x_k`. The
//! jacobian of a state field `u: R^N → R^m` is the `m × N` matrix `∂u^a/∂x_j`.

mod builders;
mod deform;
mod ops;
pub mod random;

use std::sync::Arc;

use crate::numerics::central_step;
use crate::{Matrix, Vector};

pub use builders::{
    Combination, Component, Cutoff, FdSecondDerivatives, LinearField, LinearScalar, Monomial, Polynomial,
    SphericalHarmonic, Sum, TrigTerm, Trigonometric, VectorComponents, ZeroField,
};
pub use deform::DeformationMap;
pub(crate) use ops::fd_hessians;
pub use ops::{
    det_expansion, divergence, good_identity_residual, x0_value, DirectionalField, ScalarX0, X0Field,
    ZetaEta,
};

/// Axis-aligned box `lo ≤ x ≤ hi` outside of which a field vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundingBox {
    pub fn contains(&self, x: &Vector) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// Smallest box containing both.
    pub fn union(&self, other: &BoundingBox) -> BoundingBox {
        BoundingBox {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.min(*b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.max(*b)).collect(),
        }
    }
}

/// Second derivatives of a vector field: `T[i][(j, k)] = ∂²η^i/∂x_j∂x_k`.
pub type SecondDerivatives = Vec<Matrix>;

/// A smooth real-valued field. Derivatives default to central differences.
pub trait ScalarField: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &Vector) -> f64;

    fn gradient(&self, x: &Vector) -> Vector {
        let h = central_step(x.norm());
        Vector::from_fn(x.len(), |j, _| {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            (self.eval(&xp) - self.eval(&xm)) / (2.0 * h)
        })
    }

    fn hessian(&self, x: &Vector) -> Matrix {
        let n = x.len();
        let h = central_step(x.norm());
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += h;
            xm[k] -= h;
            let d = (self.gradient(&xp) - self.gradient(&xm)) / (2.0 * h);
            m.set_column(k, &d);
        }
        symmetrize(m)
    }

    fn support(&self) -> Option<BoundingBox> {
        None
    }
}

/// A smooth map R^N → R^N. Derivatives default to central differences.
pub trait VectorField: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &Vector) -> Vector;

    fn jacobian(&self, x: &Vector) -> Matrix {
        let n = x.len();
        let h = central_step(x.norm());
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            m.set_column(j, &((self.eval(&xp) - self.eval(&xm)) / (2.0 * h)));
        }
        m
    }

    fn second_derivatives(&self, x: &Vector) -> SecondDerivatives {
        let n = x.len();
        let h = central_step(x.norm());
        let mut t = vec![Matrix::zeros(n, n); n];
        for k in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += h;
            xm[k] -= h;
            let d = (self.jacobian(&xp) - self.jacobian(&xm)) / (2.0 * h);
            for (i, ti) in t.iter_mut().enumerate() {
                for j in 0..n {
                    ti[(j, k)] = d[(i, j)];
                }
            }
        }
        t.into_iter().map(symmetrize).collect()
    }

    fn support(&self) -> Option<BoundingBox> {
        None
    }

    fn is_compactly_supported(&self) -> bool {
        self.support().is_some()
    }
}

/// A state `u: R^N → R^m` (m = 1 real, m = 2 complex) as seen by the
/// variation engine. Every [`ScalarField`] is a state field with `m = 1`.
pub trait StateField: Send + Sync {
    fn domain_dim(&self) -> usize;
    fn state_dim(&self) -> usize;
    fn state(&self, x: &Vector) -> Vector;
    /// `m × N` matrix `∂u^a/∂x_j`.
    fn state_jacobian(&self, x: &Vector) -> Matrix;
    /// One `N × N` Hessian per state component.
    fn state_hessians(&self, x: &Vector) -> Vec<Matrix>;
}

impl<S: ScalarField + ?Sized> StateField for S {
    fn domain_dim(&self) -> usize {
        self.dim()
    }

    fn state_dim(&self) -> usize {
        1
    }

    fn state(&self, x: &Vector) -> Vector {
        Vector::from_element(1, self.eval(x))
    }

    fn state_jacobian(&self, x: &Vector) -> Matrix {
        row_matrix(&self.gradient(x))
    }

    fn state_hessians(&self, x: &Vector) -> Vec<Matrix> {
        vec![self.hessian(x)]
    }
}

impl<T: ScalarField + ?Sized> ScalarField for Arc<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &Vector) -> f64 {
        (**self).eval(x)
    }
    fn gradient(&self, x: &Vector) -> Vector {
        (**self).gradient(x)
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        (**self).hessian(x)
    }
    fn support(&self) -> Option<BoundingBox> {
        (**self).support()
    }
}

impl<T: VectorField + ?Sized> VectorField for Arc<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, x: &Vector) -> Vector {
        (**self).eval(x)
    }
    fn jacobian(&self, x: &Vector) -> Matrix {
        (**self).jacobian(x)
    }
    fn second_derivatives(&self, x: &Vector) -> SecondDerivatives {
        (**self).second_derivatives(x)
    }
    fn support(&self) -> Option<BoundingBox> {
        (**self).support()
    }
}

pub(crate) fn symmetrize(m: Matrix) -> Matrix {
    let t = m.transpose();
    (m + t) * 0.5
}

/// `1 × N` matrix holding `v` as its only row.
pub fn row_matrix(v: &Vector) -> Matrix {
    Matrix::from_row_slice(1, v.len(), v.as_slice())
}

/// A vector field read as a state `u: R^N → R^N` (e.g. a complex-valued
/// order parameter on a planar domain).
#[derive(Clone)]
pub struct VectorState(pub Arc<dyn VectorField>);

impl StateField for VectorState {
    fn domain_dim(&self) -> usize {
        self.0.dim()
    }
    fn state_dim(&self) -> usize {
        self.0.dim()
    }
    fn state(&self, x: &Vector) -> Vector {
        self.0.eval(x)
    }
    fn state_jacobian(&self, x: &Vector) -> Matrix {
        self.0.jacobian(x)
    }
    fn state_hessians(&self, x: &Vector) -> Vec<Matrix> {
        self.0.second_derivatives(x)
    }
}

/// A state whose components are independent scalar fields on a common domain.
#[derive(Clone)]
pub struct StateComponents(pub Vec<Component>);

impl StateField for StateComponents {
    fn domain_dim(&self) -> usize {
        self.0.first().map_or(0, |c| c.dim())
    }
    fn state_dim(&self) -> usize {
        self.0.len()
    }
    fn state(&self, x: &Vector) -> Vector {
        Vector::from_iterator(self.0.len(), self.0.iter().map(|c| c.eval(x)))
    }
    fn state_jacobian(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.0.len(), x.len());
        for (a, c) in self.0.iter().enumerate() {
            m.set_row(a, &c.gradient(x).transpose());
        }
        m
    }
    fn state_hessians(&self, x: &Vector) -> Vec<Matrix> {
        self.0.iter().map(|c| c.hessian(x)).collect()
    }
}
