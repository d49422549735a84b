//! Differential operators on fields and the acceleration fields `ζ^η`, `X₀`.

use std::sync::Arc;

use super::{row_matrix, BoundingBox, ScalarField, SecondDerivatives, StateField, VectorField};
use crate::numerics::central_step;
use crate::{Matrix, Vector};

/// `div V(x) = trace ∇V(x)`.
pub fn divergence(v: &dyn VectorField, x: &Vector) -> f64 {
    v.jacobian(x).trace()
}

/// Coefficients `(c0, c1, c2)` with `det ∇Φ_t(x) = c0 + t·c1 + t²/2·c2 + O(t³)`.
pub fn det_expansion(eta: &dyn VectorField, zeta: &dyn VectorField, x: &Vector) -> [f64; 3] {
    let j = eta.jacobian(x);
    let div = j.trace();
    [1.0, div, zeta.jacobian(x).trace() + div * div - (&j * &j).trace()]
}

/// `(div η)² − tr((∇η)²) − div{(div η)η − (η·∇)η}` at `x`.
///
/// The divergence on the right is formed from the analytic jacobian of
/// `ζ^η = −(div η)η + (η·∇)η`, which uses the second derivatives of `η`.
pub fn good_identity_residual(eta: &dyn VectorField, x: &Vector) -> f64 {
    let j = eta.jacobian(x);
    let lhs = j.trace().powi(2) - (&j * &j).trace();
    let rhs = -zeta_eta_jacobian(&eta.eval(x), &j, &eta.second_derivatives(x)).trace();
    lhs - rhs
}

fn zeta_eta_jacobian(v: &Vector, j: &Matrix, t: &SecondDerivatives) -> Matrix {
    let n = v.len();
    let div = j.trace();
    let grad_div = Vector::from_fn(n, |k, _| (0..n).map(|i| t[i][(i, k)]).sum());
    let mut out = -(v * grad_div.transpose()) - j * div + j * j;
    for (i, ti) in t.iter().enumerate() {
        // Σ_j ∂_k J_ij η^j = (T[i] η)_k
        let row = ti * v;
        for k in 0..n {
            out[(i, k)] += row[k];
        }
    }
    out
}

/// `ζ^η = −(div η)η + (η·∇)η`, the acceleration that keeps enclosed volume
/// fixed to second order. Its jacobian uses `η`'s second derivatives; its own
/// second derivatives fall back to finite differences.
pub struct ZetaEta {
    eta: Arc<dyn VectorField>,
}

impl ZetaEta {
    pub fn new(eta: Arc<dyn VectorField>) -> Self {
        Self { eta }
    }
}

impl VectorField for ZetaEta {
    fn dim(&self) -> usize {
        self.eta.dim()
    }
    fn eval(&self, x: &Vector) -> Vector {
        let v = self.eta.eval(x);
        let j = self.eta.jacobian(x);
        &j * &v - &v * j.trace()
    }
    fn jacobian(&self, x: &Vector) -> Matrix {
        zeta_eta_jacobian(&self.eta.eval(x), &self.eta.jacobian(x), &self.eta.second_derivatives(x))
    }
    fn support(&self) -> Option<BoundingBox> {
        self.eta.support()
    }
}

/// Pointwise `X₀ = (D²u η, η) + (∇u, 2∇η η − ζ)`, one entry per state component.
pub fn x0_value(
    grad_u: &Matrix,
    hessians_u: &[Matrix],
    eta: &Vector,
    jac_eta: &Matrix,
    zeta: &Vector,
) -> Vector {
    let w = jac_eta * eta * 2.0 - zeta;
    Vector::from_fn(grad_u.nrows(), |a, _| {
        (&hessians_u[a] * eta).dot(eta) + grad_u.row(a).transpose().dot(&w)
    })
}

/// The second-order coefficient `X₀` of `u∘Φ_t^{-1} = u − t∇u·η + t²/2·X₀ + O(t³)`.
pub struct X0Field<'a> {
    pub u: &'a dyn StateField,
    pub eta: &'a dyn VectorField,
    pub zeta: &'a dyn VectorField,
}

impl StateField for X0Field<'_> {
    fn domain_dim(&self) -> usize {
        self.u.domain_dim()
    }
    fn state_dim(&self) -> usize {
        self.u.state_dim()
    }
    fn state(&self, x: &Vector) -> Vector {
        x0_value(
            &self.u.state_jacobian(x),
            &self.u.state_hessians(x),
            &self.eta.eval(x),
            &self.eta.jacobian(x),
            &self.zeta.eval(x),
        )
    }
    fn state_jacobian(&self, x: &Vector) -> Matrix {
        fd_jacobian(|y| self.state(y), self.state_dim(), x)
    }
    fn state_hessians(&self, x: &Vector) -> Vec<Matrix> {
        fd_hessians(|y| self.state_jacobian(y), self.state_dim(), x)
    }
}

/// Scalar `X₀` for a scalar state `u`.
pub struct ScalarX0 {
    pub u: Arc<dyn ScalarField>,
    pub eta: Arc<dyn VectorField>,
    pub zeta: Arc<dyn VectorField>,
}

impl ScalarField for ScalarX0 {
    fn dim(&self) -> usize {
        self.u.dim()
    }
    fn eval(&self, x: &Vector) -> f64 {
        x0_value(
            &row_matrix(&self.u.gradient(x)),
            &[self.u.hessian(x)],
            &self.eta.eval(x),
            &self.eta.jacobian(x),
            &self.zeta.eval(x),
        )[0]
    }
}

/// `−∇u·η`, the additive direction equivalent to the first inner variation.
pub struct DirectionalField<'a> {
    pub u: &'a dyn StateField,
    pub eta: &'a dyn VectorField,
}

impl StateField for DirectionalField<'_> {
    fn domain_dim(&self) -> usize {
        self.u.domain_dim()
    }
    fn state_dim(&self) -> usize {
        self.u.state_dim()
    }
    fn state(&self, x: &Vector) -> Vector {
        -(self.u.state_jacobian(x) * self.eta.eval(x))
    }
    fn state_jacobian(&self, x: &Vector) -> Matrix {
        let p = self.u.state_jacobian(x);
        let v = self.eta.eval(x);
        let j = self.eta.jacobian(x);
        let hs = self.u.state_hessians(x);
        let mut out = -(&p * &j);
        for (a, h) in hs.iter().enumerate() {
            let hv = h * &v;
            for k in 0..v.len() {
                out[(a, k)] -= hv[k];
            }
        }
        out
    }
    fn state_hessians(&self, x: &Vector) -> Vec<Matrix> {
        fd_hessians(|y| self.state_jacobian(y), self.state_dim(), x)
    }
}

pub(crate) fn fd_jacobian(f: impl Fn(&Vector) -> Vector, m: usize, x: &Vector) -> Matrix {
    let n = x.len();
    let h = central_step(x.norm());
    let mut out = Matrix::zeros(m, n);
    for j in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[j] += h;
        xm[j] -= h;
        out.set_column(j, &((f(&xp) - f(&xm)) / (2.0 * h)));
    }
    out
}

pub(crate) fn fd_hessians(jac: impl Fn(&Vector) -> Matrix, m: usize, x: &Vector) -> Vec<Matrix> {
    let n = x.len();
    let h = central_step(x.norm());
    let mut out = vec![Matrix::zeros(n, n); m];
    for k in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[k] += h;
        xm[k] -= h;
        let d = (jac(&xp) - jac(&xm)) / (2.0 * h);
        for (a, ha) in out.iter_mut().enumerate() {
            for j in 0..n {
                ha[(j, k)] = d[(a, j)];
            }
        }
    }
    out.into_iter().map(super::symmetrize).collect()
}
