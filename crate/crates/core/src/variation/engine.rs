use crate::field::{BoundingBox, DirectionalField, StateField, VectorField, X0Field};
use crate::numerics::{five_point_first, five_point_second, par_weighted_sum, par_weighted_sums};
use crate::{Error, Matrix, Result, Vector};

use super::integrand::{flat, Integrand};
use super::quadrature::BulkQuadrature;

/// Closed-form variations of `A(u) = ∫ F(u, ∇u)` on a fixed quadrature.
pub struct VariationEngine<'a> {
    pub integrand: &'a dyn Integrand,
    pub quadrature: &'a BulkQuadrature,
}

/// The four integrals making up `δ²A`.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize)]
pub struct SecondInnerTerms {
    /// `∫ F X`.
    pub fx: f64,
    /// `−2∫ ⟨F_P, ∇u·∇η⟩ div η`.
    pub divergence: f64,
    /// `−2∫ ⟨F_P, Y⟩`.
    pub acceleration: f64,
    /// `∫ F_PP[∇u·∇η, ∇u·∇η]`.
    pub hessian: f64,
}

impl SecondInnerTerms {
    pub fn total(&self) -> f64 {
        self.fx + self.divergence + self.acceleration + self.hessian
    }
}

/// Finite-difference estimates of `t ↦ A(u∘Φ_t⁻¹)` at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct OracleValues {
    pub first: f64,
    pub second: f64,
    pub step: f64,
}

/// The two sides of `δ²A = d²A(u, −∇u·η) + dA(u, X₀)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct SvRelation {
    pub second_inner: f64,
    pub second_variation: f64,
    pub first_variation_x0: f64,
    pub residual: f64,
}

fn frob(a: &Matrix, b: &Matrix) -> f64 {
    a.component_mul(b).sum()
}

fn outside(x: &Vector, boxes: &[Option<BoundingBox>]) -> bool {
    boxes.iter().all(|b| matches!(b, Some(b) if !b.contains(x)))
}

impl<'a> VariationEngine<'a> {
    pub fn new(integrand: &'a dyn Integrand, quadrature: &'a BulkQuadrature) -> Self {
        Self { integrand, quadrature }
    }

    fn check_state(&self, u: &dyn StateField) -> Result<()> {
        if u.state_dim() != self.integrand.state_dim() {
            return Err(Error::DimensionMismatch(format!(
                "state has {} components, integrand `{}` expects {}",
                u.state_dim(),
                self.integrand.label(),
                self.integrand.state_dim()
            )));
        }
        if u.domain_dim() != self.quadrature.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state lives in R^{}, quadrature in R^{}",
                u.domain_dim(),
                self.quadrature.dim()
            )));
        }
        Ok(())
    }

    fn check_vector(&self, v: &dyn VectorField) -> Result<()> {
        if v.dim() != self.quadrature.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector field lives in R^{}, quadrature in R^{}",
                v.dim(),
                self.quadrature.dim()
            )));
        }
        Ok(())
    }

    fn check_direction(&self, u: &dyn StateField, phi: &dyn StateField) -> Result<()> {
        self.check_state(u)?;
        if phi.state_dim() != u.state_dim() || phi.domain_dim() != u.domain_dim() {
            return Err(Error::DimensionMismatch("direction and state shapes differ".into()));
        }
        Ok(())
    }

    fn sum(&self, f: impl Fn(&Vector) -> f64 + Sync) -> f64 {
        par_weighted_sum(&self.quadrature.nodes, &self.quadrature.weights, f)
    }

    /// `A(u) = ∫ F(u, ∇u)`.
    pub fn energy(&self, u: &dyn StateField) -> Result<f64> {
        self.check_state(u)?;
        Ok(self.sum(|x| self.integrand.value(&u.state(x), &u.state_jacobian(x))))
    }

    /// `dA(u, φ) = ∫ F_z·φ + ⟨F_P, ∇φ⟩`.
    pub fn first_variation(&self, u: &dyn StateField, phi: &dyn StateField) -> Result<f64> {
        self.check_direction(u, phi)?;
        Ok(self.sum(|x| {
            let d = self.integrand.partials(&u.state(x), &u.state_jacobian(x));
            d.f_z.dot(&phi.state(x)) + frob(&d.f_p, &phi.state_jacobian(x))
        }))
    }

    /// `∫ (F_z − div F_P(u, ∇u))·φ`, the first variation after integrating by
    /// parts. Equals [`Self::first_variation`] when `φ` vanishes on the
    /// boundary of the quadrature region, and needs `φ` only pointwise.
    pub fn euler_lagrange_pairing(&self, u: &dyn StateField, phi: &dyn StateField) -> Result<f64> {
        self.check_direction(u, phi)?;
        let n = self.quadrature.dim();
        let m = u.state_dim();
        Ok(self.sum(|x| {
            let v = phi.state(x);
            if v.iter().all(|c| *c == 0.0) {
                return 0.0;
            }
            let p = u.state_jacobian(x);
            let hs = u.state_hessians(x);
            let d = self.integrand.partials(&u.state(x), &p);
            let mut total = 0.0;
            for a in 0..m {
                let mut div = 0.0;
                for i in 0..n {
                    let row = a * n + i;
                    for b in 0..m {
                        div += d.f_zp[(b, row)] * p[(b, i)];
                        for j in 0..n {
                            div += d.f_pp[(row, b * n + j)] * hs[b][(i, j)];
                        }
                    }
                }
                total += (d.f_z[a] - div) * v[a];
            }
            total
        }))
    }

    /// `d²A(u, φ) = ∫ φᵀF_zzφ + 2φᵀF_zP∇φ + F_PP[∇φ, ∇φ]`.
    pub fn second_variation(&self, u: &dyn StateField, phi: &dyn StateField) -> Result<f64> {
        self.check_direction(u, phi)?;
        Ok(self.sum(|x| {
            let d = self.integrand.partials(&u.state(x), &u.state_jacobian(x));
            let v = phi.state(x);
            let g = flat(&phi.state_jacobian(x));
            v.dot(&(&d.f_zz * &v)) + 2.0 * v.dot(&(&d.f_zp * &g)) + g.dot(&(&d.f_pp * &g))
        }))
    }

    /// `δA(u, η) = ∫ F div η − ⟨F_P, ∇u·∇η⟩`.
    pub fn first_inner_variation(&self, u: &dyn StateField, eta: &dyn VectorField) -> Result<f64> {
        self.check_state(u)?;
        self.check_vector(eta)?;
        let boxes = [eta.support()];
        Ok(self.sum(|x| {
            if outside(x, &boxes) {
                return 0.0;
            }
            let p = u.state_jacobian(x);
            let j = eta.jacobian(x);
            let d = self.integrand.partials(&u.state(x), &p);
            d.f * j.trace() - frob(&d.f_p, &(&p * &j))
        }))
    }

    /// The four integrals of `δ²A(u, η, ζ)`.
    pub fn second_inner_terms(
        &self,
        u: &dyn StateField,
        eta: &dyn VectorField,
        zeta: &dyn VectorField,
    ) -> Result<SecondInnerTerms> {
        self.check_state(u)?;
        self.check_vector(eta)?;
        self.check_vector(zeta)?;
        let boxes = [eta.support(), zeta.support()];
        let [fx, divergence, acceleration, hessian] =
            par_weighted_sums(&self.quadrature.nodes, &self.quadrature.weights, |x| {
                if outside(x, &boxes) {
                    return [0.0; 4];
                }
                let p = u.state_jacobian(x);
                let j = eta.jacobian(x);
                let jz = zeta.jacobian(x);
                let d = self.integrand.partials(&u.state(x), &p);
                let div = j.trace();
                let j2 = &j * &j;
                let x_term = jz.trace() + div * div - j2.trace();
                let pj = &p * &j;
                let y = &p * &jz * 0.5 - &p * &j2;
                let v = flat(&pj);
                [
                    d.f * x_term,
                    -2.0 * frob(&d.f_p, &pj) * div,
                    -2.0 * frob(&d.f_p, &y),
                    v.dot(&(&d.f_pp * &v)),
                ]
            });
        Ok(SecondInnerTerms {
            fx,
            divergence,
            acceleration,
            hessian,
        })
    }

    /// `δ²A(u, η, ζ)`.
    pub fn second_inner_variation(
        &self,
        u: &dyn StateField,
        eta: &dyn VectorField,
        zeta: &dyn VectorField,
    ) -> Result<f64> {
        Ok(self.second_inner_terms(u, eta, zeta)?.total())
    }

    /// Default oracle step `10⁻³/(1 + max|∇η|)` over the quadrature nodes.
    pub fn default_oracle_step(&self, eta: &dyn VectorField) -> f64 {
        let boxes = [eta.support()];
        let m = self
            .quadrature
            .nodes
            .iter()
            .filter(|x| !outside(x, &boxes))
            .map(|x| eta.jacobian(x).amax())
            .fold(0.0, f64::max);
        1e-3 / (1.0 + m)
    }

    /// 5-point first and second differences of
    /// `A(t) = ∫ F(u, ∇u·M_t⁻¹)|det M_t|`, `M_t = I + t∇η + t²/2 ∇ζ`.
    ///
    /// The differences are taken node by node before summation, so nodes the
    /// deformation does not touch contribute exactly zero.
    pub fn inner_variation_oracle(
        &self,
        u: &dyn StateField,
        eta: &dyn VectorField,
        zeta: &dyn VectorField,
        step: Option<f64>,
    ) -> Result<OracleValues> {
        self.check_state(u)?;
        self.check_vector(eta)?;
        self.check_vector(zeta)?;
        let h = step.unwrap_or_else(|| self.default_oracle_step(eta));
        let boxes = [eta.support(), zeta.support()];
        let n = self.quadrature.dim();
        let failed = std::sync::Mutex::new(None::<Error>);
        let [first, second] = par_weighted_sums(&self.quadrature.nodes, &self.quadrature.weights, |x| {
            if outside(x, &boxes) {
                return [0.0; 2];
            }
            let j = eta.jacobian(x);
            let jz = zeta.jacobian(x);
            if j.amax() == 0.0 && jz.amax() == 0.0 {
                return [0.0; 2];
            }
            let z = u.state(x);
            let p = u.state_jacobian(x);
            let a = |t: f64| -> Option<f64> {
                let m = Matrix::identity(n, n) + &j * t + &jz * (0.5 * t * t);
                let inv = m.clone().try_inverse()?;
                Some(self.integrand.value(&z, &(&p * inv)) * m.determinant().abs())
            };
            let vals: Option<Vec<f64>> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|k| a(k * h)).collect();
            match vals {
                Some(v) => [
                    five_point_first(v[0], v[1], v[3], v[4], h),
                    five_point_second(v[0], v[1], v[2], v[3], v[4], h),
                ],
                None => {
                    let mut e = failed.lock().unwrap();
                    if e.is_none() {
                        *e = Some(Error::NonInvertible {
                            t: 2.0 * h,
                            detail: format!("deformation gradient is singular near x = {:?}", x.as_slice()),
                        });
                    }
                    [0.0; 2]
                }
            }
        });
        if let Some(e) = failed.into_inner().unwrap() {
            return Err(e);
        }
        Ok(OracleValues { first, second, step: h })
    }

    /// `δA(u, η) − dA(u, −∇u·η)`.
    pub fn fv_relation_residual(&self, u: &dyn StateField, eta: &dyn VectorField) -> Result<f64> {
        let dir = DirectionalField { u, eta };
        Ok(self.first_inner_variation(u, eta)? - self.first_variation(u, &dir)?)
    }

    /// Both sides of the second-variation bridge identity.
    pub fn sv_relation(&self, u: &dyn StateField, eta: &dyn VectorField, zeta: &dyn VectorField) -> Result<SvRelation> {
        let second_inner = self.second_inner_variation(u, eta, zeta)?;
        let dir = DirectionalField { u, eta };
        let second_variation = self.second_variation(u, &dir)?;
        let x0 = X0Field { u, eta, zeta };
        let first_variation_x0 = self.first_variation(u, &x0)?;
        Ok(SvRelation {
            second_inner,
            second_variation,
            first_variation_x0,
            residual: second_inner - second_variation - first_variation_x0,
        })
    }

    /// `δ²A − d²A(u, −∇u·η) − dA(u, X₀)`.
    pub fn sv_relation_residual(&self, u: &dyn StateField, eta: &dyn VectorField, zeta: &dyn VectorField) -> Result<f64> {
        Ok(self.sv_relation(u, eta, zeta)?.residual)
    }
}
