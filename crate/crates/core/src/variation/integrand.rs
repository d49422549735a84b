use std::collections::BTreeMap;
use std::sync::Arc;

use crate::profiles::DoubleWell;
use crate::{Error, Matrix, Result, Vector};

/// Regularization of `|P|^{p−2}`: `(|P|² + δ²)^{(p−2)/2}`.
pub const P_REGULARIZATION: f64 = 1e-12;
/// Below this `|P|` the rank-one part of `F_PP` for p-AC is dropped.
pub const P_FLOOR: f64 = 1e-9;

/// Value and partial derivatives of `F(z, P)` at one point.
///
/// `P` is `m × N`; flattened indices use `a·N + i` for entry `(a, i)`.
#[derive(Clone, Debug)]
pub struct Partials {
    pub f: f64,
    pub f_z: Vector,
    pub f_p: Matrix,
    pub f_zz: Matrix,
    /// `m × (m·N)`.
    pub f_zp: Matrix,
    /// `(m·N) × (m·N)`.
    pub f_pp: Matrix,
}

/// Bulk energy density `F(z, P)` with its partials.
pub trait Integrand: Send + Sync {
    fn label(&self) -> String;
    fn state_dim(&self) -> usize;
    fn value(&self, z: &Vector, p: &Matrix) -> f64;
    fn partials(&self, z: &Vector, p: &Matrix) -> Partials;
}

pub(crate) fn flat(p: &Matrix) -> Vector {
    let (m, n) = p.shape();
    Vector::from_fn(m * n, |k, _| p[(k / n, k % n)])
}

/// Dirichlet energy `|P|²/2` for any state dimension.
#[derive(Clone, Debug)]
pub struct Dirichlet {
    pub state_dim: usize,
}

impl Integrand for Dirichlet {
    fn label(&self) -> String {
        "dirichlet".into()
    }
    fn state_dim(&self) -> usize {
        self.state_dim
    }
    fn value(&self, _z: &Vector, p: &Matrix) -> f64 {
        0.5 * p.norm_squared()
    }
    fn partials(&self, z: &Vector, p: &Matrix) -> Partials {
        let (m, n) = p.shape();
        Partials {
            f: self.value(z, p),
            f_z: Vector::zeros(m),
            f_p: p.clone(),
            f_zz: Matrix::zeros(m, m),
            f_zp: Matrix::zeros(m, m * n),
            f_pp: Matrix::identity(m * n, m * n),
        }
    }
}

/// `ε^{p−1}|P|^p/p + (p−1)W(z)/(pε)` for a scalar state.
#[derive(Clone, Debug)]
pub struct PAllenCahn {
    pub eps: f64,
    pub p: f64,
    well: DoubleWell,
}

impl PAllenCahn {
    pub fn new(eps: f64, p: f64) -> Result<Self> {
        if !(eps > 0.0) || !(p > 1.0) {
            return Err(Error::InvalidArgument(format!("p-Allen-Cahn needs ε > 0 and p > 1 (ε = {eps}, p = {p})")));
        }
        Ok(Self {
            eps,
            p,
            well: DoubleWell,
        })
    }

    fn rho(&self, p: &Matrix) -> f64 {
        if self.p == 2.0 {
            p.norm_squared()
        } else {
            p.norm_squared() + P_REGULARIZATION * P_REGULARIZATION
        }
    }
}

impl Integrand for PAllenCahn {
    fn label(&self) -> String {
        format!("p-allen-cahn(eps={}, p={})", self.eps, self.p)
    }
    fn state_dim(&self) -> usize {
        1
    }
    fn value(&self, z: &Vector, p: &Matrix) -> f64 {
        let e = self.eps;
        let q = self.p;
        e.powf(q - 1.0) * self.rho(p).powf(q / 2.0) / q + (q - 1.0) * self.well.w(z[0]) / (q * e)
    }
    fn partials(&self, z: &Vector, p: &Matrix) -> Partials {
        let n = p.ncols();
        let e = self.eps;
        let q = self.p;
        let rho = self.rho(p);
        let scale = e.powf(q - 1.0);
        let g = rho.powf((q - 2.0) / 2.0);
        let mut f_pp = Matrix::identity(n, n) * (scale * g);
        if q != 2.0 && p.norm() >= P_FLOOR {
            let v = flat(p);
            f_pp += &v * v.transpose() * (scale * (q - 2.0) * rho.powf((q - 4.0) / 2.0));
        }
        let c = (q - 1.0) / (q * e);
        Partials {
            f: self.value(z, p),
            f_z: Vector::from_element(1, c * self.well.dw(z[0])),
            f_p: p * (scale * g),
            f_zz: Matrix::from_element(1, 1, c * self.well.ddw(z[0])),
            f_zp: Matrix::zeros(1, n),
            f_pp,
        }
    }
}

/// `(|P|²/2 + (1 − |z|²)²/(4ε²))/|log ε|` for a two-component state.
#[derive(Clone, Debug)]
pub struct GinzburgLandau {
    pub eps: f64,
}

impl GinzburgLandau {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidArgument(format!("Ginzburg-Landau needs 0 < ε < 1, got {eps}")));
        }
        Ok(Self { eps })
    }

    fn prefactor(&self) -> f64 {
        1.0 / self.eps.ln().abs()
    }
}

impl Integrand for GinzburgLandau {
    fn label(&self) -> String {
        format!("ginzburg-landau(eps={})", self.eps)
    }
    fn state_dim(&self) -> usize {
        2
    }
    fn value(&self, z: &Vector, p: &Matrix) -> f64 {
        let a = 1.0 - z.norm_squared();
        self.prefactor() * (0.5 * p.norm_squared() + a * a / (4.0 * self.eps * self.eps))
    }
    fn partials(&self, z: &Vector, p: &Matrix) -> Partials {
        let n = p.ncols();
        let l = self.prefactor();
        let e2 = self.eps * self.eps;
        let a = 1.0 - z.norm_squared();
        Partials {
            f: self.value(z, p),
            f_z: z * (-l * a / e2),
            f_p: p * l,
            f_zz: (Matrix::identity(2, 2) * (-a) + z * z.transpose() * 2.0) * (l / e2),
            f_zp: Matrix::zeros(2, 2 * n),
            f_pp: Matrix::identity(2 * n, 2 * n) * l,
        }
    }
}

/// Polynomial test density with every partial nonzero:
///
/// `c₁Σz_a⁴/4 + c₂|z|²|P|²/2 + c₃Σ_a z_a (b·P_a) + c₄|P|⁴/4`,
/// with `b_i = (−1)^i/(i + 1)`.
#[derive(Clone, Debug)]
pub struct PolynomialTest {
    pub state_dim: usize,
    pub coefficients: [f64; 4],
}

impl PolynomialTest {
    fn b(n: usize) -> Vector {
        Vector::from_fn(n, |i, _| if i % 2 == 0 { 1.0 } else { -1.0 } / (i + 1) as f64)
    }
}

impl Integrand for PolynomialTest {
    fn label(&self) -> String {
        "polynomial-test".into()
    }
    fn state_dim(&self) -> usize {
        self.state_dim
    }
    fn value(&self, z: &Vector, p: &Matrix) -> f64 {
        let [c1, c2, c3, c4] = self.coefficients;
        let b = Self::b(p.ncols());
        let p2 = p.norm_squared();
        let quartic: f64 = z.iter().map(|v| v.powi(4)).sum();
        let coupling = z.dot(&(p * &b));
        c1 * quartic / 4.0 + c2 * z.norm_squared() * p2 / 2.0 + c3 * coupling + c4 * p2 * p2 / 4.0
    }
    fn partials(&self, z: &Vector, p: &Matrix) -> Partials {
        let [c1, c2, c3, c4] = self.coefficients;
        let (m, n) = p.shape();
        let b = Self::b(n);
        let p2 = p.norm_squared();
        let z2 = z.norm_squared();
        let pb = p * &b;
        let f_z = Vector::from_fn(m, |a, _| c1 * z[a].powi(3) + c2 * z[a] * p2 + c3 * pb[a]);
        let f_p = p * (c2 * z2 + c4 * p2) + z * b.transpose() * c3;
        let f_zz = Matrix::from_fn(m, m, |a, c| if a == c { 3.0 * c1 * z[a] * z[a] + c2 * p2 } else { 0.0 });
        let f_zp = Matrix::from_fn(m, m * n, |a, k| {
            let (c, i) = (k / n, k % n);
            2.0 * c2 * z[a] * p[(c, i)] + if a == c { c3 * b[i] } else { 0.0 }
        });
        let v = flat(p);
        let f_pp = Matrix::identity(m * n, m * n) * (c2 * z2 + c4 * p2) + &v * v.transpose() * (2.0 * c4);
        Partials {
            f: self.value(z, p),
            f_z,
            f_p,
            f_zz,
            f_zp,
            f_pp,
        }
    }
}

/// Parameters understood by the integrand registry.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrandParams {
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub state_dim: Option<usize>,
    #[serde(default)]
    pub coefficients: Option<[f64; 4]>,
}

type Builder = fn(&IntegrandParams) -> Result<Arc<dyn Integrand>>;

fn need_eps(p: &IntegrandParams) -> Result<f64> {
    p.eps.ok_or_else(|| Error::InvalidArgument("integrand needs `eps`".into()))
}

/// Integrands by name.
pub struct IntegrandRegistry {
    builders: BTreeMap<&'static str, Builder>,
}

impl Default for IntegrandRegistry {
    fn default() -> Self {
        let mut builders: BTreeMap<&'static str, Builder> = BTreeMap::new();
        builders.insert("dirichlet", |p| {
            Ok(Arc::new(Dirichlet {
                state_dim: p.state_dim.unwrap_or(1),
            }))
        });
        builders.insert("p-allen-cahn", |p| {
            let q = p.p.ok_or_else(|| Error::InvalidArgument("p-allen-cahn needs `p`".into()))?;
            Ok(Arc::new(PAllenCahn::new(need_eps(p)?, q)?))
        });
        builders.insert("allen-cahn", |p| Ok(Arc::new(PAllenCahn::new(need_eps(p)?, 2.0)?)));
        builders.insert("ginzburg-landau", |p| Ok(Arc::new(GinzburgLandau::new(need_eps(p)?)?)));
        builders.insert("polynomial-test", |p| {
            Ok(Arc::new(PolynomialTest {
                state_dim: p.state_dim.unwrap_or(1),
                coefficients: p.coefficients.unwrap_or([1.0, 0.5, 0.3, 0.2]),
            }))
        });
        Self { builders }
    }
}

impl IntegrandRegistry {
    pub fn names(&self) -> Vec<&'static str> {
        self.builders.keys().copied().collect()
    }

    pub fn build(&self, name: &str, params: &IntegrandParams) -> Result<Arc<dyn Integrand>> {
        let b = self
            .builders
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown integrand `{name}`")))?;
        b(params)
    }
}

pub fn integrand_p_allen_cahn(eps: f64, p: f64) -> Result<PAllenCahn> {
    PAllenCahn::new(eps, p)
}

pub fn integrand_ginzburg_landau(eps: f64) -> Result<GinzburgLandau> {
    GinzburgLandau::new(eps)
}
