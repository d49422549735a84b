//! Built-in field expressions with analytic derivatives.

use std::sync::Arc;

use super::{BoundingBox, ScalarField, SecondDerivatives, VectorField};
use crate::{Matrix, Vector};

/// `c · Π x_i^{k_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coef: f64,
    pub powers: Vec<u32>,
}

/// Smooth polynomial cutoff, equal to a polynomial inside its support and
/// identically zero outside. `power ≥ 3` keeps the product C².
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Cutoff {
    /// `Π_i (1 − ((x_i − c_i)/L_i)²)^k` on the box `|x_i − c_i| ≤ L_i`.
    Box {
        center: Vec<f64>,
        half_widths: Vec<f64>,
        power: u32,
    },
    /// `(1 − |x − c|²/R²)^k` on the ball.
    Ball {
        center: Vec<f64>,
        radius: f64,
        power: u32,
    },
    /// `(1 − ρ²/R²)^k` with `ρ` the distance to the line through `center`
    /// along coordinate `axis`.
    Cylinder {
        axis: usize,
        center: Vec<f64>,
        radius: f64,
        power: u32,
    },
}

impl Cutoff {
    fn power(&self) -> u32 {
        match self {
            Cutoff::Box { power, .. } | Cutoff::Ball { power, .. } | Cutoff::Cylinder { power, .. } => {
                *power
            }
        }
    }

    pub fn support(&self) -> Option<BoundingBox> {
        match self {
            Cutoff::Box {
                center,
                half_widths,
                ..
            } => Some(BoundingBox {
                lo: center.iter().zip(half_widths).map(|(c, l)| c - l).collect(),
                hi: center.iter().zip(half_widths).map(|(c, l)| c + l).collect(),
            }),
            Cutoff::Ball { center, radius, .. } => Some(BoundingBox {
                lo: center.iter().map(|c| c - radius).collect(),
                hi: center.iter().map(|c| c + radius).collect(),
            }),
            // Unbounded along the axis.
            Cutoff::Cylinder { .. } => None,
        }
    }

    /// Value, gradient and Hessian at `x`.
    pub fn jet(&self, x: &Vector) -> (f64, Vector, Matrix) {
        let n = x.len();
        let k = self.power() as i32;
        let zero = (0.0, Vector::zeros(n), Matrix::zeros(n, n));
        match self {
            Cutoff::Box {
                center,
                half_widths,
                ..
            } => {
                let mut g = vec![0.0; n];
                let mut dg = vec![0.0; n];
                let mut ddg = vec![0.0; n];
                for i in 0..n {
                    let s = (x[i] - center[i]) / half_widths[i];
                    if s.abs() >= 1.0 {
                        return zero;
                    }
                    let w = 1.0 - s * s;
                    let l = half_widths[i];
                    g[i] = w.powi(k);
                    dg[i] = -2.0 * k as f64 * s * w.powi(k - 1) / l;
                    ddg[i] = (-2.0 * k as f64 * w.powi(k - 1)
                        + 4.0 * (k * (k - 1)) as f64 * s * s * w.powi(k - 2))
                        / (l * l);
                }
                let prod_except = |skip: &[usize]| -> f64 {
                    (0..n).filter(|i| !skip.contains(i)).map(|i| g[i]).product()
                };
                let value = prod_except(&[]);
                let grad = Vector::from_fn(n, |i, _| dg[i] * prod_except(&[i]));
                let hess = Matrix::from_fn(n, n, |i, j| {
                    if i == j {
                        ddg[i] * prod_except(&[i])
                    } else {
                        dg[i] * dg[j] * prod_except(&[i, j])
                    }
                });
                (value, grad, hess)
            }
            Cutoff::Ball { center, radius, .. } => {
                let y = Vector::from_fn(n, |i, _| x[i] - center[i]);
                radial_jet(&y, *radius, k, None)
            }
            Cutoff::Cylinder {
                axis,
                center,
                radius,
                ..
            } => {
                let y = Vector::from_fn(n, |i, _| if i == *axis { 0.0 } else { x[i] - center[i] });
                radial_jet(&y, *radius, k, Some(*axis))
            }
        }
    }
}

/// Jet of `(1 − |y|²/R²)^k` where `y = x − c`, except that coordinate
/// `frozen` (the cylinder axis) does not enter.
fn radial_jet(y: &Vector, radius: f64, k: i32, frozen: Option<usize>) -> (f64, Vector, Matrix) {
    let n = y.len();
    let r2 = radius * radius;
    let w = 1.0 - y.norm_squared() / r2;
    if w <= 0.0 {
        return (0.0, Vector::zeros(n), Matrix::zeros(n, n));
    }
    let mask = Matrix::from_fn(n, n, |i, j| if i == j && Some(i) != frozen { 1.0 } else { 0.0 });
    let value = w.powi(k);
    let grad = y * (-2.0 * k as f64 * w.powi(k - 1) / r2);
    let hess = y * y.transpose() * (4.0 * (k * (k - 1)) as f64 * w.powi(k - 2) / (r2 * r2))
        + mask * (-2.0 * k as f64 * w.powi(k - 1) / r2);
    (value, grad, hess)
}

/// Polynomial times an optional cutoff.
#[derive(Clone, Debug)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<Monomial>,
    cutoff: Option<Cutoff>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: Vec<Monomial>, cutoff: Option<Cutoff>) -> crate::Result<Self> {
        for t in &terms {
            if t.powers.len() != dim {
                return Err(crate::Error::DimensionMismatch(format!(
                    "monomial has {} exponents in dimension {dim}",
                    t.powers.len()
                )));
            }
        }
        if let Some(c) = &cutoff {
            if c.power() < 3 {
                return Err(crate::Error::InvalidArgument(
                    "cutoff power must be at least 3".into(),
                ));
            }
            if let Cutoff::Cylinder { axis, .. } = c {
                if *axis >= dim {
                    return Err(crate::Error::InvalidArgument("cylinder axis out of range".into()));
                }
            }
        }
        Ok(Self { dim, terms, cutoff })
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    fn poly_jet(&self, x: &Vector) -> (f64, Vector, Matrix) {
        let n = self.dim;
        let mut v = 0.0;
        let mut g = Vector::zeros(n);
        let mut h = Matrix::zeros(n, n);
        for t in &self.terms {
            let pw = |i: usize, e: i32| if e < 0 { 0.0 } else { x[i].powi(e) };
            let p: Vec<i32> = t.powers.iter().map(|&e| e as i32).collect();
            let base: f64 = (0..n).map(|i| pw(i, p[i])).product();
            v += t.coef * base;
            for a in 0..n {
                if p[a] == 0 {
                    continue;
                }
                let da: f64 = (0..n)
                    .map(|i| if i == a { p[i] as f64 * pw(i, p[i] - 1) } else { pw(i, p[i]) })
                    .product();
                g[a] += t.coef * da;
                for b in 0..n {
                    let dab: f64 = (0..n)
                        .map(|i| {
                            let mut e = p[i];
                            let mut c = 1.0;
                            if i == a {
                                c *= e as f64;
                                e -= 1;
                            }
                            if i == b {
                                c *= e as f64;
                                e -= 1;
                            }
                            if c == 0.0 {
                                0.0
                            } else {
                                c * pw(i, e)
                            }
                        })
                        .product();
                    h[(a, b)] += t.coef * dab;
                }
            }
        }
        (v, g, h)
    }

    /// Value, gradient and Hessian at `x`.
    pub fn jet(&self, x: &Vector) -> (f64, Vector, Matrix) {
        let (p, dp, hp) = self.poly_jet(x);
        match &self.cutoff {
            None => (p, dp, hp),
            Some(c) => {
                let (cv, dc, hc) = c.jet(x);
                if cv == 0.0 && dc.norm() == 0.0 && hc.norm() == 0.0 {
                    let n = x.len();
                    return (0.0, Vector::zeros(n), Matrix::zeros(n, n));
                }
                let value = p * cv;
                let grad = &dp * cv + &dc * p;
                let hess = hp * cv + &dp * dc.transpose() + &dc * dp.transpose() + hc * p;
                (value, grad, hess)
            }
        }
    }
}

impl ScalarField for Polynomial {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &Vector) -> f64 {
        self.jet(x).0
    }
    fn gradient(&self, x: &Vector) -> Vector {
        self.jet(x).1
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        self.jet(x).2
    }
    fn support(&self) -> Option<BoundingBox> {
        self.cutoff.as_ref().and_then(Cutoff::support)
    }
}

/// `a·x + b`.
#[derive(Clone, Debug)]
pub struct LinearScalar {
    pub gradient: Vector,
    pub offset: f64,
}

impl ScalarField for LinearScalar {
    fn dim(&self) -> usize {
        self.gradient.len()
    }
    fn eval(&self, x: &Vector) -> f64 {
        self.gradient.dot(x) + self.offset
    }
    fn gradient(&self, _x: &Vector) -> Vector {
        self.gradient.clone()
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        Matrix::zeros(x.len(), x.len())
    }
}

/// `c · sin(ω·x + φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigTerm {
    pub coef: f64,
    pub freq: Vec<f64>,
    pub phase: f64,
}

/// Sum of [`TrigTerm`]s.
#[derive(Clone, Debug)]
pub struct Trigonometric {
    dim: usize,
    terms: Vec<TrigTerm>,
}

impl Trigonometric {
    pub fn new(dim: usize, terms: Vec<TrigTerm>) -> crate::Result<Self> {
        if terms.iter().any(|t| t.freq.len() != dim) {
            return Err(crate::Error::DimensionMismatch(
                "trigonometric frequency length differs from dimension".into(),
            ));
        }
        Ok(Self { dim, terms })
    }
}

impl ScalarField for Trigonometric {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &Vector) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * (dot(&t.freq, x) + t.phase).sin())
            .sum()
    }
    fn gradient(&self, x: &Vector) -> Vector {
        let mut g = Vector::zeros(self.dim);
        for t in &self.terms {
            let c = t.coef * (dot(&t.freq, x) + t.phase).cos();
            for (gi, w) in g.iter_mut().zip(&t.freq) {
                *gi += c * w;
            }
        }
        g
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        let mut h = Matrix::zeros(self.dim, self.dim);
        for t in &self.terms {
            let s = -t.coef * (dot(&t.freq, x) + t.phase).sin();
            for i in 0..self.dim {
                for j in 0..self.dim {
                    h[(i, j)] += s * t.freq[i] * t.freq[j];
                }
            }
        }
        h
    }
}

fn dot(w: &[f64], x: &Vector) -> f64 {
    w.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
}

/// Zonal solid harmonic `scale · |y|^ℓ P_ℓ(a·y/|y|)`, `y = x − center`,
/// for `ℓ ≤ 4`. Restricted to a sphere about `center` it is an eigenfunction
/// of the Laplace-Beltrami operator with eigenvalue `ℓ(ℓ+1)/R²`.
#[derive(Clone, Debug)]
pub struct SphericalHarmonic {
    degree: u32,
    axis: Vector,
    center: Vector,
    scale: f64,
}

impl SphericalHarmonic {
    pub fn new(degree: u32, axis: Vector, center: Vector, scale: f64) -> crate::Result<Self> {
        if degree > 4 {
            return Err(crate::Error::InvalidArgument(
                "spherical harmonics are available up to degree 4".into(),
            ));
        }
        if axis.len() != center.len() || axis.norm() == 0.0 {
            return Err(crate::Error::InvalidArgument("invalid harmonic axis".into()));
        }
        let axis = axis.normalize();
        Ok(Self {
            degree,
            axis,
            center,
            scale,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `(f, f_t, f_s, f_tt, f_ts, f_ss)` with `t = a·y`, `s = |y|²`.
    fn partials(&self, t: f64, s: f64) -> [f64; 6] {
        match self.degree {
            0 => [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            1 => [t, 1.0, 0.0, 0.0, 0.0, 0.0],
            2 => [0.5 * (3.0 * t * t - s), 3.0 * t, -0.5, 3.0, 0.0, 0.0],
            3 => [
                0.5 * (5.0 * t.powi(3) - 3.0 * t * s),
                0.5 * (15.0 * t * t - 3.0 * s),
                -1.5 * t,
                15.0 * t,
                -1.5,
                0.0,
            ],
            _ => [
                (35.0 * t.powi(4) - 30.0 * t * t * s + 3.0 * s * s) / 8.0,
                (140.0 * t.powi(3) - 60.0 * t * s) / 8.0,
                (-30.0 * t * t + 6.0 * s) / 8.0,
                (420.0 * t * t - 60.0 * s) / 8.0,
                -60.0 * t / 8.0,
                6.0 / 8.0,
            ],
        }
    }
}

impl ScalarField for SphericalHarmonic {
    fn dim(&self) -> usize {
        self.axis.len()
    }
    fn eval(&self, x: &Vector) -> f64 {
        let y = x - &self.center;
        self.scale * self.partials(self.axis.dot(&y), y.norm_squared())[0]
    }
    fn gradient(&self, x: &Vector) -> Vector {
        let y = x - &self.center;
        let d = self.partials(self.axis.dot(&y), y.norm_squared());
        (&self.axis * d[1] + &y * (2.0 * d[2])) * self.scale
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        let y = x - &self.center;
        let n = y.len();
        let d = self.partials(self.axis.dot(&y), y.norm_squared());
        let a = &self.axis;
        let h = a * a.transpose() * d[3]
            + (a * y.transpose() + &y * a.transpose()) * (2.0 * d[4])
            + &y * y.transpose() * (4.0 * d[5])
            + Matrix::identity(n, n) * (2.0 * d[2]);
        h * self.scale
    }
}

/// Weighted sum of scalar fields.
#[derive(Clone)]
pub struct Sum {
    pub terms: Vec<(f64, Arc<dyn ScalarField>)>,
}

impl ScalarField for Sum {
    fn dim(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.dim())
    }
    fn eval(&self, x: &Vector) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.eval(x)).sum()
    }
    fn gradient(&self, x: &Vector) -> Vector {
        let mut g = Vector::zeros(x.len());
        for (c, f) in &self.terms {
            g += f.gradient(x) * *c;
        }
        g
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        let mut h = Matrix::zeros(x.len(), x.len());
        for (c, f) in &self.terms {
            h += f.hessian(x) * *c;
        }
        h
    }
}

/// `A x + b`: dilations, rotations and general affine velocity fields.
#[derive(Clone, Debug)]
pub struct LinearField {
    pub matrix: Matrix,
    pub offset: Vector,
}

impl LinearField {
    pub fn new(matrix: Matrix, offset: Option<Vector>) -> crate::Result<Self> {
        if !matrix.is_square() {
            return Err(crate::Error::DimensionMismatch("linear field needs a square matrix".into()));
        }
        let n = matrix.nrows();
        let offset = offset.unwrap_or_else(|| Vector::zeros(n));
        if offset.len() != n {
            return Err(crate::Error::DimensionMismatch("offset length".into()));
        }
        Ok(Self { matrix, offset })
    }

    /// `a·x`.
    pub fn dilation(dim: usize, a: f64) -> Self {
        Self {
            matrix: Matrix::identity(dim, dim) * a,
            offset: Vector::zeros(dim),
        }
    }

    /// `ω × x` in R³, or `ω·(−x₂, x₁)` in R² when `omega` has one entry.
    pub fn rotation(omega: &[f64]) -> crate::Result<Self> {
        let matrix = match omega {
            [w] => Matrix::from_row_slice(2, 2, &[0.0, -w, *w, 0.0]),
            [a, b, c] => Matrix::from_row_slice(3, 3, &[0.0, -c, *b, *c, 0.0, -a, -b, *a, 0.0]),
            _ => {
                return Err(crate::Error::InvalidArgument(
                    "rotation needs 1 (planar) or 3 angular-velocity components".into(),
                ))
            }
        };
        Self::new(matrix, None)
    }
}

impl VectorField for LinearField {
    fn dim(&self) -> usize {
        self.offset.len()
    }
    fn eval(&self, x: &Vector) -> Vector {
        &self.matrix * x + &self.offset
    }
    fn jacobian(&self, _x: &Vector) -> Matrix {
        self.matrix.clone()
    }
    fn second_derivatives(&self, x: &Vector) -> SecondDerivatives {
        vec![Matrix::zeros(x.len(), x.len()); x.len()]
    }
}

/// The zero vector field.
#[derive(Clone, Copy, Debug)]
pub struct ZeroField(pub usize);

impl VectorField for ZeroField {
    fn dim(&self) -> usize {
        self.0
    }
    fn eval(&self, _x: &Vector) -> Vector {
        Vector::zeros(self.0)
    }
    fn jacobian(&self, _x: &Vector) -> Matrix {
        Matrix::zeros(self.0, self.0)
    }
    fn second_derivatives(&self, _x: &Vector) -> SecondDerivatives {
        vec![Matrix::zeros(self.0, self.0); self.0]
    }
    fn support(&self) -> Option<BoundingBox> {
        Some(BoundingBox {
            lo: vec![0.0; self.0],
            hi: vec![0.0; self.0],
        })
    }
}

/// One scalar field per component.
pub type Component = Arc<dyn ScalarField>;

/// Vector field assembled from scalar components; derivatives come from the
/// components' gradients and Hessians.
#[derive(Clone)]
pub struct VectorComponents {
    components: Vec<Component>,
}

impl VectorComponents {
    pub fn new(components: Vec<Component>) -> crate::Result<Self> {
        let n = components.len();
        if components.iter().any(|c| c.dim() != n) {
            return Err(crate::Error::DimensionMismatch(
                "vector field needs as many components as dimensions".into(),
            ));
        }
        Ok(Self { components })
    }
}

impl VectorField for VectorComponents {
    fn dim(&self) -> usize {
        self.components.len()
    }
    fn eval(&self, x: &Vector) -> Vector {
        Vector::from_iterator(self.dim(), self.components.iter().map(|c| c.eval(x)))
    }
    fn jacobian(&self, x: &Vector) -> Matrix {
        let n = self.dim();
        let mut j = Matrix::zeros(n, n);
        for (i, c) in self.components.iter().enumerate() {
            j.set_row(i, &c.gradient(x).transpose());
        }
        j
    }
    fn second_derivatives(&self, x: &Vector) -> SecondDerivatives {
        self.components.iter().map(|c| c.hessian(x)).collect()
    }
    fn support(&self) -> Option<BoundingBox> {
        let mut acc: Option<BoundingBox> = None;
        for c in &self.components {
            let b = c.support()?;
            acc = Some(match acc {
                None => b,
                Some(a) => a.union(&b),
            });
        }
        acc
    }
}

/// Wraps a vector field and replaces its second derivatives by central
/// differences of the jacobian.
pub struct FdSecondDerivatives(pub Arc<dyn VectorField>);

impl VectorField for FdSecondDerivatives {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn eval(&self, x: &Vector) -> Vector {
        self.0.eval(x)
    }
    fn jacobian(&self, x: &Vector) -> Matrix {
        self.0.jacobian(x)
    }
    fn support(&self) -> Option<BoundingBox> {
        self.0.support()
    }
}

/// Linear combination `Σ c_k η_k` of vector fields.
#[derive(Clone)]
pub struct Combination {
    pub terms: Vec<(f64, Arc<dyn VectorField>)>,
}

impl VectorField for Combination {
    fn dim(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.dim())
    }
    fn eval(&self, x: &Vector) -> Vector {
        let mut v = Vector::zeros(x.len());
        for (c, f) in &self.terms {
            v += f.eval(x) * *c;
        }
        v
    }
    fn jacobian(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(x.len(), x.len());
        for (c, f) in &self.terms {
            m += f.jacobian(x) * *c;
        }
        m
    }
    fn second_derivatives(&self, x: &Vector) -> SecondDerivatives {
        let n = x.len();
        let mut t = vec![Matrix::zeros(n, n); n];
        for (c, f) in &self.terms {
            for (acc, ti) in t.iter_mut().zip(f.second_derivatives(x)) {
                *acc += ti * *c;
            }
        }
        t
    }
    fn support(&self) -> Option<BoundingBox> {
        let mut acc: Option<BoundingBox> = None;
        for (_, f) in &self.terms {
            let b = f.support()?;
            acc = Some(match acc {
                None => b,
                Some(a) => a.union(&b),
            });
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check_scalar(f: &dyn ScalarField, x: &Vector, tol: f64) {
        let h = 1e-5;
        let n = x.len();
        let g = f.gradient(x);
        let hs = f.hessian(x);
        for j in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let d = (f.eval(&xp) - f.eval(&xm)) / (2.0 * h);
            assert!((d - g[j]).abs() < tol, "gradient {j}: {d} vs {}", g[j]);
            let dg = (f.gradient(&xp) - f.gradient(&xm)) / (2.0 * h);
            for i in 0..n {
                assert!((dg[i] - hs[(i, j)]).abs() < tol, "hessian ({i},{j})");
            }
        }
        assert!((&hs - hs.transpose()).norm() < 1e-10);
    }

    #[test]
    fn cutoffs_and_polynomials_match_finite_differences() {
        let terms = vec![
            Monomial { coef: 1.5, powers: vec![2, 1, 0] },
            Monomial { coef: -0.7, powers: vec![0, 3, 1] },
            Monomial { coef: 0.3, powers: vec![1, 0, 0] },
        ];
        let x = Vector::from_vec(vec![0.3, -0.2, 0.4]);
        for cutoff in [
            None,
            Some(Cutoff::Box { center: vec![0.0; 3], half_widths: vec![1.0, 0.8, 1.2], power: 3 }),
            Some(Cutoff::Ball { center: vec![0.1, 0.0, 0.0], radius: 1.1, power: 4 }),
            Some(Cutoff::Cylinder { axis: 0, center: vec![0.0; 3], radius: 0.9, power: 3 }),
        ] {
            let p = Polynomial::new(3, terms.clone(), cutoff).unwrap();
            fd_check_scalar(&p, &x, 1e-7);
        }
    }

    #[test]
    fn harmonics_are_harmonic_and_consistent() {
        let axis = Vector::from_vec(vec![0.2, -0.5, 0.8]);
        let x = Vector::from_vec(vec![0.4, 0.1, -0.7]);
        for degree in 0..=4 {
            let h = SphericalHarmonic::new(degree, axis.clone(), Vector::zeros(3), 1.3).unwrap();
            fd_check_scalar(&h, &x, 1e-7);
            assert!(h.hessian(&x).trace().abs() < 1e-12, "degree {degree} not harmonic");
        }
    }

    #[test]
    fn trigonometric_derivatives() {
        let t = Trigonometric::new(
            2,
            vec![
                TrigTerm { coef: 0.4, freq: vec![1.0, 2.0], phase: 0.1 },
                TrigTerm { coef: -1.1, freq: vec![-0.5, 0.3], phase: 1.0 },
            ],
        )
        .unwrap();
        fd_check_scalar(&t, &Vector::from_vec(vec![0.2, 0.7]), 1e-7);
    }

    #[test]
    fn rotation_matches_cross_product() {
        let r = LinearField::rotation(&[0.3, -0.2, 0.5]).unwrap();
        let x = Vector::from_vec(vec![1.0, 2.0, 3.0]);
        let w = Vector::from_vec(vec![0.3, -0.2, 0.5]);
        assert!((r.eval(&x) - w.cross(&x)).norm() < 1e-15);
        let r2 = LinearField::rotation(&[1.0]).unwrap();
        let v = r2.eval(&Vector::from_vec(vec![1.0, 0.0]));
        assert_eq!((v[0], v[1]), (0.0, 1.0));
    }

    #[test]
    fn compact_support_vanishes_outside() {
        let p = Polynomial::new(
            2,
            vec![Monomial { coef: 1.0, powers: vec![0, 0] }],
            Some(Cutoff::Box { center: vec![0.0, 0.0], half_widths: vec![1.0, 1.0], power: 3 }),
        )
        .unwrap();
        let b = p.support().unwrap();
        let outside = Vector::from_vec(vec![1.2, 0.0]);
        assert!(!b.contains(&outside));
        assert_eq!(p.eval(&outside), 0.0);
        assert_eq!(p.gradient(&outside).norm(), 0.0);
    }
}
