//! Supported interface shapes: flat periodic patch, circle, sphere, straight
//! and circular filaments.

use std::f64::consts::PI;

use super::{Filament, Hypersurface, Interface, SurfaceNode, Transverse};
use crate::numerics::{gauss_legendre, trapezoid_periodic};
use crate::{Error, Matrix, Result, Vector};

fn unit(n: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(n);
    v[i] = 1.0;
    v
}

/// The hyperplane `{x_axis = 0}` restricted to the cube `|x_j| ≤ L` in the
/// other coordinates, treated as a periodic (closed) patch.
#[derive(Clone, Debug)]
pub struct FlatPatch {
    dim: usize,
    axis: usize,
    half_width: f64,
    normal_extent: f64,
    periodic: bool,
    nodes: Vec<SurfaceNode>,
}

impl FlatPatch {
    pub fn new(dim: usize, axis: usize, half_width: f64, normal_extent: f64, resolution: usize) -> Result<Self> {
        if !(dim == 2 || dim == 3) || axis >= dim {
            return Err(Error::InvalidArgument("flat patch lives in R² or R³ with a valid normal axis".into()));
        }
        if half_width <= 0.0 || normal_extent <= 0.0 || resolution == 0 {
            return Err(Error::InvalidArgument("flat patch extents and resolution must be positive".into()));
        }
        let rule = gauss_legendre(resolution, -half_width, half_width);
        let tangent_axes: Vec<usize> = (0..dim).filter(|&i| i != axis).collect();
        let tangents: Vec<Vector> = tangent_axes.iter().map(|&i| unit(dim, i)).collect();
        let mut nodes = Vec::new();
        let mut push = |coords: &[(usize, f64)], weight: f64| {
            let mut p = Vector::zeros(dim);
            for &(i, c) in coords {
                p[i] = c;
            }
            nodes.push(SurfaceNode {
                point: p,
                weight,
                tangents: tangents.clone(),
                normals: vec![unit(dim, axis)],
                curvatures: vec![0.0; dim - 1],
                curvature_vector: Vector::zeros(dim),
            });
        };
        if dim == 2 {
            for (a, wa) in rule.nodes.iter().zip(&rule.weights) {
                push(&[(tangent_axes[0], *a)], *wa);
            }
        } else {
            for (a, wa) in rule.nodes.iter().zip(&rule.weights) {
                for (b, wb) in rule.nodes.iter().zip(&rule.weights) {
                    push(&[(tangent_axes[0], *a), (tangent_axes[1], *b)], wa * wb);
                }
            }
        }
        Ok(Self {
            dim,
            axis,
            half_width,
            normal_extent,
            periodic: true,
            nodes,
        })
    }

    /// Treat the patch as a piece of hyperplane with boundary instead of a
    /// periodic cell.
    pub fn with_boundary(mut self) -> Self {
        self.periodic = false;
        self
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }
}

impl Interface for FlatPatch {
    fn label(&self) -> String {
        format!("flat patch x{} = 0 in R^{}", self.axis + 1, self.dim)
    }
    fn ambient_dim(&self) -> usize {
        self.dim
    }
    fn codim(&self) -> usize {
        1
    }
    fn nodes(&self) -> &[SurfaceNode] {
        &self.nodes
    }
    fn measure(&self) -> f64 {
        (2.0 * self.half_width).powi(self.dim as i32 - 1)
    }
    fn is_closed(&self) -> bool {
        self.periodic
    }
    fn focal_distance(&self) -> f64 {
        f64::INFINITY
    }
}

impl Hypersurface for FlatPatch {
    fn signed_distance(&self, x: &Vector) -> f64 {
        x[self.axis]
    }
    fn distance_gradient(&self, _x: &Vector) -> Vector {
        unit(self.dim, self.axis)
    }
    fn distance_hessian(&self, _x: &Vector) -> Matrix {
        Matrix::zeros(self.dim, self.dim)
    }
    fn normal_range(&self) -> (f64, f64) {
        (-self.normal_extent, self.normal_extent)
    }
}

/// Shared signed-distance data for round shapes.
fn round_distance(center: &Vector, radius: f64, x: &Vector) -> (f64, Vector, Matrix) {
    let y = x - center;
    let r = y.norm();
    let n = x.len();
    if r == 0.0 {
        return (-radius, unit(n, 0), Matrix::zeros(n, n));
    }
    let g = &y / r;
    let h = (Matrix::identity(n, n) - &g * g.transpose()) / r;
    (r - radius, g, h)
}

/// Circle of radius `R` in R², uniform trapezoid nodes in angle.
#[derive(Clone, Debug)]
pub struct Circle {
    center: Vector,
    radius: f64,
    nodes: Vec<SurfaceNode>,
}

impl Circle {
    pub fn new(center: Vector, radius: f64, resolution: usize) -> Result<Self> {
        if center.len() != 2 || radius <= 0.0 || resolution < 3 {
            return Err(Error::InvalidArgument("circle needs a planar center, R > 0 and ≥ 3 nodes".into()));
        }
        let rule = trapezoid_periodic(resolution, 0.0, 2.0 * PI);
        let nodes = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(th, w)| {
                let n = Vector::from_vec(vec![th.cos(), th.sin()]);
                SurfaceNode {
                    point: &center + &n * radius,
                    weight: w * radius,
                    tangents: vec![Vector::from_vec(vec![-th.sin(), th.cos()])],
                    normals: vec![n],
                    curvatures: vec![1.0 / radius],
                    curvature_vector: Vector::zeros(2),
                }
            })
            .collect();
        Ok(Self { center, radius, nodes })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }
}

impl Interface for Circle {
    fn label(&self) -> String {
        format!("circle R = {}", self.radius)
    }
    fn ambient_dim(&self) -> usize {
        2
    }
    fn codim(&self) -> usize {
        1
    }
    fn nodes(&self) -> &[SurfaceNode] {
        &self.nodes
    }
    fn measure(&self) -> f64 {
        2.0 * PI * self.radius
    }
    fn is_closed(&self) -> bool {
        true
    }
    fn focal_distance(&self) -> f64 {
        self.radius
    }
}

impl Hypersurface for Circle {
    fn signed_distance(&self, x: &Vector) -> f64 {
        (x - &self.center).norm() - self.radius
    }
    fn distance_gradient(&self, x: &Vector) -> Vector {
        round_distance(&self.center, self.radius, x).1
    }
    fn distance_hessian(&self, x: &Vector) -> Matrix {
        round_distance(&self.center, self.radius, x).2
    }
    fn normal_range(&self) -> (f64, f64) {
        (-self.radius, self.radius)
    }
    fn enclosed_quadrature(&self, radial_order: usize) -> Option<(Vec<Vector>, Vec<f64>)> {
        Some(enclosed(&self.center, self.radius, &self.nodes, radial_order, 1))
    }
}

/// Sphere of radius `R` in R³: Gauss-Legendre in `cos θ` times trapezoid in
/// longitude (`resolution × 2·resolution` nodes, none at the poles).
#[derive(Clone, Debug)]
pub struct Sphere {
    center: Vector,
    radius: f64,
    nodes: Vec<SurfaceNode>,
}

impl Sphere {
    pub fn new(center: Vector, radius: f64, resolution: usize) -> Result<Self> {
        if center.len() != 3 || radius <= 0.0 || resolution < 2 {
            return Err(Error::InvalidArgument("sphere needs a center in R³, R > 0 and ≥ 2 latitudes".into()));
        }
        let lat = gauss_legendre(resolution, -1.0, 1.0);
        let lon = trapezoid_periodic(2 * resolution, 0.0, 2.0 * PI);
        let mut nodes = Vec::with_capacity(lat.len() * lon.len());
        for (mu, wm) in lat.nodes.iter().zip(&lat.weights) {
            let s = (1.0 - mu * mu).sqrt();
            for (phi, wp) in lon.nodes.iter().zip(&lon.weights) {
                let (sp, cp) = phi.sin_cos();
                let n = Vector::from_vec(vec![s * cp, s * sp, *mu]);
                nodes.push(SurfaceNode {
                    point: &center + &n * radius,
                    weight: radius * radius * wm * wp,
                    tangents: vec![
                        Vector::from_vec(vec![-sp, cp, 0.0]),
                        Vector::from_vec(vec![mu * cp, mu * sp, -s]),
                    ],
                    normals: vec![n],
                    curvatures: vec![1.0 / radius; 2],
                    curvature_vector: Vector::zeros(3),
                });
            }
        }
        Ok(Self { center, radius, nodes })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }
}

impl Interface for Sphere {
    fn label(&self) -> String {
        format!("sphere R = {}", self.radius)
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn codim(&self) -> usize {
        1
    }
    fn nodes(&self) -> &[SurfaceNode] {
        &self.nodes
    }
    fn measure(&self) -> f64 {
        4.0 * PI * self.radius * self.radius
    }
    fn is_closed(&self) -> bool {
        true
    }
    fn focal_distance(&self) -> f64 {
        self.radius
    }
}

impl Hypersurface for Sphere {
    fn signed_distance(&self, x: &Vector) -> f64 {
        (x - &self.center).norm() - self.radius
    }
    fn distance_gradient(&self, x: &Vector) -> Vector {
        round_distance(&self.center, self.radius, x).1
    }
    fn distance_hessian(&self, x: &Vector) -> Matrix {
        round_distance(&self.center, self.radius, x).2
    }
    fn normal_range(&self) -> (f64, f64) {
        (-self.radius, self.radius)
    }
    fn enclosed_quadrature(&self, radial_order: usize) -> Option<(Vec<Vector>, Vec<f64>)> {
        Some(enclosed(&self.center, self.radius, &self.nodes, radial_order, 2))
    }
}

/// Polar quadrature of the disk/ball bounded by a round interface.
fn enclosed(
    center: &Vector,
    radius: f64,
    nodes: &[SurfaceNode],
    radial_order: usize,
    power: i32,
) -> (Vec<Vector>, Vec<f64>) {
    let rule = gauss_legendre(radial_order, 0.0, radius);
    let mut pts = Vec::with_capacity(nodes.len() * rule.len());
    let mut wts = Vec::with_capacity(nodes.len() * rule.len());
    for nd in nodes {
        let dir = &nd.normals[0];
        let w_dir = nd.weight / radius.powi(power);
        for (r, wr) in rule.nodes.iter().zip(&rule.weights) {
            pts.push(center + dir * *r);
            wts.push(w_dir * wr * r.powi(power));
        }
    }
    (pts, wts)
}

/// Segment `{(s, 0, 0) : 0 ≤ s ≤ L}` in R³ with the global frame `p = e₂`, `q = e₃`.
#[derive(Clone, Debug)]
pub struct StraightFilament {
    length: f64,
    tube_radius: f64,
    nodes: Vec<SurfaceNode>,
}

impl StraightFilament {
    pub fn new(length: f64, tube_radius: f64, resolution: usize) -> Result<Self> {
        if length <= 0.0 || tube_radius <= 0.0 || resolution == 0 {
            return Err(Error::InvalidArgument("filament length, tube radius and resolution must be positive".into()));
        }
        let rule = gauss_legendre(resolution, 0.0, length);
        let nodes = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(s, w)| SurfaceNode {
                point: Vector::from_vec(vec![*s, 0.0, 0.0]),
                weight: *w,
                tangents: vec![unit(3, 0)],
                normals: vec![unit(3, 1), unit(3, 2)],
                curvatures: vec![],
                curvature_vector: Vector::zeros(3),
            })
            .collect();
        Ok(Self {
            length,
            tube_radius,
            nodes,
        })
    }
}

impl Interface for StraightFilament {
    fn label(&self) -> String {
        format!("straight filament of length {}", self.length)
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn codim(&self) -> usize {
        2
    }
    fn nodes(&self) -> &[SurfaceNode] {
        &self.nodes
    }
    fn measure(&self) -> f64 {
        self.length
    }
    fn is_closed(&self) -> bool {
        false
    }
    fn focal_distance(&self) -> f64 {
        f64::INFINITY
    }
}

impl Filament for StraightFilament {
    fn transverse(&self, x: &Vector) -> Transverse {
        Transverse {
            w: x[1],
            v: x[2],
            grad_w: unit(3, 1),
            grad_v: unit(3, 2),
        }
    }
    fn tube_radius(&self) -> f64 {
        self.tube_radius
    }
}

/// Circle of radius `R` in the plane `x₃ = 0` with the parallel frame
/// `p` = outward radial, `q = e₃`.
#[derive(Clone, Debug)]
pub struct CircularFilament {
    radius: f64,
    tube_radius: f64,
    nodes: Vec<SurfaceNode>,
}

impl CircularFilament {
    pub fn new(radius: f64, tube_radius: f64, resolution: usize) -> Result<Self> {
        if radius <= 0.0 || tube_radius <= 0.0 || tube_radius >= radius || resolution < 3 {
            return Err(Error::InvalidArgument(
                "circular filament needs 0 < tube radius < R and ≥ 3 nodes".into(),
            ));
        }
        let rule = trapezoid_periodic(resolution, 0.0, 2.0 * PI);
        let nodes = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(th, w)| {
                let (s, c) = th.sin_cos();
                let p = Vector::from_vec(vec![c, s, 0.0]);
                SurfaceNode {
                    point: &p * radius,
                    weight: w * radius,
                    tangents: vec![Vector::from_vec(vec![-s, c, 0.0])],
                    normals: vec![p.clone(), unit(3, 2)],
                    curvatures: vec![],
                    curvature_vector: -p / radius,
                }
            })
            .collect();
        Ok(Self {
            radius,
            tube_radius,
            nodes,
        })
    }
}

impl Interface for CircularFilament {
    fn label(&self) -> String {
        format!("circular filament R = {}", self.radius)
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn codim(&self) -> usize {
        2
    }
    fn nodes(&self) -> &[SurfaceNode] {
        &self.nodes
    }
    fn measure(&self) -> f64 {
        2.0 * PI * self.radius
    }
    fn is_closed(&self) -> bool {
        true
    }
    fn focal_distance(&self) -> f64 {
        self.radius
    }
}

impl Filament for CircularFilament {
    fn transverse(&self, x: &Vector) -> Transverse {
        let rxy = x[0].hypot(x[1]);
        let grad_w = if rxy == 0.0 {
            unit(3, 0)
        } else {
            Vector::from_vec(vec![x[0] / rxy, x[1] / rxy, 0.0])
        };
        Transverse {
            w: rxy - self.radius,
            v: x[2],
            grad_w,
            grad_v: unit(3, 2),
        }
    }
    fn tube_radius(&self) -> f64 {
        self.tube_radius
    }
}
