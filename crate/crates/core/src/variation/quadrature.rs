use std::f64::consts::PI;

use crate::geometry::{Filament, Hypersurface};
use crate::numerics::{gauss_legendre, graded_rule, trapezoid_periodic, Rule};
use crate::{Error, Result, Vector};

/// How a [`BulkQuadrature`] was built.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum QuadratureMode {
    TensorGrid { lo: Vec<f64>, hi: Vec<f64>, points_per_axis: usize },
    Tube { surface: String, half_width: f64, scale: f64 },
    FilamentTube { filament: String, radius: f64, scale: f64 },
    Enclosed { surface: String },
    Custom,
}

/// Nodes and weights in R^N.
#[derive(Clone, Debug)]
pub struct BulkQuadrature {
    pub mode: QuadratureMode,
    pub nodes: Vec<Vector>,
    pub weights: Vec<f64>,
}

impl BulkQuadrature {
    pub fn from_parts(nodes: Vec<Vector>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::DimensionMismatch("node and weight counts differ".into()));
        }
        Ok(Self {
            mode: QuadratureMode::Custom,
            nodes,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.nodes.first().map_or(0, |x| x.len())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ 1`.
    pub fn measure(&self) -> f64 {
        crate::numerics::pairwise_sum(&self.weights)
    }

    /// Tensor Gauss-Legendre rule on the box `[lo, hi]`, split into
    /// `panels` pieces per axis with `order` points each.
    pub fn tensor_grid(lo: &[f64], hi: &[f64], panels: usize, order: usize) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::DimensionMismatch("box corners differ in dimension".into()));
        }
        if panels == 0 || order == 0 || lo.iter().zip(hi).any(|(a, b)| !(b > a)) {
            return Err(Error::InvalidArgument("tensor grid needs a nonempty box and resolution".into()));
        }
        let rules: Vec<Rule> = lo
            .iter()
            .zip(hi)
            .map(|(&a, &b)| {
                let breaks: Vec<f64> = (0..=panels).map(|k| a + (b - a) * k as f64 / panels as f64).collect();
                crate::numerics::composite_gauss(&breaks, order)
            })
            .collect();
        let dim = lo.len();
        let total: usize = rules.iter().map(|r| r.len()).product();
        let mut nodes = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut idx = vec![0usize; dim];
        for _ in 0..total {
            let x = Vector::from_fn(dim, |d, _| rules[d].nodes[idx[d]]);
            let w: f64 = (0..dim).map(|d| rules[d].weights[idx[d]]).product();
            nodes.push(x);
            weights.push(w);
            for d in 0..dim {
                idx[d] += 1;
                if idx[d] < rules[d].len() {
                    break;
                }
                idx[d] = 0;
            }
        }
        Ok(Self {
            mode: QuadratureMode::TensorGrid {
                lo: lo.to_vec(),
                hi: hi.to_vec(),
                points_per_axis: panels * order,
            },
            nodes,
            weights,
        })
    }

    /// Normal-coordinate rule `x = y + t n(y)` around a hypersurface, for
    /// `|t| ≤ half_width` (clipped to the surface's normal range).
    ///
    /// The transverse rule is graded around `t = 0` at `scale` (typically ε).
    pub fn tube(g: &dyn Hypersurface, half_width: f64, scale: f64, order: usize) -> Result<Self> {
        let (t_min, t_max) = g.normal_range();
        let a = (-half_width).max(t_min);
        let b = half_width.min(t_max);
        if !(b > a) || !(scale > 0.0) {
            return Err(Error::InvalidArgument("tube needs a positive width and scale".into()));
        }
        let rule = graded_rule(a, b, 0.0, scale, order, f64::INFINITY);
        let mut nodes = Vec::with_capacity(g.nodes().len() * rule.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for s in g.nodes() {
            let n = s.normal();
            for (t, wt) in rule.nodes.iter().zip(&rule.weights) {
                let jac: f64 = s.curvatures.iter().map(|k| 1.0 + t * k).product();
                nodes.push(&s.point + n * *t);
                weights.push(s.weight * wt * jac);
            }
        }
        Ok(Self {
            mode: QuadratureMode::Tube {
                surface: g.label(),
                half_width: b.max(-a),
                scale,
            },
            nodes,
            weights,
        })
    }

    /// Polar rule in the normal disks of a filament, radius `radius`.
    ///
    /// Radial panels `[0, s/2], [s/2, s], [s, 2s], …` with `order` Gauss points,
    /// `angular` trapezoid points.
    pub fn filament_tube(f: &dyn Filament, radius: f64, scale: f64, order: usize, angular: usize) -> Result<Self> {
        if !(radius > 0.0) || !(scale > 0.0) || angular < 3 {
            return Err(Error::InvalidArgument("filament tube needs positive radius, scale and angles".into()));
        }
        let focal = f.focal_distance();
        if radius >= focal {
            return Err(Error::TubeTooNarrow { width: radius, focal });
        }
        let mut breaks = vec![0.0];
        let mut r = 0.5 * scale;
        while r < radius {
            breaks.push(r);
            r *= 2.0;
        }
        breaks.push(radius);
        let radial = crate::numerics::composite_gauss(&breaks, order);
        let theta = trapezoid_periodic(angular, 0.0, 2.0 * PI);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for s in f.nodes() {
            let (p, q) = (&s.normals[0], &s.normals[1]);
            for (rho, wr) in radial.nodes.iter().zip(&radial.weights) {
                for (th, wth) in theta.nodes.iter().zip(&theta.weights) {
                    let e = p * th.cos() + q * th.sin();
                    let jac = 1.0 - rho * e.dot(&s.curvature_vector);
                    nodes.push(&s.point + e * *rho);
                    weights.push(s.weight * wr * rho * wth * jac);
                }
            }
        }
        Ok(Self {
            mode: QuadratureMode::FilamentTube {
                filament: f.label(),
                radius,
                scale,
            },
            nodes,
            weights,
        })
    }

    /// Rule on the region enclosed by a closed hypersurface, when available.
    pub fn enclosed(g: &dyn Hypersurface, radial_order: usize) -> Result<Self> {
        let (nodes, weights) = g
            .enclosed_quadrature(radial_order)
            .ok_or(Error::UnsupportedBoundary("enclosed quadrature needs a closed round interface"))?;
        Ok(Self {
            mode: QuadratureMode::Enclosed { surface: g.label() },
            nodes,
            weights,
        })
    }

    /// Plain Gauss rule on an interval, as a 1D bulk rule.
    pub fn interval(a: f64, b: f64, n: usize) -> Self {
        let r = gauss_legendre(n, a, b);
        Self {
            mode: QuadratureMode::Custom,
            nodes: r.nodes.iter().map(|x| Vector::from_element(1, *x)).collect(),
            weights: r.weights,
        }
    }
}
