//! JSON descriptors for geometries, fields and ε schedules, and the builders
//! that turn them into library objects.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::field::{
    Component, Cutoff, LinearField, Monomial, Polynomial, SphericalHarmonic, VectorComponents,
    VectorField, ZeroField, ZetaEta,
};
use crate::geometry::{
    Circle, CircularFilament, Filament, FlatPatch, Hypersurface, Interface, NormalExtension, Sphere,
    StraightFilament,
};
use crate::limits::{EpsilonSchedule, ExtrapolationRegistry};
use crate::{Error, Matrix, Result, Vector};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeometrySpec {
    /// `{x_axis = 0} ∩ [−half_width, half_width]^{N−1}`.
    Flat {
        dim: usize,
        #[serde(default)]
        axis: usize,
        half_width: f64,
        normal_extent: f64,
        resolution: usize,
    },
    Circle {
        center: Vec<f64>,
        radius: f64,
        resolution: usize,
    },
    Sphere {
        center: Vec<f64>,
        radius: f64,
        resolution: usize,
    },
    StraightFilament {
        length: f64,
        tube_radius: f64,
        resolution: usize,
    },
    CircularFilament {
        radius: f64,
        tube_radius: f64,
        resolution: usize,
    },
}

/// A built interface, split by codimension.
#[derive(Clone)]
pub enum Geometry {
    Hypersurface(Arc<dyn Hypersurface>),
    Filament(Arc<dyn Filament>),
}

impl Geometry {
    pub fn interface(&self) -> &dyn Interface {
        match self {
            Geometry::Hypersurface(g) => g.as_ref(),
            Geometry::Filament(f) => f.as_ref(),
        }
    }

    pub fn hypersurface(&self) -> Result<Arc<dyn Hypersurface>> {
        match self {
            Geometry::Hypersurface(g) => Ok(g.clone()),
            Geometry::Filament(f) => Err(Error::InvalidArgument(format!(
                "{} is a filament; this experiment needs a hypersurface",
                f.label()
            ))),
        }
    }

    pub fn filament(&self) -> Result<Arc<dyn Filament>> {
        match self {
            Geometry::Filament(f) => Ok(f.clone()),
            Geometry::Hypersurface(g) => Err(Error::InvalidArgument(format!(
                "{} is a hypersurface; this experiment needs a filament",
                g.label()
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.interface().ambient_dim()
    }
}

impl GeometrySpec {
    pub fn build(&self) -> Result<Geometry> {
        let v = |c: &[f64]| Vector::from_column_slice(c);
        Ok(match self {
            GeometrySpec::Flat {
                dim,
                axis,
                half_width,
                normal_extent,
                resolution,
            } => Geometry::Hypersurface(Arc::new(FlatPatch::new(
                *dim,
                *axis,
                *half_width,
                *normal_extent,
                *resolution,
            )?)),
            GeometrySpec::Circle {
                center,
                radius,
                resolution,
            } => Geometry::Hypersurface(Arc::new(Circle::new(v(center), *radius, *resolution)?)),
            GeometrySpec::Sphere {
                center,
                radius,
                resolution,
            } => Geometry::Hypersurface(Arc::new(Sphere::new(v(center), *radius, *resolution)?)),
            GeometrySpec::StraightFilament {
                length,
                tube_radius,
                resolution,
            } => Geometry::Filament(Arc::new(StraightFilament::new(*length, *tube_radius, *resolution)?)),
            GeometrySpec::CircularFilament {
                radius,
                tube_radius,
                resolution,
            } => Geometry::Filament(Arc::new(CircularFilament::new(*radius, *tube_radius, *resolution)?)),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coef: f64,
    pub powers: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScalarSpec {
    Constant {
        value: f64,
    },
    Polynomial {
        terms: Vec<TermSpec>,
        #[serde(default)]
        cutoff: Option<Cutoff>,
    },
    /// Zonal solid harmonic about `center` with axis `axis`.
    Harmonic {
        degree: u32,
        axis: Vec<f64>,
        center: Vec<f64>,
        #[serde(default = "one")]
        scale: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl ScalarSpec {
    pub fn build(&self, dim: usize) -> Result<Component> {
        Ok(match self {
            ScalarSpec::Constant { value } => {
                let terms = vec![Monomial {
                    coef: *value,
                    powers: vec![0; dim],
                }];
                Arc::new(Polynomial::new(dim, terms, None)?)
            }
            ScalarSpec::Polynomial { terms, cutoff } => {
                let terms = terms
                    .iter()
                    .map(|t| Monomial {
                        coef: t.coef,
                        powers: t.powers.clone(),
                    })
                    .collect();
                Arc::new(Polynomial::new(dim, terms, cutoff.clone())?)
            }
            ScalarSpec::Harmonic {
                degree,
                axis,
                center,
                scale,
            } => {
                if axis.len() != dim || center.len() != dim {
                    return Err(Error::DimensionMismatch(format!("harmonic in R^{dim} needs axis and center of length {dim}")));
                }
                Arc::new(SphericalHarmonic::new(
                    *degree,
                    Vector::from_column_slice(axis),
                    Vector::from_column_slice(center),
                    *scale,
                )?)
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VectorSpec {
    Zero,
    /// `a·x`.
    Dilation {
        a: f64,
    },
    /// Rigid rotation with angular velocity `omega` (one entry in R², three in R³).
    Rotation {
        omega: Vec<f64>,
    },
    /// `A x + b`, rows of `A` given as lists.
    Linear {
        matrix: Vec<Vec<f64>>,
        #[serde(default)]
        offset: Option<Vec<f64>>,
    },
    Components {
        components: Vec<ScalarSpec>,
    },
    /// `ξ(π(x)) n(π(x)) χ(d(x))` about the experiment's hypersurface.
    NormalExtension {
        xi: ScalarSpec,
        cutoff_width: f64,
    },
    /// `ζ^η = −(div η)η + (η·∇)η` for the experiment's velocity; only valid
    /// as an acceleration.
    ZetaEta,
}

/// What a vector field may refer to when it is built.
#[derive(Clone, Default)]
pub struct FieldContext {
    pub surface: Option<Arc<dyn Hypersurface>>,
    pub eta: Option<Arc<dyn VectorField>>,
}

impl VectorSpec {
    pub fn build(&self, dim: usize, ctx: &FieldContext) -> Result<Arc<dyn VectorField>> {
        Ok(match self {
            VectorSpec::Zero => Arc::new(ZeroField(dim)),
            VectorSpec::Dilation { a } => Arc::new(LinearField::dilation(dim, *a)),
            VectorSpec::Rotation { omega } => {
                let f = LinearField::rotation(omega)?;
                if f.dim() != dim {
                    return Err(Error::DimensionMismatch(format!("rotation acts on R^{}, expected R^{dim}", f.dim())));
                }
                Arc::new(f)
            }
            VectorSpec::Linear { matrix, offset } => {
                if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
                    return Err(Error::DimensionMismatch(format!("linear field needs a {dim}×{dim} matrix")));
                }
                let flat: Vec<f64> = matrix.iter().flatten().copied().collect();
                let m = Matrix::from_row_slice(dim, dim, &flat);
                Arc::new(LinearField::new(m, offset.as_ref().map(|b| Vector::from_column_slice(b)))?)
            }
            VectorSpec::Components { components } => {
                if components.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "{} components given for a field on R^{dim}",
                        components.len()
                    )));
                }
                let comps = components.iter().map(|c| c.build(dim)).collect::<Result<Vec<_>>>()?;
                Arc::new(VectorComponents::new(comps)?)
            }
            VectorSpec::NormalExtension { xi, cutoff_width } => {
                let surface = ctx
                    .surface
                    .clone()
                    .ok_or_else(|| Error::InvalidArgument("normal-extension needs a hypersurface".into()))?;
                let xi = crate::geometry::SurfaceFunction::new(xi.build(dim)?);
                Arc::new(NormalExtension::new(surface, xi, *cutoff_width)?)
            }
            VectorSpec::ZetaEta => {
                let eta = ctx
                    .eta
                    .clone()
                    .ok_or_else(|| Error::InvalidArgument("zeta-eta is only valid as an acceleration".into()))?;
                Arc::new(ZetaEta::new(eta))
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "spacing", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScheduleSpec {
    /// `eps0·2^{−k}`.
    Halving {
        eps0: f64,
        count: usize,
        #[serde(default = "linear_eps")]
        model: String,
    },
    /// `eps0·10^{−k/per_decade}`.
    Decades {
        eps0: f64,
        count: usize,
        per_decade: usize,
        #[serde(default = "inverse_log")]
        model: String,
    },
    Explicit {
        epsilons: Vec<f64>,
        #[serde(default = "linear_eps")]
        model: String,
    },
}

fn linear_eps() -> String {
    "linear-eps".into()
}

fn inverse_log() -> String {
    "inverse-log".into()
}

impl ScheduleSpec {
    pub fn build(&self) -> Result<EpsilonSchedule> {
        let models = ExtrapolationRegistry::default();
        match self {
            ScheduleSpec::Halving { eps0, count, model } => EpsilonSchedule::geometric(*eps0, *count, models.get(model)?),
            ScheduleSpec::Decades {
                eps0,
                count,
                per_decade,
                model,
            } => {
                if *per_decade == 0 {
                    return Err(Error::InvalidArgument("per_decade must be positive".into()));
                }
                EpsilonSchedule::decades(*eps0, *count, *per_decade, models.get(model)?)
            }
            ScheduleSpec::Explicit { epsilons, model } => EpsilonSchedule::new(epsilons.clone(), models.get(model)?),
        }
    }
}
