//! The built-in experiment kinds.

use std::sync::Arc;

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use super::spec::{FieldContext, Geometry, GeometrySpec, ScalarSpec, ScheduleSpec, VectorSpec};
use super::{Check, Experiment, Outcome, Row, RunContext};
use crate::field::random::random_vector_polynomial;
use crate::field::{good_identity_residual, Cutoff, VectorField, ZetaEta};
use crate::geometry::{gl_discrepancy, surface_integral, CircularFilament, StraightFilament, SurfaceFunction};
use crate::limits::{
    ac_limit_experiment, constrained_poincare_check, equipartition_residuals, gl_limit_experiment, perturbed_field,
    power_rate, quadratic_forms, tensor_pairing_experiment, volume_admissibility, ConvergenceRecord,
    EpsilonSchedule, FilamentOptions, TubeOptions,
};
use crate::numerics::line_fit;
use crate::profiles::{ansatz_field, c_p, optimal_profile, LevelSet, RadialShape};
use crate::tolerances as tol;
use crate::variation::{random_identity_case, BulkQuadrature, VariationEngine, VariationReport};
use crate::{Error, Result, Vector};

fn parse<P: DeserializeOwned>(params: &serde_json::Value) -> Result<P> {
    let v = if params.is_null() {
        serde_json::Value::Object(Default::default())
    } else {
        params.clone()
    };
    serde_json::from_value(v).map_err(|e| Error::InvalidArgument(format!("params: {e}")))
}

/// One row per ε plus an `extrapolated` row (rate in `residual_1`).
fn record_rows(series: &str, rec: &ConvergenceRecord, rows: &mut Vec<Row>) {
    for (k, eps) in rec.epsilons.iter().enumerate() {
        rows.push(Row {
            series: series.to_string(),
            epsilon: Some(*eps),
            value: rec.values[k],
            target: rec.target,
            gap: rec.point_gap(k),
            residual_1: rec.residuals[k][0],
            residual_2: rec.residuals[k][1],
        });
    }
    rows.push(Row {
        series: format!("{series} extrapolated"),
        epsilon: None,
        value: rec.extrapolated,
        target: rec.target,
        gap: rec.relative_gap(),
        residual_1: rec.rate.unwrap_or(f64::NAN),
        residual_2: 0.0,
    });
}

/// `max_k |r_k| / max(abs, rel·|target|)`; at most 1 when every point agrees
/// with the oracle.
fn oracle_ratio(rec: &ConvergenceRecord, index: usize) -> f64 {
    let scale = tol::ORACLE_ABS.max(tol::ORACLE_REL * rec.target.abs());
    rec.residuals.iter().map(|r| r[index].abs() / scale).fold(0.0, f64::max)
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> Option<f64> {
    xs.into_iter().fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.max(x))))
}

fn min_of(xs: impl IntoIterator<Item = f64>) -> Option<f64> {
    xs.into_iter().fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.min(x))))
}

fn default_level() -> LevelSet {
    LevelSet::SignedDistance
}

fn default_transverse_order() -> usize {
    TubeOptions::default().transverse_order
}

/// Fails with `EpsilonTooLarge` if the largest ε does not fit the tube.
fn check_ansatz_fits(g: &Geometry, p: f64, sched: &EpsilonSchedule, level: LevelSet) -> Result<()> {
    let table = Arc::new(optimal_profile(p)?);
    ansatz_field(g.hypersurface()?, table, sched.largest(), level).map(|_| ())
}

// ---------------------------------------------------------------- identities

/// Seeded random `(F, u, η, ζ)` cases for the variation formulas, plus the
/// pointwise identities.
pub struct Identities;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdentitiesParams {
    #[serde(default = "ten")]
    cases: usize,
    #[serde(default = "two")]
    dim: usize,
    /// Grid points per axis, in panels of 8. The second-variation bridge
    /// holds after an integration by parts, so its residual is quadrature
    /// error: two panels per axis leave ~1e-6, three leave ~1e-8.
    #[serde(default = "twenty_four")]
    points_per_axis: usize,
    /// Sample points for the volume-preservation identity.
    #[serde(default = "thousand")]
    identity_points: usize,
    /// Random fields for the GL discrepancy forms, per filament.
    #[serde(default = "ten")]
    filament_fields: usize,
}

fn ten() -> usize {
    10
}
fn two() -> usize {
    2
}
fn twenty_four() -> usize {
    24
}
fn thousand() -> usize {
    1000
}

impl Experiment for Identities {
    fn kind(&self) -> &'static str {
        "identities"
    }
    fn describe(&self) -> &'static str {
        "inner vs additive variations on random cases, FD oracle, pointwise identities"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        let p: IdentitiesParams = parse(params)?;
        if p.dim == 0 || p.dim > 3 {
            return Err(Error::InvalidArgument("identities run in dimension 1 to 3".into()));
        }
        Ok(())
    }
    fn run(&self, params: &serde_json::Value, ctx: &RunContext) -> Result<Outcome> {
        let p: IdentitiesParams = parse(params)?;
        let mut rng = ctx.rng();
        let mut out = Outcome::default();
        let (mut fv, mut sv, mut of, mut os) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for k in 0..p.cases {
            let case = random_identity_case(&mut rng, k, p.dim, p.points_per_axis)?;
            let engine = VariationEngine::new(case.integrand.as_ref(), &case.quadrature);
            let r = VariationReport::compute(&engine, case.u.as_ref(), case.eta.as_ref(), case.zeta.as_ref())?;
            fv = fv.max(r.residuals.fv_relation.abs());
            sv = sv.max(r.residuals.sv_relation.abs() / (1.0 + r.second_inner.abs()));
            of = of.max(r.residuals.oracle_first.abs() / tol::ORACLE_ABS.max(tol::ORACLE_REL * r.first_inner.abs()));
            os = os.max(r.residuals.oracle_second.abs() / tol::ORACLE_ABS.max(tol::ORACLE_REL * r.second_inner.abs()));
            out.rows.push(Row {
                series: case.label,
                epsilon: None,
                value: r.second_inner,
                target: r.oracle.second,
                gap: r.residuals.oracle_second.abs(),
                residual_1: r.residuals.fv_relation,
                residual_2: r.residuals.sv_relation,
            });
        }
        out.checks.push(Check::at_most("first-variation bridge", fv, tol::FV_RELATION));
        out.checks.push(Check::at_most("second-variation bridge (scaled)", sv, tol::SV_RELATION));
        out.checks.push(Check::at_most("first inner vs oracle (scaled)", of, 1.0));
        out.checks.push(Check::at_most("second inner vs oracle (scaled)", os, 1.0));

        // volume-preservation identity for cubic fields in R³
        let mut worst = 0.0f64;
        let fields = 10;
        let per_field = p.identity_points.div_ceil(fields);
        for _ in 0..fields {
            let eta = random_vector_polynomial(&mut rng, 3, 3, 1.0, None);
            for _ in 0..per_field {
                let x = Vector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0));
                worst = worst.max(good_identity_residual(&eta, &x).abs());
            }
        }
        out.rows.push(Row {
            series: "good-identity".into(),
            epsilon: None,
            value: worst,
            target: 0.0,
            gap: worst,
            residual_1: (fields * per_field) as f64,
            residual_2: 0.0,
        });
        out.checks.push(Check::at_most("volume-preservation identity", worst, tol::GOOD_IDENTITY));

        // the two GL discrepancy densities
        let straight = StraightFilament::new(1.0, 0.5, 12)?;
        let circle = CircularFilament::new(1.0, 0.3, 48)?;
        let mut gap = 0.0f64;
        for _ in 0..p.filament_fields {
            let eta = random_vector_polynomial(&mut rng, 3, 3, 1.0, None);
            for g in [&straight as &dyn crate::geometry::Interface, &circle] {
                gap = gap.max(gl_discrepancy(g, &eta)?.max_pointwise_gap);
            }
        }
        out.rows.push(Row {
            series: "gl-forms".into(),
            epsilon: None,
            value: gap,
            target: 0.0,
            gap,
            residual_1: p.filament_fields as f64,
            residual_2: 0.0,
        });
        out.checks.push(Check::at_most("GL real vs dbar density", gap, tol::GL_FORMS));
        out.gap = Some(fv.max(sv));
        Ok(out)
    }
}

// ---------------------------------------------------------------- ac-converge

/// `δ²E_{ε,p}` of the optimal-profile ansatz against `c_p{δ²E + (p−1)·disc}`.
pub struct AcConverge;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AcParams {
    geometry: GeometrySpec,
    eta: VectorSpec,
    zeta: VectorSpec,
    ps: Vec<f64>,
    schedule: ScheduleSpec,
    #[serde(default = "default_level")]
    level: LevelSet,
    #[serde(default = "default_transverse_order")]
    transverse_order: usize,
    #[serde(default = "ac_gap")]
    tolerance: f64,
    #[serde(default = "ac_rate")]
    min_rate: f64,
    /// Regress `extrapolated/c_p − δ²E` against `p − 1`.
    #[serde(default)]
    linearity: bool,
}

fn ac_gap() -> f64 {
    tol::AC_LIMIT_GAP
}
fn ac_rate() -> f64 {
    tol::AC_MIN_RATE
}

struct AcBuilt {
    g: Geometry,
    eta: Arc<dyn VectorField>,
    zeta: Arc<dyn VectorField>,
    sched: EpsilonSchedule,
}

fn build_pair(
    geometry: &GeometrySpec,
    eta: &VectorSpec,
    zeta: &VectorSpec,
    schedule: &ScheduleSpec,
) -> Result<AcBuilt> {
    let g = geometry.build()?;
    let dim = g.dim();
    let mut ctx = FieldContext {
        surface: g.hypersurface().ok(),
        eta: None,
    };
    let eta = eta.build(dim, &ctx)?;
    ctx.eta = Some(eta.clone());
    let zeta = zeta.build(dim, &ctx)?;
    Ok(AcBuilt {
        g,
        eta,
        zeta,
        sched: schedule.build()?,
    })
}

impl AcConverge {
    fn prepare(params: &serde_json::Value) -> Result<(AcParams, AcBuilt)> {
        let p: AcParams = parse(params)?;
        if p.ps.is_empty() || p.ps.iter().any(|q| !(*q > 1.0)) {
            return Err(Error::InvalidArgument("ps must be a non-empty list of values > 1".into()));
        }
        if p.linearity && p.ps.len() < 3 {
            return Err(Error::InvalidArgument("the linearity fit needs at least three p values".into()));
        }
        let b = build_pair(&p.geometry, &p.eta, &p.zeta, &p.schedule)?;
        for q in &p.ps {
            check_ansatz_fits(&b.g, *q, &b.sched, p.level)?;
        }
        Ok((p, b))
    }
}

impl Experiment for AcConverge {
    fn kind(&self) -> &'static str {
        "ac-converge"
    }
    fn describe(&self) -> &'static str {
        "p-Allen-Cahn second inner variations of the ansatz against the sharp-interface limit"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        Self::prepare(params).map(|_| ())
    }
    fn run(&self, params: &serde_json::Value, _ctx: &RunContext) -> Result<Outcome> {
        let (p, b) = Self::prepare(params)?;
        let g = b.g.hypersurface()?;
        let opts = TubeOptions {
            transverse_order: p.transverse_order,
            level: p.level,
        };
        let mut out = Outcome::default();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut disc = 0.0;
        for q in &p.ps {
            let r = ac_limit_experiment(g.clone(), b.eta.clone(), b.zeta.clone(), *q, &b.sched, &opts)?;
            let series = format!("p={q}");
            record_rows(&series, &r.record, &mut out.rows);
            let rate = r.record.rate.unwrap_or(f64::NAN);
            out.checks.push(Check::at_most(format!("{series} gap"), r.record.relative_gap(), p.tolerance));
            out.checks.push(Check::at_least(format!("{series} rate"), rate, p.min_rate));
            out.checks.push(Check::at_most(format!("{series} oracle (scaled)"), oracle_ratio(&r.record, 1), 1.0));
            out.gap = max_of(out.gap.into_iter().chain([r.record.relative_gap()]));
            out.rate = min_of(out.rate.into_iter().chain([rate]));
            xs.push(q - 1.0);
            ys.push(r.record.extrapolated / r.c_p - r.surface_variation);
            disc = r.discrepancy;
        }
        if p.linearity {
            let fit = line_fit(&xs, &ys).ok_or_else(|| Error::Numerical("degenerate p sweep".into()))?;
            let slope_err = (fit.slope - disc).abs() / disc.abs().max(f64::MIN_POSITIVE);
            let intercept = fit.intercept.abs() / disc.abs().max(1.0);
            out.rows.push(Row {
                series: "linearity".into(),
                epsilon: None,
                value: fit.slope,
                target: disc,
                gap: slope_err,
                residual_1: fit.intercept,
                residual_2: 0.0,
            });
            out.checks.push(Check::at_most("linearity slope", slope_err, tol::LINEARITY_SLOPE));
            out.checks.push(Check::at_most("linearity intercept", intercept, tol::LINEARITY_INTERCEPT));
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- gl-converge

/// GL energy and second inner variation of the vortex ansatz around a filament.
pub struct GlConverge;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GlParams {
    geometry: GeometrySpec,
    eta: VectorSpec,
    zeta: VectorSpec,
    schedule: ScheduleSpec,
    #[serde(default = "half")]
    tube_radius: f64,
    #[serde(default = "eight")]
    radial_order: usize,
    #[serde(default = "sixteen")]
    angular: usize,
    #[serde(default = "shooting")]
    shape: RadialShape,
    #[serde(default = "gl_gap")]
    tolerance: f64,
    #[serde(default = "gl_energy_gap")]
    energy_tolerance: f64,
}

fn half() -> f64 {
    0.5
}
fn eight() -> usize {
    8
}
fn sixteen() -> usize {
    16
}
fn shooting() -> RadialShape {
    RadialShape::Shooting
}
fn gl_gap() -> f64 {
    tol::GL_LIMIT_GAP
}
fn gl_energy_gap() -> f64 {
    tol::GL_ENERGY_GAP
}

impl GlConverge {
    fn prepare(params: &serde_json::Value) -> Result<(GlParams, AcBuilt)> {
        let p: GlParams = parse(params)?;
        let b = build_pair(&p.geometry, &p.eta, &p.zeta, &p.schedule)?;
        let f = b.g.filament()?;
        let limit = 0.5 * f.focal_distance();
        if b.sched.largest() > limit {
            return Err(Error::EpsilonTooLarge {
                eps: b.sched.largest(),
                layer: b.sched.largest(),
                limit,
            });
        }
        BulkQuadrature::filament_tube(f.as_ref(), p.tube_radius, b.sched.largest(), 2, 4)?;
        Ok((p, b))
    }
}

impl Experiment for GlConverge {
    fn kind(&self) -> &'static str {
        "gl-converge"
    }
    fn describe(&self) -> &'static str {
        "Ginzburg-Landau energy and second inner variation around a vortex filament"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        Self::prepare(params).map(|_| ())
    }
    fn run(&self, params: &serde_json::Value, _ctx: &RunContext) -> Result<Outcome> {
        let (p, b) = Self::prepare(params)?;
        let opts = FilamentOptions {
            tube_radius: p.tube_radius,
            radial_order: p.radial_order,
            angular: p.angular,
            shape: p.shape,
        };
        let r = gl_limit_experiment(b.g.filament()?, b.eta, b.zeta, &b.sched, &opts)?;
        let mut out = Outcome::default();
        record_rows("second", &r.second, &mut out.rows);
        record_rows("energy", &r.energy, &mut out.rows);
        let d = &r.discrepancy;
        let forms = (d.real_form - d.dbar_form).abs() / (1.0 + d.real_form.abs());
        out.rows.push(Row {
            series: "discrepancy".into(),
            epsilon: None,
            value: d.real_form,
            target: d.dbar_form,
            gap: forms,
            residual_1: d.max_pointwise_gap,
            residual_2: r.surface_variation,
        });
        out.checks.push(Check::at_most("second gap", r.second.relative_gap(), p.tolerance));
        out.checks.push(Check::at_most("energy gap", r.energy.relative_gap(), p.energy_tolerance));
        out.checks.push(Check::at_most("discrepancy forms", forms, tol::GL_FORMS));
        out.checks.push(Check::at_most("oracle (scaled)", oracle_ratio(&r.second, 1), 1.0));
        out.gap = Some(r.second.relative_gap().max(r.energy.relative_gap()));
        // the log model has no power-law rate to report
        Ok(out)
    }
}

// ---------------------------------------------------------------- tensors

/// Bulk pairings of `∇u_ε` tensors against surface targets.
pub struct Tensors;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorParams {
    geometry: GeometrySpec,
    p: f64,
    weight: ScalarSpec,
    /// Zero-based index lists of length 2 or 4.
    pairings: Vec<Vec<usize>>,
    schedule: ScheduleSpec,
    #[serde(default = "default_level")]
    level: LevelSet,
    #[serde(default = "default_transverse_order")]
    transverse_order: usize,
    #[serde(default = "tensor_gap")]
    tolerance: f64,
    #[serde(default = "off_normal")]
    off_normal: f64,
}

fn tensor_gap() -> f64 {
    tol::TENSOR_GAP
}
fn off_normal() -> f64 {
    tol::OFF_NORMAL
}

impl Tensors {
    fn prepare(params: &serde_json::Value) -> Result<(TensorParams, Geometry, EpsilonSchedule)> {
        let p: TensorParams = parse(params)?;
        let g = p.geometry.build()?;
        let sched = p.schedule.build()?;
        if p.pairings.is_empty() {
            return Err(Error::InvalidArgument("no pairings given".into()));
        }
        for idx in &p.pairings {
            if (idx.len() != 2 && idx.len() != 4) || idx.iter().any(|i| *i >= g.dim()) {
                return Err(Error::InvalidArgument(format!("bad pairing {idx:?}")));
            }
        }
        p.weight.build(g.dim())?;
        check_ansatz_fits(&g, p.p, &sched, p.level)?;
        Ok((p, g, sched))
    }
}

impl Experiment for Tensors {
    fn kind(&self) -> &'static str {
        "tensors"
    }
    fn describe(&self) -> &'static str {
        "2- and 4-tensor pairings of the ansatz gradient against normal-vector surface integrals"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        Self::prepare(params).map(|_| ())
    }
    fn run(&self, params: &serde_json::Value, _ctx: &RunContext) -> Result<Outcome> {
        let (p, g, sched) = Self::prepare(params)?;
        let weight = p.weight.build(g.dim())?;
        let opts = TubeOptions {
            transverse_order: p.transverse_order,
            level: p.level,
        };
        let mut out = Outcome::default();
        for idx in &p.pairings {
            let r = tensor_pairing_experiment(g.hypersurface()?, p.p, weight.clone(), idx, &sched, &opts)?;
            let series = format!("T{idx:?}").replace(", ", "-");
            record_rows(&series, &r.record, &mut out.rows);
            if r.record.target.abs() <= p.off_normal {
                let worst = r.record.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
                out.checks.push(Check::at_most(format!("{series} off-normal"), worst, p.off_normal));
            } else {
                let gap = r.record.relative_gap();
                out.checks.push(Check::at_most(format!("{series} gap"), gap, p.tolerance));
                out.gap = max_of(out.gap.into_iter().chain([gap]));
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- equipartition

/// L¹ equipartition residuals of the ansatz.
pub struct Equipartition;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EquipartitionParams {
    geometry: GeometrySpec,
    p: f64,
    schedule: ScheduleSpec,
    #[serde(default = "default_level")]
    level: LevelSet,
    #[serde(default = "one")]
    stretch: f64,
    #[serde(default = "equi_rate")]
    min_rate: f64,
    /// Residuals below this count as exactly zero.
    #[serde(default = "exact_floor")]
    exact_floor: f64,
}

fn one() -> f64 {
    1.0
}
fn equi_rate() -> f64 {
    tol::EQUIPARTITION_MIN_RATE
}
fn exact_floor() -> f64 {
    1e-12
}

impl Experiment for Equipartition {
    fn kind(&self) -> &'static str {
        "equipartition"
    }
    fn describe(&self) -> &'static str {
        "kinetic vs potential energy balance of the ansatz, O(ε) decay"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        let p: EquipartitionParams = parse(params)?;
        let g = p.geometry.build()?;
        check_ansatz_fits(&g, p.p, &p.schedule.build()?, p.level)
    }
    fn run(&self, params: &serde_json::Value, _ctx: &RunContext) -> Result<Outcome> {
        let p: EquipartitionParams = parse(params)?;
        let g = p.geometry.build()?.hypersurface()?;
        let opts = TubeOptions {
            level: p.level,
            ..Default::default()
        };
        let e = equipartition_residuals(g, p.p, &p.schedule.build()?, p.stretch, &opts)?;
        let mut out = Outcome::default();
        for (series, rec) in [("ab", &e.ab), ("abphi", &e.abphi)] {
            record_rows(series, rec, &mut out.rows);
            let worst = rec.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
            if worst <= p.exact_floor {
                out.checks.push(Check::at_most(format!("{series} exact"), worst, p.exact_floor));
            } else {
                let rate = rec.rate.unwrap_or(f64::NAN);
                out.checks.push(Check::at_least(format!("{series} rate"), rate, p.min_rate));
                out.rate = min_of(out.rate.into_iter().chain([rate]));
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- volume

/// Second-order volume change under `Φ_t`.
pub struct Volume;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VolumeCase {
    eta: VectorSpec,
    zeta: VectorSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VolumeParams {
    geometry: GeometrySpec,
    #[serde(default)]
    cases: Vec<VolumeCase>,
    /// Seeded random compactly supported `η` with `ζ = ζ^η`.
    #[serde(default)]
    random_cases: usize,
    #[serde(default = "two_u32")]
    random_degree: u32,
    #[serde(default)]
    random_cutoff: Option<Cutoff>,
    #[serde(default = "twelve")]
    radial_order: usize,
}

fn two_u32() -> u32 {
    2
}
fn twelve() -> usize {
    12
}

impl Experiment for Volume {
    fn kind(&self) -> &'static str {
        "volume"
    }
    fn describe(&self) -> &'static str {
        "first and second order volume change of the enclosed region, flux cross-check"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        let p: VolumeParams = parse(params)?;
        let g = p.geometry.build()?.hypersurface()?;
        BulkQuadrature::enclosed(g.as_ref(), 2)?;
        if p.cases.is_empty() && p.random_cases == 0 {
            return Err(Error::InvalidArgument("no volume cases".into()));
        }
        Ok(())
    }
    fn run(&self, params: &serde_json::Value, ctx: &RunContext) -> Result<Outcome> {
        self.validate(params)?;
        let p: VolumeParams = parse(params)?;
        let g = p.geometry.build()?.hypersurface()?;
        let dim = g.ambient_dim();
        let mut out = Outcome::default();
        let mut flux_gap = 0.0f64;
        let mut c2_worst: Option<f64> = None;
        let mut push = |series: String, eta: Arc<dyn VectorField>, zeta: Arc<dyn VectorField>, volume_preserving: bool| -> Result<()> {
            let v = volume_admissibility(g.as_ref(), eta.as_ref(), zeta.as_ref(), p.radial_order)?;
            flux_gap = flux_gap.max((v.c1 - v.flux).abs());
            if volume_preserving {
                c2_worst = Some(c2_worst.unwrap_or(0.0).max(v.c2.abs()));
            }
            out.rows.push(Row {
                series,
                epsilon: None,
                value: v.c2,
                target: 0.0,
                gap: v.c2.abs(),
                residual_1: v.c1,
                residual_2: v.c1 - v.flux,
            });
            Ok(())
        };
        for (k, case) in p.cases.iter().enumerate() {
            let mut fctx = FieldContext {
                surface: Some(g.clone()),
                eta: None,
            };
            let eta = case.eta.build(dim, &fctx)?;
            fctx.eta = Some(eta.clone());
            let zeta = case.zeta.build(dim, &fctx)?;
            push(format!("case {k}"), eta, zeta, matches!(case.zeta, VectorSpec::ZetaEta))?;
        }
        let mut rng = ctx.rng();
        let cutoff = p.random_cutoff.clone().unwrap_or(Cutoff::Ball {
            center: vec![0.0; dim],
            radius: 1.5 * g.focal_distance(),
            power: 3,
        });
        for k in 0..p.random_cases {
            let eta: Arc<dyn VectorField> =
                Arc::new(random_vector_polynomial(&mut rng, dim, p.random_degree, 1.0, Some(cutoff.clone())));
            let zeta: Arc<dyn VectorField> = Arc::new(ZetaEta::new(eta.clone()));
            push(format!("random {k}"), eta, zeta, true)?;
        }
        out.checks.push(Check::at_most("c1 vs flux", flux_gap, tol::VOLUME_FLUX));
        if let Some(c2) = c2_worst {
            out.checks.push(Check::at_most("c2 under zeta-eta", c2, tol::VOLUME_C2));
            out.gap = Some(c2);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- poincare

/// `δ²E(Γ, η, ζ^η) = J(ξ)` for normal extensions, and the perturbation `h(ε)`.
pub struct Poincare;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Perturbation {
    eta: VectorSpec,
    reference: VectorSpec,
    schedule: ScheduleSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PoincareParams {
    geometry: GeometrySpec,
    xi: Vec<ScalarSpec>,
    cutoff_width: f64,
    #[serde(default)]
    perturbation: Option<Perturbation>,
}

impl Experiment for Poincare {
    fn kind(&self) -> &'static str {
        "poincare"
    }
    fn describe(&self) -> &'static str {
        "volume-preserving second variation vs the Jacobi form; Lagrange perturbation h(ε)"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        let p: PoincareParams = parse(params)?;
        let geo = p.geometry.build()?;
        let g = geo.hypersurface()?;
        if !g.is_closed() {
            return Err(Error::UnsupportedBoundary("the Poincaré check"));
        }
        for xi in &p.xi {
            xi.build(g.ambient_dim())?;
        }
        if let Some(pert) = &p.perturbation {
            check_ansatz_fits(&geo, 2.0, &pert.schedule.build()?, LevelSet::SignedDistance)?;
        }
        Ok(())
    }
    fn run(&self, params: &serde_json::Value, _ctx: &RunContext) -> Result<Outcome> {
        self.validate(params)?;
        let p: PoincareParams = parse(params)?;
        let g = p.geometry.build()?.hypersurface()?;
        let dim = g.ambient_dim();
        let mut out = Outcome::default();
        let mut worst = 0.0f64;
        for (k, xi) in p.xi.iter().enumerate() {
            let c = constrained_poincare_check(g.clone(), SurfaceFunction::new(xi.build(dim)?), p.cutoff_width)?;
            let gap = (c.lhs - c.rhs).abs() / (1.0 + c.rhs.abs());
            worst = worst.max(gap);
            out.rows.push(Row {
                series: format!("xi {k}"),
                epsilon: None,
                value: c.lhs,
                target: c.rhs,
                gap,
                residual_1: c.norm_sq,
                residual_2: c.mean,
            });
            out.checks.push(Check::at_most(format!("xi {k} lhs vs rhs"), gap, tol::POINCARE));
            out.checks.push(Check::at_least(format!("xi {k} stability"), c.rhs, -tol::POINCARE));
        }
        out.gap = Some(worst);
        if let Some(pert) = &p.perturbation {
            let ctx = FieldContext {
                surface: Some(g.clone()),
                eta: None,
            };
            let eta = pert.eta.build(dim, &ctx)?;
            let reference = pert.reference.build(dim, &ctx)?;
            let sched = pert.schedule.build()?;
            let table = Arc::new(optimal_profile(2.0)?);
            let mut hs = Vec::new();
            let mut residual = 0.0f64;
            for &eps in sched.epsilons() {
                let u = ansatz_field(g.clone(), table.clone(), eps, LevelSet::SignedDistance)?;
                let quad = BulkQuadrature::tube(g.as_ref(), eps * table.s_max(), eps, TubeOptions::default().transverse_order)?;
                let pf = perturbed_field(g.as_ref(), &u, eta.clone(), reference.clone(), &quad)?;
                residual = residual.max(pf.residual.abs());
                hs.push(pf.h);
                out.rows.push(Row {
                    series: "h".into(),
                    epsilon: Some(eps),
                    value: pf.h,
                    target: 0.0,
                    gap: pf.h.abs(),
                    residual_1: pf.residual,
                    residual_2: 0.0,
                });
            }
            out.checks.push(Check::at_most("perturbed constraint", residual, tol::PERTURBATION_RESIDUAL));
            if hs.iter().any(|h| h.abs() > 1e-14) {
                let rate = power_rate(sched.epsilons(), &hs).unwrap_or(f64::NAN);
                out.checks.push(Check::at_least("h(eps) power", rate, tol::PERTURBATION_MIN_RATE));
                out.rate = Some(rate);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- forms

/// Allen-Cahn quadratic forms along `−∇u_ε·V` against `c₂ Q(ξ)`.
pub struct Forms;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormsParams {
    geometry: GeometrySpec,
    xi: Vec<ScalarSpec>,
    cutoff_width: f64,
    schedule: ScheduleSpec,
    #[serde(default = "default_transverse_order")]
    transverse_order: usize,
    #[serde(default = "forms_gap")]
    tolerance: f64,
}

fn forms_gap() -> f64 {
    tol::FORMS_GAP
}

impl Experiment for Forms {
    fn kind(&self) -> &'static str {
        "forms"
    }
    fn describe(&self) -> &'static str {
        "Allen-Cahn quadratic forms of the ansatz against the limiting stability form"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        let p: FormsParams = parse(params)?;
        let g = p.geometry.build()?;
        let sched = p.schedule.build()?;
        check_ansatz_fits(&g, 2.0, &sched, LevelSet::SignedDistance)?;
        let s_max = optimal_profile(2.0)?.s_max();
        if 2.0 * sched.largest() * s_max > p.cutoff_width {
            return Err(Error::EpsilonTooLarge {
                eps: sched.largest(),
                layer: sched.largest() * s_max,
                limit: p.cutoff_width / 2.0,
            });
        }
        for xi in &p.xi {
            xi.build(g.dim())?;
        }
        Ok(())
    }
    fn run(&self, params: &serde_json::Value, _ctx: &RunContext) -> Result<Outcome> {
        self.validate(params)?;
        let p: FormsParams = parse(params)?;
        let g = p.geometry.build()?.hypersurface()?;
        let sched = p.schedule.build()?;
        let opts = TubeOptions {
            transverse_order: p.transverse_order,
            ..Default::default()
        };
        let mut out = Outcome::default();
        for (k, xi) in p.xi.iter().enumerate() {
            let f = xi.build(g.ambient_dim())?;
            let norm_sq = surface_integral(g.as_ref(), |s| f.eval(&s.point).powi(2));
            let q = quadratic_forms(g.clone(), SurfaceFunction::new(f), p.cutoff_width, &sched, &opts)?;
            let series = format!("xi {k}");
            record_rows(&format!("{series} corrected"), &q.corrected, &mut out.rows);
            record_rows(&format!("{series} raw"), &q.raw, &mut out.rows);
            let scale = 1f64.max(q.corrected.target.abs()).max(q.c2 * norm_sq);
            let gap = (q.corrected.extrapolated - q.corrected.target).abs() / scale;
            out.checks.push(Check::at_most(format!("{series} corrected gap"), gap, p.tolerance));
            out.gap = max_of(out.gap.into_iter().chain([gap]));
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- profile

/// The constant `c_p` by two routes.
pub struct Profile;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileParams {
    ps: Vec<f64>,
}

impl Experiment for Profile {
    fn kind(&self) -> &'static str {
        "profile"
    }
    fn describe(&self) -> &'static str {
        "c_p by quadrature vs the energy of the optimal profile; closed forms at p = 1, 2"
    }
    fn validate(&self, params: &serde_json::Value) -> Result<()> {
        let p: ProfileParams = parse(params)?;
        if p.ps.is_empty() || p.ps.iter().any(|q| !(*q >= 1.0)) {
            return Err(Error::InvalidArgument("ps must be a non-empty list of values ≥ 1".into()));
        }
        Ok(())
    }
    fn run(&self, params: &serde_json::Value, _ctx: &RunContext) -> Result<Outcome> {
        self.validate(params)?;
        let p: ProfileParams = parse(params)?;
        let mut out = Outcome::default();
        let mut worst = 0.0f64;
        for &q in &p.ps {
            let c = c_p(q);
            let closed = if q == 1.0 {
                Some(2.0)
            } else if q == 2.0 {
                Some(4.0 / 3.0)
            } else {
                None
            };
            if let Some(v) = closed {
                out.checks.push(Check::at_most(format!("p={q} closed form"), (c - v).abs(), tol::CP_CLOSED_FORM));
            }
            let (target, s_max) = if q > 1.0 {
                let t = optimal_profile(q)?;
                (t.line_energy(), t.s_max())
            } else {
                (2.0, 0.0)
            };
            let gap = (c - target).abs();
            worst = worst.max(gap);
            out.checks.push(Check::at_most(format!("p={q} routes"), gap, tol::PROFILE_ROUTES));
            out.rows.push(Row {
                series: format!("p={q}"),
                epsilon: None,
                value: c,
                target,
                gap,
                residual_1: s_max,
                residual_2: closed.map_or(f64::NAN, |v| c - v),
            });
        }
        out.gap = Some(worst);
        Ok(out)
    }
}
