mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use common::{rng, vec};
use innervar::field::{
    random::random_vector_polynomial, Cutoff, LinearField, Monomial, Polynomial, ScalarField, SphericalHarmonic,
    VectorComponents, VectorField, ZeroField, ZetaEta,
};
use innervar::geometry::{
    area_second_inner_variation, Filament, FlatPatch, Hypersurface, Sphere, StraightFilament, SurfaceFunction,
};
use innervar::limits::*;
use innervar::numerics::line_fit;
use innervar::profiles::{ansatz_field, c_p, optimal_profile, LevelSet};
use innervar::tolerances as tol;
use innervar::variation::BulkQuadrature;
use innervar::Error;

fn poly(dim: usize, terms: &[(f64, &[u32])], cutoff: Option<Cutoff>) -> Arc<dyn ScalarField> {
    let terms = terms
        .iter()
        .map(|(c, p)| Monomial {
            coef: *c,
            powers: p.to_vec(),
        })
        .collect();
    Arc::new(Polynomial::new(dim, terms, cutoff).unwrap())
}

fn square_bump() -> Option<Cutoff> {
    Some(Cutoff::Box {
        center: vec![0.0, 0.0],
        half_widths: vec![0.8, 0.8],
        power: 3,
    })
}

fn flat() -> Arc<dyn Hypersurface> {
    Arc::new(FlatPatch::new(2, 0, 1.0, 1.0, 32).unwrap())
}

fn sphere(r: f64) -> Arc<dyn Hypersurface> {
    Arc::new(Sphere::new(vec(&[0.0; 3]), r, 16).unwrap())
}

/// A pair with `(n, n·∇η) ≠ 0` on `{x₁ = 0}`.
fn normal_pair() -> (Arc<dyn VectorField>, Arc<dyn VectorField>) {
    let eta = VectorComponents::new(vec![
        poly(2, &[(0.5, &[0, 0]), (0.8, &[1, 0]), (0.3, &[0, 1])], square_bump()),
        poly(2, &[(0.2, &[0, 0]), (-0.4, &[1, 1])], square_bump()),
    ])
    .unwrap();
    let zeta = VectorComponents::new(vec![
        poly(2, &[(0.3, &[0, 1])], square_bump()),
        poly(2, &[(0.1, &[0, 0]), (0.2, &[1, 0])], square_bump()),
    ])
    .unwrap();
    (Arc::new(eta), Arc::new(zeta))
}

/// A pair with `(n, n·∇η) = 0` on `{x₁ = 0}`: the cutoff is flat in `x₁` there.
fn tangential_pair() -> (Arc<dyn VectorField>, Arc<dyn VectorField>) {
    let strip = || {
        Some(Cutoff::Box {
            center: vec![0.0, 0.0],
            half_widths: vec![4.0, 0.8],
            power: 3,
        })
    };
    let eta = VectorComponents::new(vec![
        poly(2, &[(0.5, &[0, 0]), (0.6, &[0, 1])], strip()),
        poly(2, &[(0.3, &[0, 0]), (0.7, &[1, 0])], strip()),
    ])
    .unwrap();
    let zeta = VectorComponents::new(vec![
        poly(2, &[(0.2, &[0, 0])], strip()),
        poly(2, &[(-0.3, &[0, 1])], strip()),
    ])
    .unwrap();
    (Arc::new(eta), Arc::new(zeta))
}

fn ac_schedule(eps0: f64) -> EpsilonSchedule {
    EpsilonSchedule::geometric(eps0, 6, Arc::new(LinearEps)).unwrap()
}

fn check_ac(r: &AcLimit) {
    let rec = &r.record;
    assert!(rec.relative_gap() <= tol::AC_LIMIT_GAP, "{} gap {}", rec.label, rec.relative_gap());
    assert!(rec.rate.unwrap() >= tol::AC_MIN_RATE, "{} rate {:?}", rec.label, rec.rate);
    for res in &rec.residuals {
        // closed form against the deformation oracle at every ε
        assert!(res[1].abs() <= tol::ORACLE_ABS.max(tol::ORACLE_REL * rec.target.abs()), "{res:?}");
    }
}

#[test]
fn ac_flat_normal_pair_converges_for_several_p() {
    let (eta, zeta) = normal_pair();
    for p in [1.25, 2.0, 3.0] {
        let r = ac_limit_experiment(flat(), eta.clone(), zeta.clone(), p, &ac_schedule(0.1), &TubeOptions::default())
            .unwrap();
        assert!(r.discrepancy > 0.1);
        assert!((r.record.target - r.c_p * (r.surface_variation + (p - 1.0) * r.discrepancy)).abs() < 1e-14);
        check_ac(&r);
    }
}

#[test]
fn ac_flat_tangential_pair_has_no_defect() {
    let (eta, zeta) = tangential_pair();
    let r = ac_limit_experiment(flat(), eta, zeta, 1.5, &ac_schedule(0.1), &TubeOptions::default()).unwrap();
    assert!(r.discrepancy.abs() < 1e-14);
    assert!(r.surface_variation.abs() > 0.05);
    check_ac(&r);
}

#[test]
fn ac_sphere_p2_matches_four_thirds_display() {
    let s = sphere(1.0);
    let eta: Arc<dyn VectorField> = Arc::new(
        VectorComponents::new(vec![
            poly(3, &[(0.4, &[0, 0, 1])], None),
            poly(3, &[(0.3, &[0, 0, 0]), (0.2, &[1, 1, 0])], None),
            poly(3, &[(0.5, &[0, 0, 1]), (-0.2, &[1, 0, 0])], None),
        ])
        .unwrap(),
    );
    let zeta: Arc<dyn VectorField> = Arc::new(ZeroField(3));
    let r = ac_limit_experiment(s, eta, zeta, 2.0, &ac_schedule(0.04), &TubeOptions::default()).unwrap();
    assert!((r.c_p - 4.0 / 3.0).abs() < 1e-12);
    check_ac(&r);
}

#[test]
fn ac_defect_is_affine_in_p_minus_one() {
    let (eta, zeta) = normal_pair();
    let ps = [1.25, 1.5, 2.0, 3.0];
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut disc = 0.0;
    for p in ps {
        let r = ac_limit_experiment(flat(), eta.clone(), zeta.clone(), p, &ac_schedule(0.1), &TubeOptions::default())
            .unwrap();
        xs.push(p - 1.0);
        ys.push(r.record.extrapolated / r.c_p - r.surface_variation);
        disc = r.discrepancy;
    }
    let fit = line_fit(&xs, &ys).unwrap();
    assert!((fit.slope - disc).abs() <= tol::LINEARITY_SLOPE * disc, "{fit:?} vs {disc}");
    assert!(fit.intercept.abs() <= tol::LINEARITY_INTERCEPT * disc.max(1.0), "{fit:?}");
}

#[test]
fn ac_rejects_too_large_epsilon_on_sphere() {
    let s = sphere(1.0);
    let z: Arc<dyn VectorField> = Arc::new(ZeroField(3));
    let err = ac_limit_experiment(s, z.clone(), z, 2.0, &ac_schedule(0.1), &TubeOptions::default()).unwrap_err();
    assert!(matches!(err, Error::EpsilonTooLarge { .. }), "{err}");
}

#[test]
fn ansatz_energy_tends_to_c_p_times_area() {
    let s = sphere(1.0);
    let e = ansatz_energy(&s, 2.0, 0.005, &TubeOptions::default()).unwrap();
    let target = c_p(2.0) * 4.0 * PI;
    assert!((e - target).abs() < 0.02 * target, "{e} vs {target}");
}

#[test]
fn equipartition_signed_distance_is_exact() {
    let e = equipartition_residuals(flat(), 2.0, &ac_schedule(0.1), 1.0, &TubeOptions::default()).unwrap();
    assert!(e.ab.values.iter().all(|v| v.abs() < 1e-12), "{:?}", e.ab.values);
    assert!(e.abphi.values.iter().all(|v| v.abs() < 1e-12));
}

#[test]
fn equipartition_quadratic_level_set_is_first_order() {
    let opts = TubeOptions {
        level: LevelSet::Quadratic,
        ..Default::default()
    };
    let e = equipartition_residuals(sphere(1.0), 2.0, &ac_schedule(0.04), 1.0, &opts).unwrap();
    assert!(e.ab.values[0] > 1e-3);
    assert!(e.ab.rate.unwrap() >= tol::EQUIPARTITION_MIN_RATE, "{:?}", e.ab.rate);
    assert!(e.abphi.rate.unwrap() >= tol::EQUIPARTITION_MIN_RATE, "{:?}", e.abphi.rate);
    // negative control: a stretched profile keeps an O(1) imbalance
    let bad = equipartition_residuals(sphere(1.0), 2.0, &ac_schedule(0.04), 2.0, &opts).unwrap();
    assert!(bad.ab.rate.unwrap().abs() < 0.1);
    assert!(*bad.ab.values.last().unwrap() > 1.0);
}

#[test]
fn tensor_pairings_on_sphere() {
    let weight = poly(3, &[(1.0, &[0, 0, 0]), (0.5, &[1, 0, 0])], None);
    for (p, idx) in [(2.0, vec![0, 0]), (3.0, vec![0, 0, 1, 1]), (2.5, vec![2, 2])] {
        let r = tensor_pairing_experiment(sphere(1.0), p, weight.clone(), &idx, &ac_schedule(0.04), &TubeOptions::default())
            .unwrap();
        assert!(r.record.target.abs() > 0.5);
        assert!(r.record.relative_gap() <= tol::TENSOR_GAP, "{idx:?}: {}", r.record.relative_gap());
        // pairings are symmetric in the index order
        for res in &r.record.residuals {
            assert!((res[0] - res[1]).abs() < 1e-12 * (1.0 + res[0].abs()));
        }
    }
    // odd pairing with a vanishing surface target
    let r = tensor_pairing_experiment(sphere(1.0), 2.0, weight, &[0, 1, 2, 2], &ac_schedule(0.04), &TubeOptions::default())
        .unwrap();
    assert!(r.record.target.abs() < tol::OFF_NORMAL);
    assert!(r.record.values.iter().all(|v| v.abs() < tol::OFF_NORMAL));
}

#[test]
fn tensor_pairings_on_flat_interface() {
    let bump = poly(2, &[(1.0, &[0, 0]), (0.4, &[0, 1])], square_bump());
    let r = tensor_pairing_experiment(flat(), 2.0, bump.clone(), &[0, 0], &ac_schedule(0.1), &TubeOptions::default())
        .unwrap();
    assert!(r.record.relative_gap() <= tol::TENSOR_GAP);
    for idx in [[0, 1], [1, 1]] {
        let r = tensor_pairing_experiment(flat(), 2.0, bump.clone(), &idx, &ac_schedule(0.1), &TubeOptions::default())
            .unwrap();
        assert!(r.record.values.iter().all(|v| v.abs() <= tol::OFF_NORMAL), "{idx:?}");
    }
    let err = tensor_pairing_experiment(flat(), 2.0, bump.clone(), &[0, 1, 1], &ac_schedule(0.1), &TubeOptions::default());
    assert!(matches!(err, Err(Error::InvalidArgument(_))));
    let err = tensor_pairing_experiment(flat(), 2.0, bump, &[0, 2], &ac_schedule(0.1), &TubeOptions::default());
    assert!(matches!(err, Err(Error::DimensionMismatch(_))));
}

fn filament() -> Arc<dyn Filament> {
    Arc::new(StraightFilament::new(1.0, 0.5, 4).unwrap())
}

fn gl_schedule() -> EpsilonSchedule {
    EpsilonSchedule::decades(0.1, 7, 2, Arc::new(InverseLog)).unwrap()
}

/// Transverse part `f(z)` plus a shear `c·x₁` along `p`.
fn transverse_field(conjugate: bool) -> Arc<dyn VectorField> {
    let s = if conjugate { -1.0 } else { 1.0 };
    Arc::new(
        VectorComponents::new(vec![
            poly(3, &[], None),
            poly(3, &[(1.0, &[0, 1, 0]), (0.5, &[1, 0, 0])], None),
            poly(3, &[(s, &[0, 0, 1])], None),
        ])
        .unwrap(),
    )
}

#[test]
fn gl_holomorphic_and_conjugate_fields() {
    let zero: Arc<dyn VectorField> = Arc::new(ZeroField(3));
    let holo = gl_limit_experiment(filament(), transverse_field(false), zero.clone(), &gl_schedule(), &FilamentOptions::default())
        .unwrap();
    assert!(holo.discrepancy.real_form.abs() < 1e-12);
    // shear c along the unit segment: δ²H¹ = c²
    assert!((holo.surface_variation - 0.25).abs() < 1e-12);
    assert!(holo.second.relative_gap() <= tol::GL_LIMIT_GAP, "{}", holo.second.relative_gap());
    let anti = gl_limit_experiment(filament(), transverse_field(true), zero, &gl_schedule(), &FilamentOptions::default())
        .unwrap();
    assert!((anti.discrepancy.real_form - 4.0).abs() < 1e-12);
    assert!((anti.discrepancy.real_form - anti.discrepancy.dbar_form).abs() < 1e-10);
    assert!((anti.second.target - PI * (0.25 + 4.0)).abs() < 1e-10);
    assert!(anti.second.relative_gap() <= tol::GL_LIMIT_GAP, "{}", anti.second.relative_gap());
    for r in [&holo, &anti] {
        assert!(r.energy.relative_gap() <= tol::GL_ENERGY_GAP);
        for res in &r.second.residuals {
            assert!(res[1].abs() <= tol::ORACLE_ABS.max(tol::ORACLE_REL * r.second.target.abs()));
        }
        // the raw values approach the target from one side, slowly
        let gaps: Vec<f64> = (0..r.second.values.len()).map(|k| r.second.point_gap(k)).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    }
}

#[test]
fn gl_zero_fields_give_zero() {
    let zero: Arc<dyn VectorField> = Arc::new(ZeroField(3));
    let sched = EpsilonSchedule::decades(0.1, 4, 1, Arc::new(InverseLog)).unwrap();
    let r = gl_limit_experiment(filament(), zero.clone(), zero, &sched, &FilamentOptions::default()).unwrap();
    assert!(r.second.values.iter().all(|v| *v == 0.0));
    assert_eq!(r.second.target, 0.0);
}

#[test]
fn volume_admissibility_examples() {
    let r = 1.3;
    let s = sphere(r);
    let a = 0.7;
    let dil = LinearField::dilation(3, a);
    let zero = ZeroField(3);
    let v = volume_admissibility(s.as_ref(), &dil, &zero, 12).unwrap();
    let ball = 4.0 / 3.0 * PI * r.powi(3);
    assert!((v.c1 - 3.0 * a * ball).abs() < 1e-10);
    assert!((v.c1 - v.flux).abs() < tol::VOLUME_FLUX);
    let rot: Arc<dyn VectorField> = Arc::new(LinearField::rotation(&[0.3, -0.2, 0.9]).unwrap());
    let v = volume_admissibility(s.as_ref(), rot.as_ref(), &ZetaEta::new(rot.clone()), 12).unwrap();
    assert!(v.c1.abs() < 1e-12 && v.c2.abs() < 1e-12);
    let mut g = rng(81);
    for _ in 0..10 {
        let ball = Some(Cutoff::Ball {
            center: vec![0.1, -0.2, 0.0],
            radius: 1.8,
            power: 3,
        });
        let eta: Arc<dyn VectorField> = Arc::new(random_vector_polynomial(&mut g, 3, 2, 1.0, ball));
        let v = volume_admissibility(s.as_ref(), eta.as_ref(), &ZetaEta::new(eta.clone()), 12).unwrap();
        assert!(v.c2.abs() <= tol::VOLUME_C2, "{v:?}");
        assert!(v.c1.abs() > 1e-4);
        assert!((v.c1 - v.flux).abs() <= tol::VOLUME_FLUX, "{v:?}");
    }
    let err = volume_admissibility(flat().as_ref(), &ZeroField(2), &ZeroField(2), 4);
    assert!(matches!(err, Err(Error::UnsupportedBoundary(_))));
}

fn harmonic(degree: u32, axis: &[f64]) -> SurfaceFunction {
    SurfaceFunction::new(Arc::new(SphericalHarmonic::new(degree, vec(axis), vec(&[0.0; 3]), 1.0).unwrap()))
}

#[test]
fn constrained_poincare_examples() {
    for r in [1.0, 1.5] {
        let s = sphere(r);
        let one = constrained_poincare_check(s.clone(), harmonic(1, &[0.2, 0.0, 1.0]), 0.5 * r).unwrap();
        assert!(one.lhs.abs() < 1e-8 && one.rhs.abs() < 1e-8, "{one:?}");
        let two = constrained_poincare_check(s.clone(), harmonic(2, &[0.0, 1.0, 1.0]), 0.5 * r).unwrap();
        let expected = 4.0 / (r * r) * two.norm_sq;
        assert!((two.lhs - two.rhs).abs() <= tol::POINCARE * (1.0 + two.rhs.abs()), "{two:?}");
        assert!((two.rhs - expected).abs() <= 1e-8 * expected);
        assert!(two.lhs > 0.0);
        let zero = constrained_poincare_check(s.clone(), SurfaceFunction::new(poly(3, &[], None)), 0.5 * r).unwrap();
        assert_eq!((zero.lhs, zero.rhs), (0.0, 0.0));
        let err = constrained_poincare_check(s, harmonic(0, &[0.0, 0.0, 1.0]), 0.5 * r);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }
}

/// `η = e₃·z(1 − |x|²)` inside a ball: no flux through the unit sphere, but
/// the flux through nearby spheres does not vanish.
fn off_shell_field() -> Arc<dyn VectorField> {
    let ball = Some(Cutoff::Ball {
        center: vec![0.0; 3],
        radius: 1.6,
        power: 3,
    });
    Arc::new(
        VectorComponents::new(vec![
            poly(3, &[], None),
            poly(3, &[], None),
            poly(3, &[(1.0, &[0, 0, 1]), (-1.0, &[2, 0, 1]), (-1.0, &[0, 2, 1]), (-1.0, &[0, 0, 3])], ball),
        ])
        .unwrap(),
    )
}

#[test]
fn perturbed_field_examples() {
    let s = sphere(1.0);
    let table = Arc::new(optimal_profile(2.0).unwrap());
    let radial: Arc<dyn VectorField> = Arc::new(LinearField::dilation(3, 1.0));
    let sched = ac_schedule(0.04);
    let translation_mode = Arc::new(innervar::geometry::NormalExtension::new(s.clone(), harmonic(1, &[0.0, 0.0, 1.0]), 0.5).unwrap());
    let mut hs = Vec::new();
    for &eps in sched.epsilons() {
        let u = ansatz_field(s.clone(), table.clone(), eps, LevelSet::SignedDistance).unwrap();
        let quad = BulkQuadrature::tube(s.as_ref(), eps * table.s_max(), eps, 10).unwrap();
        let sym = perturbed_field(s.as_ref(), &u, translation_mode.clone(), radial.clone(), &quad).unwrap();
        assert!(sym.h.abs() < 1e-14);
        let pf = perturbed_field(s.as_ref(), &u, off_shell_field(), radial.clone(), &quad).unwrap();
        assert!(pf.residual.abs() <= 1e-9, "{}", pf.residual);
        hs.push(pf.h);
    }
    assert!(hs[0].abs() > 1e-6);
    let rate = power_rate(sched.epsilons(), &hs).unwrap();
    assert!(rate >= tol::PERTURBATION_MIN_RATE, "{rate} {hs:?}");
    // a rotation is tangent to the sphere: no flux, no correction possible
    let u = ansatz_field(s.clone(), table.clone(), 0.02, LevelSet::SignedDistance).unwrap();
    let quad = BulkQuadrature::tube(s.as_ref(), 0.02 * table.s_max(), 0.02, 10).unwrap();
    let rot: Arc<dyn VectorField> = Arc::new(LinearField::rotation(&[0.0, 0.0, 1.0]).unwrap());
    let err = perturbed_field(s.as_ref(), &u, off_shell_field(), rot, &quad);
    assert!(matches!(err, Err(Error::DegenerateReference(_))));
}

#[test]
fn quadratic_forms_on_sphere() {
    let s = sphere(1.0);
    let sched = ac_schedule(0.04);
    let two = quadratic_forms(s.clone(), harmonic(2, &[0.0, 0.0, 1.0]), 0.9, &sched, &TubeOptions::default()).unwrap();
    let target = two.c2 * two.limit_form;
    assert!((two.corrected.extrapolated - target).abs() <= tol::FORMS_GAP * target);
    for res in &two.corrected.residuals {
        // corrected form against the inner-variation route
        assert!((res[0] - target).abs() < 1e-6 * target);
        assert!(res[1].abs() < 2e-3);
    }
    let one = quadratic_forms(s.clone(), harmonic(1, &[0.0, 0.0, 1.0]), 0.9, &sched, &TubeOptions::default()).unwrap();
    assert!(one.limit_form.abs() < 1e-10);
    let norm_sq = 4.0 * PI / 3.0;
    assert!(one.corrected.extrapolated.abs() <= tol::FORMS_GAP * norm_sq);
    // the ansatz is not critical: the additive form alone keeps an O(1) offset
    assert!(one.raw.values.iter().all(|v| *v > norm_sq));
    let zero = quadratic_forms(s.clone(), SurfaceFunction::new(poly(3, &[], None)), 0.9, &sched, &TubeOptions::default())
        .unwrap();
    assert!(zero.raw.values.iter().chain(&zero.corrected.values).all(|v| *v == 0.0));
    let err = quadratic_forms(s, harmonic(2, &[0.0, 0.0, 1.0]), 0.3, &sched, &TubeOptions::default());
    assert!(matches!(err, Err(Error::EpsilonTooLarge { .. })));
}

#[test]
fn schedules_and_records() {
    let m: Arc<dyn Extrapolation> = Arc::new(LinearEps);
    assert!(EpsilonSchedule::new(vec![], m.clone()).is_err());
    assert!(EpsilonSchedule::new(vec![0.1, 0.1], m.clone()).is_err());
    assert!(EpsilonSchedule::new(vec![0.1, 0.2], m.clone()).is_err());
    assert!(EpsilonSchedule::new(vec![0.1, -0.1], m.clone()).is_err());
    let s = EpsilonSchedule::decades(1e-1, 5, 1, Arc::new(InverseLog)).unwrap();
    assert!((s.epsilons()[4] - 1e-5).abs() < 1e-18);
    assert_eq!(ExtrapolationRegistry::default().names(), vec!["inverse-log", "linear-eps"]);
    assert!(ExtrapolationRegistry::default().get("cubic").is_err());

    // exact on the model
    let eps = [0.1, 0.05, 0.025, 0.0125, 0.00625];
    let lin: Vec<f64> = eps.iter().map(|e| 2.0 + 3.0 * e).collect();
    assert!((extrapolate(&LinearEps, &eps, &lin) - 2.0).abs() < 1e-13);
    assert!((observed_rate(&eps, &lin).unwrap() - 1.0).abs() < 1e-10);
    let quad: Vec<f64> = eps.iter().map(|e| 1.0 + e * e).collect();
    assert!((observed_rate(&eps, &quad).unwrap() - 2.0).abs() < 1e-10);
    let logm: Vec<f64> = eps.iter().map(|e| 5.0 - 2.0 / e.ln().abs()).collect();
    assert!((extrapolate(&InverseLog, &eps, &logm) - 5.0).abs() < 1e-12);
    let pw: Vec<f64> = eps.iter().map(|e| 0.3 * e.powf(1.5)).collect();
    assert!((power_rate(&eps, &pw).unwrap() - 1.5).abs() < 1e-12);

    let rec = ConvergenceRecord::new("t", &LinearEps, eps.to_vec(), lin, vec![[0.0; 2]; 5], 2.5);
    assert_eq!(rec.model, "linear-eps");
    assert_eq!(rec.gap, rec.recomputed_gap());
    assert!((rec.gap - 0.5 / 3.5).abs() < 1e-12);
    assert!((rec.relative_gap() - 0.5 / 2.5).abs() < 1e-12);
    assert!((rec.point_gap(0) - 0.2 / 3.5).abs() < 1e-12);
}

#[test]
fn sweep_keeps_schedule_order() {
    let s = EpsilonSchedule::geometric(1.0, 32, Arc::new(LinearEps)).unwrap();
    let out = s.sweep(|e| Ok(e * 2.0)).unwrap();
    for (a, b) in out.iter().zip(s.epsilons()) {
        assert_eq!(*a, 2.0 * b);
    }
    let err = s.sweep(|e| if e < 0.01 { Err(Error::Numerical("x".into())) } else { Ok(e) });
    assert!(err.is_err());
}

#[test]
fn surface_targets_are_deterministic() {
    let (eta, zeta) = normal_pair();
    let a = area_second_inner_variation(flat().as_ref(), eta.as_ref(), zeta.as_ref());
    let b = area_second_inner_variation(flat().as_ref(), eta.as_ref(), zeta.as_ref());
    assert_eq!(a.to_bits(), b.to_bits());
}
