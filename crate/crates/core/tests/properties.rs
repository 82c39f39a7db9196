use std::f64::consts::TAU;

use proptest::prelude::*;
use sl2_geom::families::{Conoid, HopfCylinder, HyperbolicCurve, LightconeSurface, Pitch, ProfileFunction};
use sl2_geom::group::{adjoint_act, chart_to_group, classify_orbit, embed_ads, group_to_chart};
use sl2_geom::metric::{curvature, curvature_tensor, sectional_curvature};
use sl2_geom::suite::{FamilySpec, ReportRow};
use sl2_geom::surface::{sample, Immersion};
use sl2_geom::{ChartPoint, LieVector, MetricParam, Vec3};

fn nu_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(-1.0), 0.2f64..3.0, -3.0f64..-0.2]
}

fn vec3() -> impl Strategy<Value = Vec3> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b, c)| Vec3::new(a, b, c))
}

fn chart() -> impl Strategy<Value = ChartPoint> {
    (-3.0f64..3.0, -2.0f64..2.0, -10.0f64..10.0).prop_map(|(x, ly, t)| ChartPoint::new(x, ly.exp(), t).unwrap())
}

fn surface(kind: u8, p: f64) -> Box<dyn Immersion> {
    match kind {
        0 => Box::new(HopfCylinder::new(HyperbolicCurve::with_curvature(4.0 * p - 2.0).unwrap()).unwrap()),
        1 => Box::new(Conoid::helicoidal(Pitch(2.0 * p - 1.0), p).unwrap()),
        _ => Box::new(LightconeSurface::new(
            ProfileFunction::exp_sine([1.0, p - 0.5, 0.3, 1.0 + p, 0.0], (-1.0, 1.0)).unwrap(),
        )),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_is_unit_and_orthogonal(kind in 0u8..3, p in 0.0f64..1.0, s in 0.05f64..0.95, t in 0.05f64..0.95, nu in prop_oneof![Just(1.0), Just(-1.0)]) {
        let surf = surface(kind, p);
        let (u, v) = surf.domain().lerp(s, t);
        let nu = MetricParam::new(nu).unwrap();
        // timelike normals are legitimately rejected
        if let Ok(sm) = sample(surf.as_ref(), u, v, nu) {
            let scale = 1.0 + sm.jet.phi_u.norm() + sm.jet.phi_v.norm();
            prop_assert!(nu.inner(&sm.normal, &sm.jet.phi_u).abs() < 1e-12 * scale);
            prop_assert!(nu.inner(&sm.normal, &sm.jet.phi_v).abs() < 1e-12 * scale);
            prop_assert!((nu.inner(&sm.normal, &sm.normal) - 1.0).abs() < 1e-12);
            prop_assert!((sm.first.e - nu.inner(&sm.jet.phi_u, &sm.jet.phi_u)).abs() < 1e-12 * scale * scale);
        }
    }

    #[test]
    fn curvature_symmetries(x in vec3(), y in vec3(), z in vec3(), w in vec3(), nu in nu_strategy()) {
        let nu = MetricParam::new(nu).unwrap();
        prop_assert!((curvature(&x, &y, &z, nu) + curvature(&y, &x, &z, nu)).abs().max() < 1e-12);
        let a = curvature_tensor(&x, &y, &z, &w, nu);
        prop_assert!((a + curvature_tensor(&x, &y, &w, &z, nu)).abs() < 1e-12);
        prop_assert!((a - curvature_tensor(&z, &w, &x, &y, nu)).abs() < 1e-12);
        let bianchi = curvature(&x, &y, &z, nu) + curvature(&y, &z, &x, nu) + curvature(&z, &x, &y, nu);
        prop_assert!(bianchi.abs().max() < 1e-12);
    }

    #[test]
    fn lorentzian_space_form(x in vec3(), y in vec3()) {
        let nu = MetricParam::LORENTZIAN;
        let gram = nu.inner(&x, &x) * nu.inner(&y, &y) - nu.inner(&x, &y).powi(2);
        prop_assume!(gram.abs() > 1e-3);
        prop_assert!((sectional_curvature(&x, &y, nu).unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn chart_round_trip_and_quadric(p in chart()) {
        let g = chart_to_group(&p).unwrap();
        prop_assert!((g.det() - 1.0).abs() < 1e-10);
        let q = group_to_chart(&g).unwrap();
        prop_assert!((q.x - p.x).abs() < 1e-8 * (1.0 + p.x.abs()));
        prop_assert!((q.y - p.y).abs() < 1e-8 * p.y);
        let dtheta = (q.theta - p.theta_reduced()).rem_euclid(TAU);
        prop_assert!(dtheta.min(TAU - dtheta) < 1e-8);
        prop_assert!((embed_ads(&g).unwrap().quadric() + 1.0).abs() < 1e-9 * (1.0 + g.matrix().norm_squared()));
    }

    #[test]
    fn adjoint_action_preserves_orbit_type(p in chart(), a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0) {
        let x = LieVector::new(a, b, c);
        let y = adjoint_act(&p.to_group(), &x).unwrap();
        let scale = 1.0 + p.to_group().matrix().norm_squared().powi(2);
        prop_assert!((x.det() - y.det()).abs() < 1e-10 * scale);
        prop_assume!(x.det().abs() > 1e-3);
        prop_assert!(classify_orbit(&x).same_kind(&classify_orbit(&y)));
    }

    #[test]
    fn row_pass_flag(expected in -10.0f64..10.0, computed in -10.0f64..10.0, tol in 1e-12f64..1.0) {
        let r = ReportRow::equal("c", "l", expected, computed, tol);
        prop_assert_eq!(r.pass, r.residual <= r.tolerance);
        prop_assert_eq!(r.residual, (computed - expected).abs());
    }

    #[test]
    fn family_spec_round_trip(k in -5.0f64..5.0, mu in -3.0f64..3.0, a in -1.0f64..1.0) {
        for spec in [FamilySpec::hopf(k), FamilySpec::new(sl2_geom::suite::FamilyKind::Conoid { mu, a })] {
            let text = spec.to_string();
            prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
        }
    }
}
