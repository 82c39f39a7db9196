//! Library results against oracles built here from first principles: the
//! coordinate metric, hand-rolled finite differences and textbook formulas.

use std::f64::consts::TAU;

use nalgebra::{Matrix2, Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2_geom::families::{
    geodesic_curvature, Conoid, HopfCylinder, HyperbolicCurve, LightconeSurface, Pitch, ProfileFunction,
};
use sl2_geom::group::{chart_to_group, embed_ads, group_to_chart};
use sl2_geom::metric::{connection_table, curvature_table};
use sl2_geom::surface::{sample, Immersion};
use sl2_geom::{ChartPoint, Frame, MetricParam};

type V3 = Vector3<f64>;
type M3 = Matrix3<f64>;

const NUS: [f64; 2] = [1.0, -1.0];

/// Coordinate metric of `g[nu]` in `(x, y, theta)`, from the coframe
/// `dx/2y, dy/2y, dtheta + dx/2y` with weights `(1, 1, nu)`.
#[rustfmt::skip]
fn coord_metric(q: &V3, nu: f64) -> M3 {
    let y = q[1];
    M3::new(
        (1.0 + nu) / (4.0 * y * y), 0.0, nu / (2.0 * y),
        0.0, 1.0 / (4.0 * y * y), 0.0,
        nu / (2.0 * y), 0.0, nu,
    )
}

/// Columns are the coordinate vectors of `e1 = 2y d_x - d_theta`,
/// `e2 = 2y d_y`, `e3 = d_theta`.
fn frame(q: &V3) -> M3 {
    let y = q[1];
    M3::new(2.0 * y, 0.0, 0.0, 0.0, 2.0 * y, 0.0, -1.0, 0.0, 1.0)
}

fn d5<T>(f: impl Fn(f64) -> T, t: f64, h: f64) -> T
where
    T: std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    (f(t + h) - f(t - h)) * (8.0 / (12.0 * h)) + (f(t - 2.0 * h) - f(t + 2.0 * h)) * (1.0 / (12.0 * h))
}

/// `Gamma^c_ab` by differentiating the coordinate metric.
fn christoffel(q: &V3, nu: f64) -> [M3; 3] {
    let h = 1e-4 * q[1];
    let dg: [M3; 3] = [0, 1, 2].map(|k| {
        let e = V3::ith(k, 1.0);
        d5(|t| coord_metric(&(q + e * t), nu), 0.0, h)
    });
    let gi = coord_metric(q, nu).try_inverse().unwrap();
    [0, 1, 2].map(|c| {
        let mut m = M3::zeros();
        for a in 0..3 {
            for b in 0..3 {
                let mut s = 0.0;
                for d in 0..3 {
                    s += gi[(c, d)] * (dg[a][(d, b)] + dg[b][(d, a)] - dg[d][(a, b)]);
                }
                m[(a, b)] = 0.5 * s;
            }
        }
        m
    })
}

/// `nabla_X Y` in coordinates for coordinate vector fields given as functions.
fn nabla(x: &V3, y: impl Fn(&V3) -> V3, q: &V3, nu: f64) -> V3 {
    let gamma = christoffel(q, nu);
    let dy = d5(|t| y(&(q + x * t)), 0.0, 1e-4 * q[1]);
    let yq = y(q);
    dy + V3::from_fn(|c, _| (x.transpose() * gamma[c] * yq)[0])
}

fn random_point(rng: &mut ChaCha8Rng) -> V3 {
    V3::new(rng.random_range(-2.0..2.0), rng.random_range(0.3..3.0), rng.random_range(0.0..TAU))
}

#[test]
fn connection_table_from_the_coordinate_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for nu in NUS.into_iter().chain([0.5, -2.0]) {
        let nup = MetricParam::new(nu).unwrap();
        for _ in 0..30 {
            let q = random_point(&mut rng);
            for i in Frame::ALL {
                for j in Frame::ALL {
                    let ej = |p: &V3| frame(p).column(j.index()).into_owned();
                    let c = nabla(&frame(&q).column(i.index()).into_owned(), ej, &q, nu);
                    let frame_comps = frame(&q).try_inverse().unwrap() * c;
                    let table = connection_table(i, j, nup);
                    let err = (frame_comps - V3::new(table[0], table[1], table[2])).abs().max();
                    assert!(err < 1e-7, "nu {nu} ({i:?},{j:?}): {err}");
                }
            }
        }
    }
}

/// `R(e_i,e_j)e_k` from the connection table alone: for left-invariant
/// fields `nabla_X Y` is algebraic, so
/// `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`
/// with `[X,Y] = nabla_X Y - nabla_Y X`.
#[test]
fn curvature_table_from_the_connection_table() {
    for nu in [1.0, -1.0, 0.5, -2.0, 3.0] {
        let nup = MetricParam::new(nu).unwrap();
        let conn = |x: &V3, y: &V3| {
            let mut out = V3::zeros();
            for i in Frame::ALL {
                for j in Frame::ALL {
                    let t = connection_table(i, j, nup);
                    out += V3::new(t[0], t[1], t[2]) * (x[i.index()] * y[j.index()]);
                }
            }
            out
        };
        for i in Frame::ALL {
            for j in Frame::ALL {
                for k in Frame::ALL {
                    let (x, y, z) = (V3::ith(i.index(), 1.0), V3::ith(j.index(), 1.0), V3::ith(k.index(), 1.0));
                    let br = conn(&x, &y) - conn(&y, &x);
                    let r = conn(&x, &conn(&y, &z)) - conn(&y, &conn(&x, &z)) - conn(&br, &z);
                    let t = curvature_table(i, j, k, nup);
                    assert!(
                        (r - V3::new(t[0], t[1], t[2])).abs().max() < 1e-12,
                        "nu {nu} R({i:?},{j:?}){k:?}: {r:?} vs {t:?}"
                    );
                }
            }
        }
        // vertical sectional curvature K(e1, e3) = nu^2 / nu
        let t = curvature_table(Frame::E1, Frame::E3, Frame::E3, nup);
        assert!((t[0] - nu * nu).abs() < 1e-15);
    }
}

#[test]
fn chart_map_is_the_iwasawa_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..200 {
        let q = random_point(&mut rng);
        let n = Matrix2::new(1.0, q[0], 0.0, 1.0);
        let a = Matrix2::new(q[1].sqrt(), 0.0, 0.0, 1.0 / q[1].sqrt());
        let (s, c) = q[2].sin_cos();
        let k = Matrix2::new(c, s, -s, c);
        let p = ChartPoint::new(q[0], q[1], q[2]).unwrap();
        let g = chart_to_group(&p).unwrap();
        assert!((g.matrix() - n * a * k).abs().max() < 1e-13);
        let back = group_to_chart(&g).unwrap();
        assert!((back.x - p.x).abs() + (back.y - p.y).abs() + (back.theta - p.theta_reduced()).abs() < 1e-10);
        let m = g.matrix();
        let ads = embed_ads(&g).unwrap();
        // -det of the 2x2 matrix is the quadric value
        assert!((ads.quadric() + m.determinant()).abs() < 1e-12);
    }
}

/// Conformal-factor formula for the metric `(dx^2 + dy^2)/4y^2`:
/// `kappa = 2y kappa_e + 2 x' / |c'|`, with `kappa_e` the Euclidean
/// curvature, all from finite differences of the curve's position.
fn geodesic_curvature_oracle(c: &HyperbolicCurve, v: f64) -> f64 {
    let pos = |t: f64| nalgebra::Vector2::new(c.jet(t).x, c.jet(t).y);
    let h = 1e-3;
    let d1 = d5(pos, v, h);
    let d2 = (pos(v + h) - pos(v) * 2.0 + pos(v - h)) * (1.0 / (h * h));
    let speed = d1.norm();
    let ke = (d1[0] * d2[1] - d1[1] * d2[0]) / speed.powi(3);
    2.0 * c.jet(v).y * ke + 2.0 * d1[0] / speed
}

#[test]
fn geodesic_curvature_against_the_conformal_formula() {
    for kappa in [-3.0, -2.0, -0.7, 0.0, 0.4, 1.5, 2.0, 2.5, 4.0] {
        let c = HyperbolicCurve::with_curvature(kappa).unwrap();
        let (a, b) = c.domain;
        for s in [0.2, 0.5, 0.8] {
            let v = a + s * (b - a);
            let oracle = geodesic_curvature_oracle(&c, v);
            assert!((oracle - kappa).abs() < 1e-5, "kappa {kappa}: oracle {oracle}");
            assert!((geodesic_curvature(&c, v).unwrap() - kappa).abs() < 1e-9);
        }
    }
}

/// Mean curvature entirely in coordinates: tangents by finite differences of
/// `eval`, normal from the coordinate cross product raised with the metric,
/// second form through the Christoffel symbols.
fn mean_curvature_oracle(s: &dyn Immersion, u: f64, v: f64, nu: f64) -> f64 {
    let at = |a: f64, b: f64| {
        let p = s.eval(a, b).unwrap();
        V3::new(p.x, p.y, p.theta)
    };
    let h = 1e-3;
    let q = at(u, v);
    let pu = d5(|t| at(t, v), u, h);
    let pv = d5(|t| at(u, t), v, h);
    let puu = d5(|t| d5(|r| at(r, v), t, h), u, h);
    let pvv = d5(|t| d5(|r| at(u, r), t, h), v, h);
    let puv = d5(|t| d5(|r| at(t, r), v, h), u, h);
    let g = coord_metric(&q, nu);
    let n = g.try_inverse().unwrap() * pu.cross(&pv);
    let n = n / (n.transpose() * g * n)[0].sqrt();
    let gamma = christoffel(&q, nu);
    let cov = |a: &V3, b: &V3, ab: &V3| ab + V3::from_fn(|c, _| (a.transpose() * gamma[c] * b)[0]);
    let ip = |a: &V3, b: &V3| (a.transpose() * g * b)[0];
    let first = Matrix2::new(ip(&pu, &pu), ip(&pu, &pv), ip(&pu, &pv), ip(&pv, &pv));
    let second = Matrix2::new(
        ip(&cov(&pu, &pu, &puu), &n),
        ip(&cov(&pu, &pv, &puv), &n),
        ip(&cov(&pu, &pv, &puv), &n),
        ip(&cov(&pv, &pv, &pvv), &n),
    );
    0.5 * (first.try_inverse().unwrap() * second).trace()
}

#[test]
fn mean_curvature_against_the_coordinate_pipeline() {
    let surfaces: Vec<Box<dyn Immersion>> = vec![
        Box::new(HopfCylinder::new(HyperbolicCurve::with_curvature(1.0).unwrap()).unwrap()),
        Box::new(HopfCylinder::new(HyperbolicCurve::with_curvature(3.0).unwrap()).unwrap()),
        Box::new(Conoid::helicoidal(Pitch(0.7), 0.3).unwrap()),
        Box::new(
            Conoid::new(sl2_geom::surface::Domain::new((-1.0, 1.0), (0.5, 2.0)).unwrap(), |u: f64| {
                (u * u, 2.0 * u, 2.0)
            })
            .unwrap(),
        ),
        Box::new(LightconeSurface::new(ProfileFunction::exp_sine([1.2, 0.3, 0.4, 1.3, 0.2], (-1.0, 1.0)).unwrap())),
    ];
    for s in &surfaces {
        for nu in NUS {
            let nup = MetricParam::new(nu).unwrap();
            for (u, v) in s.domain().grid(4, 4) {
                let Ok(sm) = sample(s.as_ref(), u, v, nup) else { continue };
                let oracle = mean_curvature_oracle(s.as_ref(), u, v, nu);
                assert!((sm.shape.h - oracle).abs() < 1e-5, "nu {nu} at ({u},{v}): {} vs {oracle}", sm.shape.h);
            }
        }
    }
}
