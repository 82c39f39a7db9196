use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sl2_geom::families::{Conoid, HopfCylinder, HyperbolicCurve, LightconeSurface, Pitch, ProfileFunction};
use sl2_geom::gauss::{classify_gauss_map, Grid};
use sl2_geom::metric::{curvature, sectional_curvature};
use sl2_geom::suite::{run_suite, SuiteConfig, SuiteKind};
use sl2_geom::surface::sample;
use sl2_geom::{MetricParam, Vec3};

fn pointwise(c: &mut Criterion) {
    let nu = MetricParam::new(-1.0).unwrap();
    let (x, y, z) = (Vec3::new(0.3, -0.2, 0.9), Vec3::new(-0.5, 0.7, 0.1), Vec3::new(0.2, 0.4, -0.6));
    c.bench_function("curvature", |b| b.iter(|| curvature(black_box(&x), black_box(&y), black_box(&z), nu)));
    c.bench_function("sectional_curvature", |b| b.iter(|| sectional_curvature(black_box(&x), black_box(&y), nu)));
}

fn sampling(c: &mut Criterion) {
    let nu = MetricParam::new(1.0).unwrap();
    let hopf = HopfCylinder::new(HyperbolicCurve::with_curvature(1.5).unwrap()).unwrap();
    let conoid = Conoid::helicoidal(Pitch(0.7), 0.3).unwrap();
    let lightcone = LightconeSurface::new(ProfileFunction::exp_sine([1.2, 0.3, 0.4, 1.3, 0.2], (-1.0, 1.0)).unwrap());
    c.bench_function("sample/hopf", |b| b.iter(|| sample(&hopf, black_box(0.4), black_box(0.1), nu)));
    c.bench_function("sample/conoid", |b| b.iter(|| sample(&conoid, black_box(0.4), black_box(1.1), nu)));
    c.bench_function("sample/lightcone", |b| b.iter(|| sample(&lightcone, black_box(0.4), black_box(0.1), nu)));
    let grid = Grid::new(10, 10).unwrap();
    c.bench_function("classify_gauss_map/hopf", |b| b.iter(|| classify_gauss_map(&hopf, grid)));
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_suite");
    g.sample_size(10);
    for suite in [SuiteKind::Connection, SuiteKind::Curvature, SuiteKind::Sasaki] {
        let cfg = SuiteConfig { suite, samples: Some(100), ..SuiteConfig::default() };
        g.bench_function(suite.to_string(), |b| b.iter(|| run_suite(&cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, pointwise, sampling, suites);
criterion_main!(benches);
