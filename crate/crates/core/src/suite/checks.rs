//! Row producers for each suite.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Family, FamilyKind, FamilySpec, GridSize, ProfileSpec, Report, ReportRow, SuiteConfig, SuiteKind};
use crate::error::{GeomError, Result};
use crate::families::{
    geodesic_curvature, lightcone_mean_curvature, minimal_ode_residual, riccati_residual, ComplexCircle, CurveKind,
};
use crate::gauss::{
    case1_closed_forms, case1_frame, case1_sanini, case2_curvatures, case2_frame, case2_sanini, classify_gauss_map,
    left_translate_to_identity, normal_angle, principal_angle_in, sanini_from_sample, sanini_in_frame,
    second_form_on_vectors, Grid, NormalComponents,
};
use crate::group::{algebra_scalar_product, embed_ads, ChartPoint, MetricSign};
use crate::metric::sasaki::{apply_f, curvature_sasaki_form, sasaki_residuals};
use crate::metric::{
    bracket_table, connection_table, curvature, curvature_table, oracle, sectional_curvature, Frame, MetricParam,
};
use crate::surface::{gauss_formula_residual, intrinsic_gauss_curvature, sample, Domain, Immersion, SurfaceSample};
use crate::Vec3;

pub const TOL_CONNECTION: f64 = 1e-5;
pub const TOL_COMPOSITION: f64 = 1e-6;
pub const TOL_CLOSED_FORM: f64 = 1e-9;
pub const TOL_SECTIONAL: f64 = 1e-8;
pub const TOL_SASAKI: f64 = 1e-6;
pub const TOL_METRIC_DISPLAY: f64 = 1e-8;
pub const TOL_MEAN_CURVATURE: f64 = 1e-6;
pub const TOL_GAUSS_CURVATURE: f64 = 1e-4;
pub const TOL_GAUSS_FORMULA: f64 = 1e-6;
pub const TOL_UMBILIC_DEFECT: f64 = 1e-6;
pub const TOL_RICCATI: f64 = 1e-7;
pub const TOL_ODE: f64 = 1e-9;
pub const TOL_INVARIANCE: f64 = 1e-9;
/// Lower bound on the umbilic defect of the perturbed control profile.
pub const CONTROL_DEFECT: f64 = 1e-2;
pub const TOL_PROOF_FORMULA: f64 = 1e-8;
pub const TOL_UNIT: f64 = 1e-10;
pub const TOL_QUADRIC: f64 = 1e-10;
pub const TOL_CIRCLE_QUADRIC: f64 = 1e-9;
pub const TOL_EXPONENTIAL_FORM: f64 = 1e-8;
/// Normals with `|c|` below this are treated as horizontal.
pub const HORIZONTAL_NORMAL: f64 = 1e-6;

const NUS: [MetricParam; 2] = [MetricParam::RIEMANNIAN, MetricParam::LORENTZIAN];

#[derive(Clone, Copy)]
enum Stream {
    Connection = 1,
    Curvature = 2,
    Sectional = 3,
    Sasaki = 4,
    Ads = 5,
    Profiles = 6,
}

struct Ctx {
    seed: u64,
    samples: Option<usize>,
    tol: Option<f64>,
    grid: GridSize,
}

impl Ctx {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn count(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// Independent ChaCha8 stream per (check group, nu sign).
    fn rng(&self, stream: Stream, nu: MetricParam) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(2 * stream as u64 + u64::from(nu.value() < 0.0));
        r
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let ctx = Ctx { seed: cfg.seed, samples: cfg.samples, tol: cfg.tol, grid: cfg.grid };
    let nu = MetricParam::new(cfg.nu)?;
    let mut rows = Vec::new();
    match cfg.suite {
        SuiteKind::Connection => connection(&ctx, nu, &mut rows),
        SuiteKind::Curvature => curvature_suite(&ctx, nu, &mut rows),
        SuiteKind::Sasaki => sasaki(&ctx, nu, &mut rows),
        SuiteKind::Family => family(&ctx, cfg.family.as_ref().expect("validated"), nu, &mut rows)?,
        SuiteKind::Gauss => gauss(&ctx, cfg.family.as_ref().expect("validated"), &mut rows)?,
        SuiteKind::Ads => ads(&ctx, cfg.family.as_ref(), &mut rows)?,
        SuiteKind::All => all(&ctx, &mut rows)?,
    }
    Ok(Report { rows })
}

fn all(ctx: &Ctx, rows: &mut Vec<ReportRow>) -> Result<()> {
    for nu in NUS {
        connection(ctx, nu, rows);
        curvature_suite(ctx, nu, rows);
        sasaki(ctx, nu, rows);
    }
    ads(ctx, None, rows)?;
    let mut catalogue: Vec<FamilySpec> = Vec::new();
    catalogue.extend([0.0, 1.0, 2.0, 3.0].map(FamilySpec::hopf));
    catalogue.extend([0.3, 1.0, 2.0].map(FamilySpec::conoid));
    catalogue.push(FamilySpec::lightcone(ProfileSpec::Umbilic { a: 1.0, u0: 0.0 }));
    catalogue.push(FamilySpec::lightcone(ProfileSpec::Minimal { a: 1.0, b: 0.0 }));
    catalogue.push(FamilySpec::lightcone(ProfileSpec::Perturbed { a: 1.0, u0: 0.0, eps: 0.1 }));
    let mut rng = ctx.rng(Stream::Profiles, MetricParam::RIEMANNIAN);
    for _ in 0..20 {
        catalogue.push(FamilySpec::lightcone(ProfileSpec::ExpSine { c: random_profile_coefficients(&mut rng) }));
    }
    for nu in NUS {
        for spec in &catalogue {
            family(ctx, spec, nu, rows)?;
        }
    }
    for spec in [FamilySpec::hopf(0.0), FamilySpec::hopf(2.0), FamilySpec::hopf(3.0), FamilySpec::conoid(1.0)] {
        gauss(ctx, &spec, rows)?;
    }
    Ok(())
}

/// Coefficients of a random `exp_sine` profile.
pub fn random_profile_coefficients(rng: &mut impl Rng) -> [f64; 5] {
    [
        rng.random_range(0.3..2.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-0.6..0.6),
        rng.random_range(0.5..2.5),
        rng.random_range(0.0..std::f64::consts::PI),
    ]
}

pub fn random_point(rng: &mut impl Rng) -> ChartPoint {
    let y = rng.random_range(-1.5f64..1.5).exp();
    ChartPoint::new(rng.random_range(-3.0..3.0), y, rng.random_range(0.0..TAU)).expect("y > 0")
}

pub fn random_vector(rng: &mut impl Rng) -> Vec3 {
    Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn point_loc(nu: MetricParam, p: &ChartPoint) -> String {
    format!("nu={} x={:.6} y={:.6} theta={:.6}", nu.value(), p.x, p.y, p.theta)
}

fn vec_loc(v: &Vec3) -> String {
    format!("[{:.6} {:.6} {:.6}]", v[0], v[1], v[2])
}

fn sample_loc(nu: MetricParam, spec: &FamilySpec, u: f64, v: f64) -> String {
    format!("nu={} family={spec} u={u:.6} v={v:.6}", nu.value())
}

/// One row per frame component of a vector comparison.
fn vector_rows(out: &mut Vec<ReportRow>, check: &str, loc: &str, expected: &Vec3, computed: &Vec3, tol: f64) {
    for c in 0..3 {
        out.push(ReportRow::equal(format!("{check}.e{}", c + 1), loc, expected[c], computed[c], tol));
    }
}

/// Runs `f` and turns an error into a single failing row.
fn guarded(check: &str, loc: &str, tol: f64, f: impl FnOnce(&mut Vec<ReportRow>) -> Result<()>) -> Vec<ReportRow> {
    let mut out = Vec::new();
    if let Err(e) = f(&mut out) {
        out.push(ReportRow::failure(check, loc, &e, tol));
    }
    out
}

fn par_rows<T: Sync>(items: &[T], f: impl Fn(&T) -> Vec<ReportRow> + Sync + Send) -> Vec<ReportRow> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

fn frame_name(f: Frame) -> usize {
    f.index() + 1
}

fn connection(ctx: &Ctx, nu: MetricParam, rows: &mut Vec<ReportRow>) {
    let mut rng = ctx.rng(Stream::Connection, nu);
    let pts: Vec<ChartPoint> = (0..ctx.count(100)).map(|_| random_point(&mut rng)).collect();
    let tol = ctx.tol(TOL_CONNECTION);
    rows.extend(par_rows(&pts, |p| {
        let loc = point_loc(nu, p);
        guarded("connection", &loc, tol, |out| {
            for i in Frame::ALL {
                for j in Frame::ALL {
                    let computed = oracle::covariant_derivative(|_| i.vector(), |_| j.vector(), p, nu)?;
                    let check = format!("connection.nabla_e{}_e{}", frame_name(i), frame_name(j));
                    vector_rows(out, &check, &loc, &connection_table(i, j, nu), &computed, tol);
                }
            }
            for (i, j) in [(Frame::E1, Frame::E2), (Frame::E1, Frame::E3), (Frame::E2, Frame::E3)] {
                let computed = oracle::lie_bracket(|_| i.vector(), |_| j.vector(), p);
                let check = format!("connection.bracket_e{}_e{}", frame_name(i), frame_name(j));
                vector_rows(out, &check, &loc, &bracket_table(i, j), &computed, tol);
            }
            Ok(())
        })
    }));
}

fn curvature_suite(ctx: &Ctx, nu: MetricParam, rows: &mut Vec<ReportRow>) {
    let mut rng = ctx.rng(Stream::Curvature, nu);
    let pts: Vec<ChartPoint> = (0..ctx.count(100)).map(|_| random_point(&mut rng)).collect();
    let tol = ctx.tol(TOL_COMPOSITION);
    rows.extend(par_rows(&pts, |p| {
        let loc = point_loc(nu, p);
        guarded("curvature.composition", &loc, tol, |out| {
            for (i, j) in [(Frame::E1, Frame::E2), (Frame::E1, Frame::E3), (Frame::E2, Frame::E3)] {
                for k in Frame::ALL {
                    let computed = oracle::curvature_by_composition(&i.vector(), &j.vector(), &k.vector(), p, nu)?;
                    let check = format!("curvature.r_e{}_e{}_e{}", frame_name(i), frame_name(j), frame_name(k));
                    vector_rows(out, &check, &loc, &curvature_table(i, j, k, nu), &computed, tol);
                }
            }
            Ok(())
        })
    }));

    let triples: Vec<[Vec3; 3]> = (0..ctx.count(100))
        .map(|_| [random_vector(&mut rng), random_vector(&mut rng), random_vector(&mut rng)])
        .collect();
    let tol = ctx.tol(TOL_CLOSED_FORM);
    for [x, y, z] in &triples {
        let loc = format!("nu={} X={} Y={} Z={}", nu.value(), vec_loc(x), vec_loc(y), vec_loc(z));
        let r = curvature(x, y, z, nu);
        if nu.value().abs() == 1.0 {
            vector_rows(rows, "curvature.sasaki_form", &loc, &r, &curvature_sasaki_form(x, y, z, nu), tol);
        }
        let cyclic = r + curvature(y, z, x, nu) + curvature(z, x, y, nu);
        rows.push(ReportRow::equal("curvature.bianchi", &loc, 0.0, cyclic.abs().max(), tol));
    }

    let mut rng = ctx.rng(Stream::Sectional, nu);
    let tol = ctx.tol(TOL_SECTIONAL);
    let holomorphic = -(3.0 * nu.value() + 4.0);
    for _ in 0..ctx.count(100) {
        let a: f64 = rng.random_range(0.0..TAU);
        let x = Vec3::new(a.cos(), a.sin(), 0.0);
        let loc = format!("nu={} alpha={a:.6}", nu.value());
        rows.push(match sectional_curvature(&x, &apply_f(&x), nu) {
            Ok(k) => ReportRow::equal("curvature.holomorphic_sectional", loc, holomorphic, k, tol),
            Err(e) => ReportRow::failure("curvature.holomorphic_sectional", loc, &e, tol),
        });
    }
    if nu.value() == -1.0 {
        let mut planes = 0;
        while planes < ctx.count(500) {
            let (x, y) = (random_vector(&mut rng), random_vector(&mut rng));
            let gram = nu.inner(&x, &x) * nu.inner(&y, &y) - nu.inner(&x, &y).powi(2);
            if gram.abs() < 1e-2 {
                continue;
            }
            planes += 1;
            let loc = format!("nu={} X={} Y={}", nu.value(), vec_loc(&x), vec_loc(&y));
            rows.push(match sectional_curvature(&x, &y, nu) {
                Ok(k) => ReportRow::equal("curvature.sectional", loc, -1.0, k, tol),
                Err(e) => ReportRow::failure("curvature.sectional", loc, &e, tol),
            });
        }
    }
}

fn sasaki(ctx: &Ctx, nu: MetricParam, rows: &mut Vec<ReportRow>) {
    let mut rng = ctx.rng(Stream::Sasaki, nu);
    let triples: Vec<(ChartPoint, Vec3, Vec3)> = (0..ctx.count(200))
        .map(|_| (random_point(&mut rng), random_vector(&mut rng), random_vector(&mut rng)))
        .collect();
    let tol = ctx.tol(TOL_SASAKI);
    rows.extend(par_rows(&triples, |(p, x, y)| {
        let loc = format!("{} X={} Y={}", point_loc(nu, p), vec_loc(x), vec_loc(y));
        guarded("sasaki", &loc, tol, |out| {
            for (name, r) in sasaki_residuals(p, x, y, nu)?.as_array() {
                out.push(ReportRow::equal(format!("sasaki.{name}"), &loc, 0.0, r, tol));
            }
            Ok(())
        })
    }));
}

fn ads(ctx: &Ctx, family: Option<&FamilySpec>, rows: &mut Vec<ReportRow>) -> Result<()> {
    let mut rng = ctx.rng(Stream::Ads, MetricParam::RIEMANNIAN);
    let tol = ctx.tol(TOL_QUADRIC);
    for _ in 0..ctx.count(1000) {
        let p = random_point(&mut rng);
        let loc = format!("x={:.6} y={:.6} theta={:.6}", p.x, p.y, p.theta);
        rows.push(match embed_ads(&p.to_group()) {
            Ok(q) => ReportRow::equal("ads.quadric", loc, -1.0, q.quadric(), tol),
            Err(e) => ReportRow::failure("ads.quadric", loc, &e, tol),
        });
    }
    let specs: Vec<FamilySpec> = match family {
        Some(f) if matches!(f.kind, FamilyKind::ComplexCircle { .. }) => vec![f.clone()],
        Some(f) => {
            return Err(GeomError::InvalidArgument(format!("suite 'ads' takes a complex_circle family, not {f}")))
        }
        None => [(0.5, false), (1.2, false), (0.5, true), (-0.8, true)]
            .map(|(t, minimal): (f64, bool)| {
                FamilySpec::new(FamilyKind::ComplexCircle { a: t.sinh(), b: t.cosh(), minimal })
            })
            .to_vec(),
    };
    for spec in &specs {
        complex_circle_rows(ctx, spec, rows)?;
    }
    Ok(())
}

fn complex_circle_rows(ctx: &Ctx, spec: &FamilySpec, rows: &mut Vec<ReportRow>) -> Result<()> {
    let Family::ComplexCircle(c, domain) = spec.build()? else {
        return Err(GeomError::InvalidArgument(format!("{spec} is not a complex circle")));
    };
    let (tq, te) = (ctx.tol(TOL_CIRCLE_QUADRIC), ctx.tol(TOL_EXPONENTIAL_FORM));
    for (u, v) in domain.grid(ctx.grid.n, ctx.grid.m) {
        let loc = format!("family={spec} u={u:.6} v={v:.6}");
        let p = c.eval(u, v);
        rows.push(ReportRow::equal("ads.complex_circle.quadric", &loc, -1.0, p.quadric(), tq));
        if c.minimal {
            rows.push(match ComplexCircle::exponential_form(c.t(), u, v) {
                Ok(q) => ReportRow::equal("ads.complex_circle.exponential_form", &loc, 0.0, p.max_abs_diff(&q), te),
                Err(e) => ReportRow::failure("ads.complex_circle.exponential_form", &loc, &e, te),
            });
        }
    }
    Ok(())
}

fn family(ctx: &Ctx, spec: &FamilySpec, nu: MetricParam, rows: &mut Vec<ReportRow>) -> Result<()> {
    let grid_of = |d: &Domain| d.grid(ctx.grid.n, ctx.grid.m);
    let tols = FamilyTols::new(ctx);
    match &spec.kind {
        FamilyKind::ComplexCircle { .. } => complex_circle_rows(ctx, spec, rows)?,
        FamilyKind::HopfCylinder(_) => {
            let s = spec.hopf_surface()?.expect("hopf spec");
            let target = match s.curve.kind {
                CurveKind::Custom(_) => None,
                _ => Some(geodesic_curvature(&s.curve, 0.5 * (s.curve.domain.0 + s.curve.domain.1))?),
            };
            rows.extend(par_rows(&grid_of(&s.domain()), |&(u, v)| {
                let loc = sample_loc(nu, spec, u, v);
                guarded("family.sample", &loc, tols.mean, |out| {
                    let sm = sample(&s, u, v, nu)?;
                    common_rows(out, &sm, &loc, nu, &tols)?;
                    let c = s.curve.jet(v);
                    let p = c.dx / (2.0 * c.y);
                    let n = nu.value();
                    out.push(ReportRow::equal("family.hopf.first_form.E", &loc, n, sm.first.e, tols.metric));
                    out.push(ReportRow::equal("family.hopf.first_form.F", &loc, n * p, sm.first.f, tols.metric));
                    out.push(ReportRow::equal(
                        "family.hopf.first_form.G",
                        &loc,
                        n * p * p + 1.0,
                        sm.first.g,
                        tols.metric,
                    ));
                    let kappa = geodesic_curvature(&s.curve, v)?;
                    if let Some(k0) = target {
                        out.push(ReportRow::equal("family.hopf.curve_curvature", &loc, k0, kappa, tols.metric));
                    }
                    out.push(ReportRow::equal("family.hopf.mean_curvature", &loc, kappa / 2.0, sm.shape.h, tols.mean));
                    out.push(ReportRow::equal(
                        "family.hopf.gauss_curvature",
                        &loc,
                        0.0,
                        intrinsic_gauss_curvature(&s, u, v, nu)?,
                        tols.gauss,
                    ));
                    Ok(())
                })
            }));
        }
        FamilyKind::Conoid { .. } => {
            let s = spec.conoid_surface()?.expect("conoid spec");
            rows.extend(par_rows(&grid_of(&s.domain()), |&(u, v)| {
                let loc = sample_loc(nu, spec, u, v);
                guarded("family.sample", &loc, tols.mean, |out| {
                    let sm = sample(&s, u, v, nu)?;
                    common_rows(out, &sm, &loc, nu, &tols)?;
                    out.push(ReportRow::equal("family.conoid.mean_curvature", &loc, 0.0, sm.shape.h, tols.mean));
                    if let Some(r) = s.invariance_residual(u, v, 0.8) {
                        out.push(ReportRow::equal(
                            "family.conoid.helicoidal_invariance",
                            &loc,
                            0.0,
                            r?,
                            tols.invariance,
                        ));
                    }
                    Ok(())
                })
            }));
        }
        FamilyKind::Lightcone(profile) => {
            let s = spec.lightcone_surface()?.expect("lightcone spec");
            let y = &s.profile;
            let n = nu.value();
            let pts = grid_of(&s.domain());
            rows.extend(par_rows(&pts, |&(u, v)| {
                let loc = sample_loc(nu, spec, u, v);
                guarded("family.sample", &loc, tols.mean, |out| {
                    let sm = sample(&s, u, v, nu)?;
                    common_rows(out, &sm, &loc, nu, &tols)?;
                    let (y0, y1, y2) = y.eval(u);
                    let closed = lightcone_mean_curvature(y0, y1, y2, nu)?;
                    out.push(ReportRow::equal(
                        "family.lightcone.mean_curvature_closed_form",
                        &loc,
                        closed,
                        sm.shape.h,
                        tols.mean,
                    ));
                    out.push(ReportRow::equal(
                        "family.lightcone.invariance",
                        &loc,
                        0.0,
                        s.invariance_residual(u, v, 0.5)?,
                        tols.invariance,
                    ));
                    if n == -1.0 {
                        out.push(ReportRow::equal("family.lightcone.mean_curvature", &loc, 1.0, sm.shape.h, tols.mean));
                        out.push(ReportRow::equal(
                            "family.lightcone.discriminant",
                            &loc,
                            0.0,
                            sm.shape.discriminant,
                            tols.mean,
                        ));
                        let k = intrinsic_gauss_curvature(&s, u, v, nu)?;
                        out.push(ReportRow::equal("family.lightcone.gauss_curvature", &loc, 0.0, k, tols.gauss));
                    }
                    match profile {
                        ProfileSpec::Umbilic { .. } if n == -1.0 => {
                            out.push(ReportRow::equal(
                                "family.lightcone.umbilic_defect",
                                &loc,
                                0.0,
                                sm.shape.umbilic_defect,
                                tols.umbilic,
                            ));
                            out.push(ReportRow::equal(
                                "family.lightcone.riccati",
                                &loc,
                                0.0,
                                riccati_residual(y, u)?,
                                tols.riccati,
                            ));
                        }
                        ProfileSpec::Minimal { .. } if n == 1.0 => {
                            out.push(ReportRow::equal(
                                "family.lightcone.minimal_mean_curvature",
                                &loc,
                                0.0,
                                sm.shape.h,
                                tols.mean,
                            ));
                            out.push(ReportRow::equal(
                                "family.lightcone.minimal_ode",
                                &loc,
                                0.0,
                                minimal_ode_residual(y, u)?,
                                tols.ode,
                            ));
                        }
                        _ => {}
                    }
                    Ok(())
                })
            }));
            if matches!(profile, ProfileSpec::Perturbed { .. }) && n == -1.0 {
                let worst = pts
                    .par_iter()
                    .map(|&(u, v)| sample(&s, u, v, nu).map(|sm| sm.shape.umbilic_defect).unwrap_or(f64::NAN))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .fold(f64::NEG_INFINITY, f64::max);
                let loc = format!("nu={n} family={spec} grid={}", ctx.grid);
                rows.push(ReportRow::at_least("family.lightcone.control_umbilic_defect", loc, CONTROL_DEFECT, worst));
            }
        }
    }
    Ok(())
}

struct FamilyTols {
    metric: f64,
    mean: f64,
    gauss: f64,
    gauss_formula: f64,
    umbilic: f64,
    riccati: f64,
    ode: f64,
    invariance: f64,
}

impl FamilyTols {
    fn new(ctx: &Ctx) -> Self {
        Self {
            metric: ctx.tol(TOL_METRIC_DISPLAY),
            mean: ctx.tol(TOL_MEAN_CURVATURE),
            gauss: ctx.tol(TOL_GAUSS_CURVATURE),
            gauss_formula: ctx.tol(TOL_GAUSS_FORMULA),
            umbilic: ctx.tol(TOL_UMBILIC_DEFECT),
            riccati: ctx.tol(TOL_RICCATI),
            ode: ctx.tol(TOL_ODE),
            invariance: ctx.tol(TOL_INVARIANCE),
        }
    }
}

fn common_rows(
    out: &mut Vec<ReportRow>,
    sm: &SurfaceSample,
    loc: &str,
    nu: MetricParam,
    tols: &FamilyTols,
) -> Result<()> {
    out.push(ReportRow::equal(
        "family.gauss_formula",
        loc,
        0.0,
        gauss_formula_residual(&sm.jet, nu)?,
        tols.gauss_formula,
    ));
    Ok(())
}

/// Theory's prediction for the Gauss map of a family, when it makes one:
/// `(conformal, vertically harmonic, harmonic)`.
fn gauss_prediction(spec: &FamilySpec) -> Result<Option<(bool, bool, bool)>> {
    Ok(match &spec.kind {
        FamilyKind::HopfCylinder(_) => {
            let c = spec.hopf_curve()?.expect("hopf spec");
            let kappa = geodesic_curvature(&c, 0.5 * (c.domain.0 + c.domain.1))?;
            let minimal = kappa.abs() < 1e-12;
            Some((minimal, true, minimal))
        }
        FamilyKind::Conoid { mu, .. } => {
            let flat = *mu == 0.0;
            Some((true, flat, flat))
        }
        _ => None,
    })
}

fn gauss(ctx: &Ctx, spec: &FamilySpec, rows: &mut Vec<ReportRow>) -> Result<()> {
    let nu = MetricParam::RIEMANNIAN;
    let Family::Surface(s) = spec.build()? else {
        return Err(GeomError::InvalidArgument(format!("suite 'gauss' needs a surface in G, not {spec}")));
    };
    let s = s.as_ref();
    let grid = Grid::new(ctx.grid.n, ctx.grid.m)?;
    let floc = format!("nu=1 family={spec} grid={}", ctx.grid);
    let tb = ctx.tol(0.0);
    match (gauss_prediction(spec)?, classify_gauss_map(s, grid)) {
        (Some((conf, vh, harm)), Ok(c)) => {
            let b = |x: bool| f64::from(u8::from(x));
            rows.push(ReportRow::equal("gauss.conformal", &floc, b(conf), b(c.conformal), tb));
            rows.push(ReportRow::equal("gauss.vertically_harmonic", &floc, b(vh), b(c.vertically_harmonic), tb));
            rows.push(ReportRow::equal("gauss.harmonic", &floc, b(harm), b(c.harmonic), tb));
        }
        (Some(_), Err(e)) => rows.push(ReportRow::failure("gauss.classification", &floc, &e, tb)),
        (None, _) => {}
    }

    let tp = ctx.tol(TOL_PROOF_FORMULA);
    let tu = ctx.tol(TOL_UNIT);
    rows.extend(par_rows(&s.domain().grid(ctx.grid.n, ctx.grid.m), |&(u, v)| {
        let loc = sample_loc(nu, spec, u, v);
        guarded("gauss.sample", &loc, tp, |out| {
            let sm = sample(s, u, v, nu)?;
            let n = NormalComponents { a: sm.normal[0], b: sm.normal[1], c: sm.normal[2] };
            out.push(ReportRow::equal("gauss.normal_norm", &loc, 1.0, n.vector().norm_squared(), tu));
            let ups = left_translate_to_identity(sm.jet.point.theta, &sm.normal);
            out.push(ReportRow::equal(
                "gauss.normal_gauss_map_norm",
                &loc,
                1.0,
                algebra_scalar_product(&ups, &ups, MetricSign::Plus),
                tu,
            ));
            let sanini = sanini_from_sample(&sm)?;
            if n.c.abs() > HORIZONTAL_NORMAL {
                let (v1, v2) = case1_frame(&n);
                let (f1, f2) = case1_closed_forms(&n);
                let nv = n.vector();
                out.push(ReportRow::equal(
                    "gauss.case1.r_v1_v2_v1_n",
                    &loc,
                    f1,
                    nu.inner(&curvature(&v1, &v2, &v1, nu), &nv),
                    tp,
                ));
                out.push(ReportRow::equal(
                    "gauss.case1.r_v1_v2_v2_n",
                    &loc,
                    f2,
                    nu.inner(&curvature(&v1, &v2, &v2, nu), &nv),
                    tp,
                ));
                let (w1, w2) = (v1.normalize(), v2.normalize());
                let mu = principal_angle_in(&sanini.frame, &w1, &w2);
                let e2 = -w1 * mu.sin() + w2 * mu.cos();
                let direct = sanini_in_frame(&[sanini.frame[0], e2, nv]);
                let (r1, r2) = case1_sanini(&n, mu);
                out.push(ReportRow::equal("gauss.case1.r1213", &loc, r1, direct.r1213, tp));
                out.push(ReportRow::equal("gauss.case1.r2123", &loc, r2, direct.r2123, tp));
            } else {
                let phi = normal_angle(&n);
                let (u1, u2) = case2_frame(phi);
                let (ru, rv) = case2_curvatures(phi);
                vector_rows(out, "gauss.case2.r_u1_u2_u1", &loc, &ru, &curvature(&u1, &u2, &u1, nu), tp);
                vector_rows(out, "gauss.case2.r_u2_u1_u2", &loc, &rv, &curvature(&u2, &u1, &u2, nu), tp);
                let h = sm.shape.h;
                let sff = |a: &Vec3, b: &Vec3| second_form_on_vectors(&sm, a, b, nu);
                out.push(ReportRow::equal("gauss.case2.sff_u1_u1", &loc, 2.0 * h, sff(&u1, &u1)?, tp));
                out.push(ReportRow::equal("gauss.case2.sff_u1_u2", &loc, 1.0, sff(&u1, &u2)?, tp));
                out.push(ReportRow::equal("gauss.case2.sff_u2_u2", &loc, 0.0, sff(&u2, &u2)?, tp));
                let mu = principal_angle_in(&sanini.frame, &u1, &u2);
                let (r3113, r3223) = case2_sanini(mu);
                out.push(ReportRow::equal("gauss.case2.r3113", &loc, r3113, sanini.r3113, tp));
                out.push(ReportRow::equal("gauss.case2.r3223", &loc, r3223, sanini.r3223, tp));
                let angle = (2.0 * mu).sin() * h - (2.0 * mu).cos();
                out.push(ReportRow::equal("gauss.case2.principal_angle", &loc, 0.0, angle, tp));
            }
            Ok(())
        })
    }));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: SuiteKind, nu: f64) -> SuiteConfig {
        SuiteConfig { suite, nu, samples: Some(10), grid: GridSize::new(4, 4).unwrap(), ..Default::default() }
    }

    #[test]
    fn connection_and_curvature_pass_for_both_signs() {
        for nu in [1.0, -1.0] {
            for suite in [SuiteKind::Connection, SuiteKind::Curvature, SuiteKind::Sasaki] {
                let r = run_suite(&cfg(suite, nu)).unwrap();
                assert!(!r.rows.is_empty());
                let bad: Vec<_> = r.failures().take(3).collect();
                assert!(bad.is_empty(), "{suite} nu={nu}: {bad:?}");
            }
        }
    }

    #[test]
    fn lorentzian_sectional_rows_appear_only_at_minus_one() {
        let has = |nu| {
            run_suite(&cfg(SuiteKind::Curvature, nu)).unwrap().rows.iter().any(|r| r.check == "curvature.sectional")
        };
        assert!(has(-1.0));
        assert!(!has(1.0));
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = run_suite(&cfg(SuiteKind::Sasaki, 1.0)).unwrap();
        let b = run_suite(&cfg(SuiteKind::Sasaki, 1.0)).unwrap();
        assert_eq!(a, b);
        let mut c2 = cfg(SuiteKind::Sasaki, 1.0);
        c2.seed = 7;
        assert_ne!(a, run_suite(&c2).unwrap());
    }

    #[test]
    fn family_rows() {
        let mut c = cfg(SuiteKind::Family, -1.0);
        c.family = Some("lightcone(umbilic(A=1,u0=0))".parse().unwrap());
        let r = run_suite(&c).unwrap();
        assert!(r.rows.iter().any(|r| r.check == "family.lightcone.umbilic_defect"));
        assert!(r.passed(), "{:?}", r.failures().next());
        c.family = Some("lightcone(perturbed(A=1,u0=0,eps=0.1))".parse().unwrap());
        let r = run_suite(&c).unwrap();
        let control = r.rows.iter().find(|r| r.check == "family.lightcone.control_umbilic_defect").unwrap();
        assert!(control.pass && control.computed > CONTROL_DEFECT);
    }

    #[test]
    fn gauss_rows_for_a_horocycle() {
        let mut c = cfg(SuiteKind::Gauss, 1.0);
        c.family = Some("hopf_cylinder(horocycle)".parse().unwrap());
        let r = run_suite(&c).unwrap();
        let get = |k: &str| r.rows.iter().find(|r| r.check == k).unwrap().computed;
        assert_eq!(get("gauss.vertically_harmonic"), 1.0);
        assert_eq!(get("gauss.harmonic"), 0.0);
        assert!(r.passed(), "{:?}", r.failures().next());
    }

    #[test]
    fn ads_rejects_surface_families() {
        let mut c = cfg(SuiteKind::Ads, 1.0);
        c.family = Some("conoid(mu=1)".parse().unwrap());
        assert!(run_suite(&c).is_err());
        c.family = None;
        assert!(run_suite(&c).unwrap().passed());
    }
}
