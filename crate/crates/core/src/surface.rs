//! Immersed surfaces `phi: D -> (G, g[nu])` and their extrinsic data.
//!
//! Everything is computed in frame components. Surfaces hand over coordinate
//! partials of `(x(u,v), y(u,v), theta(u,v))`; [`jet`] converts them to frame
//! components and forms covariant second derivatives with the connection
//! table, so the only analytic input a family needs is calculus in the chart.
//!
//! Sign and normalisation conventions:
//!
//! * The unit normal is `n = eta^-1 (phi_u x phi_v) / sqrt|g(N, N)|` with
//!   `eta = diag(1, 1, nu)`, i.e. `(phi_u, phi_v, n)` is positively oriented.
//! * `II_ab = g(nabla_a phi_b, n) / g(n, n)`, so the Gauss formula
//!   `nabla_a phi_b = tangential + II_ab n` holds for either causal character
//!   of `n`.
//! * `H = tr(II I^-1) / 2` for Riemannian and Lorentzian first forms alike.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::fd;
use crate::group::ChartPoint;
use crate::metric::{coframe_matrix, coframe_matrix_dy, connection, MetricParam, TangentVector};
use crate::Vec3;

/// Gram-determinant floor for regularity, measured in the frame with the
/// positive-definite reference metric `diag(1, 1, 1)`.
pub const TOL_RANK: f64 = 1e-10;
/// Floor on `|det I|` below which the tangent plane counts as null.
pub const TOL_DEGENERATE: f64 = 1e-10;
/// Discriminant tolerance for deciding repeated or complex principal curvatures.
pub const TOL_DISCRIMINANT: f64 = 1e-9;
/// Relative step of the Brioschi stencil.
pub const BRIOSCHI_STEP: f64 = 1e-4;
/// Step for finite-difference chart partials of immersions without analytic ones.
pub const JET_STEP: f64 = 1e-3;

/// Parameter rectangle `[u0, u1] x [v0, v1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub periodic_u: bool,
    pub periodic_v: bool,
}

impl Domain {
    pub fn new(u: (f64, f64), v: (f64, f64)) -> Result<Self> {
        if !(u.1 > u.0 && v.1 > v.0) || !(u.0.is_finite() && u.1.is_finite() && v.0.is_finite() && v.1.is_finite()) {
            return Err(GeomError::InvalidArgument(format!("empty domain {u:?} x {v:?}")));
        }
        Ok(Self { u, v, periodic_u: false, periodic_v: false })
    }

    pub fn periodic_in_u(mut self) -> Self {
        self.periodic_u = true;
        self
    }

    pub fn span_u(&self) -> f64 {
        self.u.1 - self.u.0
    }

    pub fn span_v(&self) -> f64 {
        self.v.1 - self.v.0
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        (self.periodic_u || (self.u.0..=self.u.1).contains(&u))
            && (self.periodic_v || (self.v.0..=self.v.1).contains(&v))
    }

    /// Cell-centred `n x m` grid in row-major order (`u` index outer).
    pub fn grid(&self, n: usize, m: usize) -> Vec<(f64, f64)> {
        let (du, dv) = (self.span_u() / n as f64, self.span_v() / m as f64);
        (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| (self.u.0 + (i as f64 + 0.5) * du, self.v.0 + (j as f64 + 0.5) * dv))
            .collect()
    }

    /// Map `(s, t) in [0, 1]^2` onto the rectangle.
    pub fn lerp(&self, s: f64, t: f64) -> (f64, f64) {
        (self.u.0 + s * self.span_u(), self.v.0 + t * self.span_v())
    }
}

/// Chart partials of an immersion at one parameter point: first and second
/// derivatives of `(x, y, theta)` with respect to `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordJet {
    pub point: ChartPoint,
    pub pu: Vec3,
    pub pv: Vec3,
    pub puu: Vec3,
    pub puv: Vec3,
    pub pvv: Vec3,
}

pub trait Immersion: Send + Sync {
    fn domain(&self) -> Domain;

    fn eval(&self, u: f64, v: f64) -> Result<ChartPoint>;

    /// Analytic chart partials, when the surface knows them.
    fn coord_jet(&self, _u: f64, _v: f64) -> Option<Result<CoordJet>> {
        None
    }
}

fn chart_vec(p: &ChartPoint) -> Vec3 {
    Vec3::new(p.x, p.y, p.theta)
}

fn eval_vec(s: &dyn Immersion, u: f64, v: f64) -> Vec3 {
    s.eval(u, v).map(|p| chart_vec(&p)).unwrap_or_else(|_| Vec3::repeat(f64::NAN))
}

/// Chart partials by fourth-order central differences of [`Immersion::eval`].
pub fn fd_coord_jet(s: &dyn Immersion, u: f64, v: f64) -> Result<CoordJet> {
    let point = s.eval(u, v)?;
    let h = JET_STEP;
    let pu = fd::d1(|t| eval_vec(s, t, v), u, h);
    let pv = fd::d1(|t| eval_vec(s, u, t), v, h);
    let puu = fd::d2(|t| eval_vec(s, t, v), u, h);
    let pvv = fd::d2(|t| eval_vec(s, u, t), v, h);
    let puv = fd::d1(|t| fd::d1(|r| eval_vec(s, t, r), v, h), u, h);
    let jet = CoordJet { point, pu, pv, puu, puv, pvv };
    if [pu, pv, puu, puv, pvv].iter().any(|w| !w.iter().all(|c| c.is_finite())) {
        return Err(GeomError::NonFinite("finite-difference chart partials"));
    }
    Ok(jet)
}

/// Analytic partials when provided, finite differences otherwise.
pub fn coord_jet(s: &dyn Immersion, u: f64, v: f64) -> Result<CoordJet> {
    match s.coord_jet(u, v) {
        Some(j) => j,
        None => fd_coord_jet(s, u, v),
    }
}

/// Largest discrepancy between the analytic partials of `s` and finite
/// differences at `(u, v)`; `None` when `s` supplies no analytic partials.
pub fn check_partials(s: &dyn Immersion, u: f64, v: f64) -> Option<Result<f64>> {
    let analytic = s.coord_jet(u, v)?;
    Some(analytic.and_then(|a| {
        let n = fd_coord_jet(s, u, v)?;
        let diffs = [a.pu - n.pu, a.pv - n.pv, a.puu - n.puu, a.puv - n.puv, a.pvv - n.pvv];
        Ok(diffs.iter().map(|d| d.abs().max()).fold(0.0, f64::max))
    }))
}

/// Frame components of `phi_u`, `phi_v` and of the covariant second
/// derivatives `nabla_{d_a} phi_b` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceJet {
    pub u: f64,
    pub v: f64,
    pub point: ChartPoint,
    pub phi_u: Vec3,
    pub phi_v: Vec3,
    pub d_uu: Vec3,
    pub d_uv: Vec3,
    pub d_vv: Vec3,
}

impl SurfaceJet {
    pub fn tangent(&self, frame: Vec3) -> TangentVector {
        TangentVector { base: self.point, frame }
    }

    /// Frame components of `w0 phi_u + w1 phi_v`.
    pub fn push_forward(&self, w: &Vector2<f64>) -> Vec3 {
        self.phi_u * w[0] + self.phi_v * w[1]
    }
}

fn frame_parts(p: &ChartPoint, x: &Vec3) -> Vec3 {
    coframe_matrix(p) * x
}

pub fn jet(s: &dyn Immersion, u: f64, v: f64, nu: MetricParam) -> Result<SurfaceJet> {
    let cj = coord_jet(s, u, v)?;
    jet_from_coords(&cj, u, v, nu)
}

pub fn jet_from_coords(cj: &CoordJet, u: f64, v: f64, nu: MetricParam) -> Result<SurfaceJet> {
    let p = cj.point;
    let phi_u = frame_parts(&p, &cj.pu);
    let phi_v = frame_parts(&p, &cj.pv);
    let gram = phi_u.norm_squared() * phi_v.norm_squared() - phi_u.dot(&phi_v).powi(2);
    if !(gram > TOL_RANK) {
        return Err(GeomError::RankDeficient { u, v, gram });
    }
    let m = coframe_matrix(&p);
    let dm = coframe_matrix_dy(&p);
    let partial = |xa: &Vec3, xb: &Vec3, xab: &Vec3| m * xab + dm * xb * xa[1];
    let d_uu = partial(&cj.pu, &cj.pu, &cj.puu) + connection(&phi_u, &phi_u, nu);
    let d_uv = partial(&cj.pu, &cj.pv, &cj.puv) + connection(&phi_u, &phi_v, nu);
    let d_vv = partial(&cj.pv, &cj.pv, &cj.pvv) + connection(&phi_v, &phi_v, nu);
    Ok(SurfaceJet { u, v, point: p, phi_u, phi_v, d_uu, d_uv, d_vv })
}

/// Symmetric coefficients `E du^2 + 2F du dv + G dv^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FundamentalForm {
    pub fn new(e: f64, f: f64, g: f64) -> Self {
        Self { e, f, g }
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.e, self.f, self.f, self.g)
    }

    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn apply(&self, a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
        a.dot(&(self.matrix() * b))
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.e * k, self.f * k, self.g * k)
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        (self.e - o.e).abs().max((self.f - o.f).abs()).max((self.g - o.g).abs())
    }
}

pub fn first_form(j: &SurfaceJet, nu: MetricParam) -> FundamentalForm {
    FundamentalForm::new(nu.inner(&j.phi_u, &j.phi_u), nu.inner(&j.phi_u, &j.phi_v), nu.inner(&j.phi_v, &j.phi_v))
}

/// Unit normal (`|g(n, n)| = 1`) oriented so that `(phi_u, phi_v, n)` is
/// positive. Fails on null tangent planes.
pub fn unit_normal(j: &SurfaceJet, nu: MetricParam) -> Result<TangentVector> {
    let det = first_form(j, nu).det();
    if !(det.abs() > TOL_DEGENERATE) {
        return Err(GeomError::DegeneratePlane { gram: det });
    }
    let raw = nu.sharp(&j.phi_u.cross(&j.phi_v));
    let norm = nu.inner(&raw, &raw);
    Ok(j.tangent(raw / norm.abs().sqrt()))
}

pub fn second_form(j: &SurfaceJet, n: &TangentVector, nu: MetricParam) -> FundamentalForm {
    let nn = nu.inner(&n.frame, &n.frame);
    let c = |w: &Vec3| nu.inner(w, &n.frame) / nn;
    FundamentalForm::new(c(&j.d_uu), c(&j.d_uv), c(&j.d_vv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalType {
    Riemannian,
    Lorentzian,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PrincipalCurvatures {
    Distinct(f64, f64),
    Repeated(f64),
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeData {
    pub h: f64,
    pub det_s: f64,
    pub discriminant: f64,
    pub causal: CausalType,
    pub principal: PrincipalCurvatures,
    pub umbilic_defect: f64,
}

impl ShapeData {
    pub fn is_umbilic(&self, tol: f64) -> bool {
        self.umbilic_defect < tol
    }
}

/// Shape operator `S = I^-1 II` acting on `(du, dv)` coefficient vectors.
pub fn shape_operator(first: &FundamentalForm, second: &FundamentalForm) -> Result<Matrix2<f64>> {
    let inv = first.matrix().try_inverse().ok_or(GeomError::DegenerateForm { det: first.det() })?;
    Ok(inv * second.matrix())
}

pub fn shape_data(first: &FundamentalForm, second: &FundamentalForm) -> Result<ShapeData> {
    let det_i = first.det();
    if !(det_i.abs() > TOL_DEGENERATE) {
        return Err(GeomError::DegenerateForm { det: det_i });
    }
    let s = shape_operator(first, second)?;
    let h = 0.5 * s.trace();
    let det_s = second.det() / det_i;
    let discriminant = h * h - det_s;
    let causal = if det_i > 0.0 { CausalType::Riemannian } else { CausalType::Lorentzian };
    let principal = if discriminant.abs() <= TOL_DISCRIMINANT {
        PrincipalCurvatures::Repeated(h)
    } else if discriminant > 0.0 {
        let r = discriminant.sqrt();
        PrincipalCurvatures::Distinct(h + r, h - r)
    } else {
        PrincipalCurvatures::Complex
    };
    let umbilic_defect = second.max_abs_diff(&first.scaled(h));
    Ok(ShapeData { h, det_s, discriminant, causal, principal, umbilic_defect })
}

/// Everything the families and the Gauss-map layer need at one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    pub jet: SurfaceJet,
    pub first: FundamentalForm,
    pub normal: Vec3,
    pub second: FundamentalForm,
    pub shape: ShapeData,
}

impl SurfaceSample {
    /// Frame components of `w0 phi_u + w1 phi_v`.
    pub fn tangent_frame(&self, w: &Vector2<f64>) -> Vec3 {
        self.jet.push_forward(w)
    }

    pub fn second_form_on(&self, a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
        self.second.apply(a, b)
    }
}

/// Jet, forms, normal and shape data at `(u, v)`. The normal must be
/// spacelike, as it is for every family built in this crate on its stated
/// domain.
pub fn sample(s: &dyn Immersion, u: f64, v: f64, nu: MetricParam) -> Result<SurfaceSample> {
    let j = jet(s, u, v, nu)?;
    sample_from_jet(j, nu)
}

pub fn sample_from_jet(j: SurfaceJet, nu: MetricParam) -> Result<SurfaceSample> {
    let first = first_form(&j, nu);
    let n = unit_normal(&j, nu)?;
    let norm = nu.inner(&n.frame, &n.frame);
    if norm < 0.0 {
        return Err(GeomError::TimelikeNormal { norm });
    }
    let second = second_form(&j, &n, nu);
    let shape = shape_data(&first, &second)?;
    Ok(SurfaceSample { jet: j, first, normal: n.frame, second, shape })
}

/// Max-norm of `nabla_a phi_b - (tangential part) - II_ab n` over the three
/// coefficient pairs.
pub fn gauss_formula_residual(j: &SurfaceJet, nu: MetricParam) -> Result<f64> {
    let first = first_form(j, nu);
    let inv = first.matrix().try_inverse().ok_or(GeomError::DegenerateForm { det: first.det() })?;
    let n = unit_normal(j, nu)?;
    let second = second_form(j, &n, nu);
    let cases = [(j.d_uu, second.e), (j.d_uv, second.f), (j.d_vv, second.g)];
    Ok(cases
        .iter()
        .map(|(w, ii)| {
            let rhs = Vector2::new(nu.inner(w, &j.phi_u), nu.inner(w, &j.phi_v));
            let c = inv * rhs;
            (w - j.push_forward(&c) - n.frame * *ii).abs().max()
        })
        .fold(0.0, f64::max))
}

/// Gauss curvature of the induced metric by the Brioschi formula. Derivatives
/// of `E, F, G` use a five-point stencil with step `1e-4` of the domain span
/// in each direction.
pub fn intrinsic_gauss_curvature(s: &dyn Immersion, u: f64, v: f64, nu: MetricParam) -> Result<f64> {
    let dom = s.domain();
    let (hu, hv) = (BRIOSCHI_STEP * dom.span_u(), BRIOSCHI_STEP * dom.span_v());
    let margin_u = dom.periodic_u || (u - 3.0 * hu >= dom.u.0 && u + 3.0 * hu <= dom.u.1);
    let margin_v = dom.periodic_v || (v - 3.0 * hv >= dom.v.0 && v + 3.0 * hv <= dom.v.1);
    if !(margin_u && margin_v) {
        return Err(GeomError::BoundaryMargin { u, v });
    }
    let form = |a: f64, b: f64| -> Vec3 {
        match jet(s, a, b, nu) {
            Ok(j) => {
                let f = first_form(&j, nu);
                Vec3::new(f.e, f.f, f.g)
            }
            Err(_) => Vec3::repeat(f64::NAN),
        }
    };
    let c = form(u, v);
    let du = fd::d1(|t| form(t, v), u, hu);
    let dv = fd::d1(|t| form(u, t), v, hv);
    let duu = fd::d2(|t| form(t, v), u, hu);
    let dvv = fd::d2(|t| form(u, t), v, hv);
    let duv = fd::d1(|t| fd::d1(|r| form(t, r), v, hv), u, hu);
    let k = brioschi(&c, &du, &dv, &duu, &duv, &dvv);
    if !k.is_finite() {
        return Err(GeomError::NonFinite("Brioschi curvature"));
    }
    Ok(k)
}

/// Brioschi's formula for `K` from `(E, F, G)` and their partials.
pub fn brioschi(c: &Vec3, du: &Vec3, dv: &Vec3, duu: &Vec3, duv: &Vec3, dvv: &Vec3) -> f64 {
    let (e, f, g) = (c[0], c[1], c[2]);
    let (e_u, f_u, g_u) = (du[0], du[1], du[2]);
    let (e_v, f_v, g_v) = (dv[0], dv[1], dv[2]);
    let (e_vv, f_uv, g_uu) = (dvv[0], duv[1], duu[2]);
    let a = nalgebra::Matrix3::new(
        -0.5 * e_vv + f_uv - 0.5 * g_uu,
        0.5 * e_u,
        f_u - 0.5 * e_v,
        f_v - 0.5 * g_u,
        e,
        f,
        0.5 * g_v,
        f,
        g,
    );
    let b = nalgebra::Matrix3::new(0.0, 0.5 * e_v, 0.5 * g_u, 0.5 * e_v, e, f, 0.5 * g_u, f, g);
    let w = e * g - f * f;
    (a.determinant() - b.determinant()) / (w * w)
}
