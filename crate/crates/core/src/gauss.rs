//! Gauss maps of surfaces in `(G, g[1])`.
//!
//! Harmonicity of the tangential Gauss map is decided through curvature
//! components `R_ijkl = g(R(e_i, e_j) e_k, e_l)` in a principal frame
//! `{e1, e2, e3 = n}`: for constant mean curvature, the map is vertically
//! harmonic iff `R1213 = R2123 = 0`, and a minimal surface has harmonic
//! Gauss map iff in addition `R3113 = R3223`.

use nalgebra::Vector2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::group::{adjoint_act, GroupElement, LieVector};
use crate::metric::{curvature_tensor, MetricParam};
use crate::surface::{sample, FundamentalForm, Immersion, SurfaceSample};
use crate::Vec3;

/// Boolean classification threshold on residuals.
pub const TOL_CLASSIFY: f64 = 1e-7;
/// Allowed spread of `H` over the grid for the constant mean curvature
/// precondition.
pub const TOL_CONSTANT_H: f64 = 1e-5;
/// Below this size of the traceless part of `II` a point counts as umbilic
/// and the principal angle is set to 0.
pub const TOL_UMBILIC: f64 = 1e-12;

const NU: MetricParam = MetricParam::RIEMANNIAN;

/// Frame components `(a, b, c)` of the unit normal, i.e. the coefficients of
/// its dual form `theta^3 = a w1 + b w2 + c w3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalComponents {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl NormalComponents {
    pub fn vector(&self) -> Vec3 {
        Vec3::new(self.a, self.b, self.c)
    }

    pub fn norm_defect(&self) -> f64 {
        (self.vector().norm_squared() - 1.0).abs()
    }
}

pub fn normal_components(s: &dyn Immersion, u: f64, v: f64) -> Result<NormalComponents> {
    let sm = sample(s, u, v, NU)?;
    Ok(components_of(&sm))
}

fn components_of(sm: &SurfaceSample) -> NormalComponents {
    NormalComponents { a: sm.normal[0], b: sm.normal[1], c: sm.normal[2] }
}

/// I-orthonormal basis of the parameter plane diagonalising II, given as
/// `(du, dv)` coefficient vectors. `angle` is the rotation from the
/// Gram-Schmidt frame `(d_u, d_v)` to `(e1, e2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalFrame {
    pub e1: Vector2<f64>,
    pub e2: Vector2<f64>,
    pub angle: f64,
    pub umbilic: bool,
}

pub fn principal_frame(first: &FundamentalForm, second: &FundamentalForm) -> Result<PrincipalFrame> {
    let det = first.det();
    if !(det > 0.0 && first.e > 0.0) {
        return Err(GeomError::DegenerateForm { det });
    }
    let f1 = Vector2::new(1.0 / first.e.sqrt(), 0.0);
    let f2 = Vector2::new(-first.f / first.e, 1.0) / (det / first.e).sqrt();
    let m11 = second.apply(&f1, &f1);
    let m12 = second.apply(&f1, &f2);
    let m22 = second.apply(&f2, &f2);
    let umbilic = m12.abs().max((m11 - m22).abs()) < TOL_UMBILIC;
    let angle = if umbilic { 0.0 } else { 0.5 * (2.0 * m12).atan2(m11 - m22) };
    let (s, c) = angle.sin_cos();
    Ok(PrincipalFrame { e1: f1 * c + f2 * s, e2: f2 * c - f1 * s, angle, umbilic })
}

/// Curvature components in a principal frame, together with that frame as
/// frame-component vectors of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaniniResiduals {
    pub r1213: f64,
    pub r2123: f64,
    pub r3113: f64,
    pub r3223: f64,
    pub frame: [Vec3; 3],
}

impl SaniniResiduals {
    pub fn vertical(&self) -> f64 {
        self.r1213.abs().max(self.r2123.abs())
    }

    pub fn harmonic_defect(&self) -> f64 {
        (self.r3113 - self.r3223).abs()
    }
}

pub fn sanini_residuals(s: &dyn Immersion, u: f64, v: f64) -> Result<SaniniResiduals> {
    sanini_from_sample(&sample(s, u, v, NU)?)
}

pub fn sanini_from_sample(sm: &SurfaceSample) -> Result<SaniniResiduals> {
    let pf = principal_frame(&sm.first, &sm.second)?;
    let frame = [sm.tangent_frame(&pf.e1), sm.tangent_frame(&pf.e2), sm.normal];
    Ok(sanini_in_frame(&frame))
}

/// `R1213, R2123, R3113, R3223` for an arbitrary frame `(e1, e2, e3)`.
pub fn sanini_in_frame(frame: &[Vec3; 3]) -> SaniniResiduals {
    let r = |i: usize, j: usize, k: usize, l: usize| curvature_tensor(&frame[i], &frame[j], &frame[k], &frame[l], NU);
    SaniniResiduals {
        r1213: r(0, 1, 0, 2),
        r2123: r(1, 0, 1, 2),
        r3113: r(2, 0, 0, 2),
        r3223: r(2, 1, 1, 2),
        frame: *frame,
    }
}

/// Tangent frame used when the normal has `c != 0`:
/// `v1 = -c e2 + b e3`, `v2 = (b^2 + c^2) e1 - ab e2 - ac e3`.
pub fn case1_frame(n: &NormalComponents) -> (Vec3, Vec3) {
    let (a, b, c) = (n.a, n.b, n.c);
    (Vec3::new(0.0, -c, b), Vec3::new(b * b + c * c, -a * b, -a * c))
}

/// `g(R(v1, v2) v1, n) = 8 a c^2 (b^2 + c^2)` and
/// `g(R(v1, v2) v2, n) = 8 b c (b^2 + c^2)`.
pub fn case1_closed_forms(n: &NormalComponents) -> (f64, f64) {
    let (a, b, c) = (n.a, n.b, n.c);
    let w = b * b + c * c;
    (8.0 * a * c * c * w, 8.0 * b * c * w)
}

/// `R1213` and `R2123` for the principal frame
/// `e1 = cos mu v1/|v1| + sin mu v2/|v2|`, `e2 = -sin mu v1/|v1| + cos mu v2/|v2|`.
pub fn case1_sanini(n: &NormalComponents, mu: f64) -> (f64, f64) {
    let (v1, v2) = case1_frame(n);
    let (l1, l2) = (v1.norm(), v2.norm());
    let (a, b, c) = (n.a, n.b, n.c);
    let k = 8.0 * c * (b * b + c * c) / (l1 * l2);
    let (s, co) = mu.sin_cos();
    (k * (a * c / l1 * co + b / l2 * s), k * (a * c / l1 * s - b / l2 * co))
}

/// For a horizontal normal `n = cos phi e1 + sin phi e2`, the orthonormal
/// tangent frame `u1 = sin phi e1 - cos phi e2`, `u2 = e3`.
pub fn case2_frame(phi: f64) -> (Vec3, Vec3) {
    let (s, c) = phi.sin_cos();
    (Vec3::new(s, -c, 0.0), Vec3::new(0.0, 0.0, 1.0))
}

/// `(R(u1, u2) u1, R(u2, u1) u2) = (-e3, -sin phi e1 + cos phi e2)` in `g[1]`.
pub fn case2_curvatures(phi: f64) -> (Vec3, Vec3) {
    let (s, c) = phi.sin_cos();
    (Vec3::new(0.0, 0.0, -1.0), Vec3::new(-s, c, 0.0))
}

/// Angle `phi` of a horizontal normal.
pub fn normal_angle(n: &NormalComponents) -> f64 {
    n.b.atan2(n.a)
}

/// `R3113 = -7 cos^2 mu + sin^2 mu`, `R3223 = -7 sin^2 mu + cos^2 mu`, with `mu`
/// the angle from `(u1, u2)` to the principal frame.
pub fn case2_sanini(mu: f64) -> (f64, f64) {
    let (s, c) = mu.sin_cos();
    (-7.0 * c * c + s * s, -7.0 * s * s + c * c)
}

/// Coordinates of a sample's principal frame relative to `(u1, u2)`: the
/// principal angle `mu` with `e1 = cos mu u1 + sin mu u2`.
pub fn principal_angle_in(frame: &[Vec3; 3], u1: &Vec3, u2: &Vec3) -> f64 {
    NU.inner(&frame[0], u2).atan2(NU.inner(&frame[0], u1))
}

/// Parameter-plane coefficients `(alpha, beta)` of a vector `w` tangent to
/// the surface, `w = alpha phi_u + beta phi_v`.
pub fn tangent_coefficients(sm: &SurfaceSample, w: &Vec3, nu: MetricParam) -> Result<Vector2<f64>> {
    let inv = sm.first.matrix().try_inverse().ok_or(GeomError::DegenerateForm { det: sm.first.det() })?;
    Ok(inv * Vector2::new(nu.inner(w, &sm.jet.phi_u), nu.inner(w, &sm.jet.phi_v)))
}

/// `II(w1, w2)` for frame-component tangent vectors.
pub fn second_form_on_vectors(sm: &SurfaceSample, w1: &Vec3, w2: &Vec3, nu: MetricParam) -> Result<f64> {
    Ok(sm.second.apply(&tangent_coefficients(sm, w1, nu)?, &tangent_coefficients(sm, w2, nu)?))
}

/// Sampling spec for [`classify_gauss_map`]: a cell-centred `n x m` grid of
/// the immersion's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub n: usize,
    pub m: usize,
}

impl Grid {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 2 || m < 2 {
            return Err(GeomError::InvalidArgument(format!("grid {n}x{m} needs at least 2 points per axis")));
        }
        Ok(Self { n, m })
    }
}

/// Maxima over the grid behind each boolean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussEvidence {
    pub samples: usize,
    pub h_min: f64,
    pub h_max: f64,
    pub max_abs_h: f64,
    pub max_umbilic_defect: f64,
    pub max_vertical: f64,
    pub max_harmonic_defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussClassification {
    pub conformal: bool,
    pub vertically_harmonic: bool,
    pub harmonic: bool,
    pub tolerance: f64,
    pub evidence: GaussEvidence,
}

/// Per-sample quantities gathered by the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussSample {
    pub u: f64,
    pub v: f64,
    pub h: f64,
    pub umbilic_defect: f64,
    pub normal: NormalComponents,
    pub sanini: SaniniResiduals,
}

pub fn gauss_samples(s: &dyn Immersion, grid: Grid) -> Result<Vec<GaussSample>> {
    s.domain()
        .grid(grid.n, grid.m)
        .par_iter()
        .map(|&(u, v)| {
            let sm = sample(s, u, v, NU)?;
            Ok(GaussSample {
                u,
                v,
                h: sm.shape.h,
                umbilic_defect: sm.shape.umbilic_defect,
                normal: components_of(&sm),
                sanini: sanini_from_sample(&sm)?,
            })
        })
        .collect()
}

pub fn classify_gauss_map(s: &dyn Immersion, grid: Grid) -> Result<GaussClassification> {
    classify_gauss_map_with_tolerance(s, grid, TOL_CLASSIFY)
}

pub fn classify_gauss_map_with_tolerance(s: &dyn Immersion, grid: Grid, tol: f64) -> Result<GaussClassification> {
    let samples = gauss_samples(s, grid)?;
    let fold = |f: &dyn Fn(&GaussSample) -> f64| samples.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let evidence = GaussEvidence {
        samples: samples.len(),
        h_min: -fold(&|g| -g.h),
        h_max: fold(&|g| g.h),
        max_abs_h: fold(&|g| g.h.abs()),
        max_umbilic_defect: fold(&|g| g.umbilic_defect),
        max_vertical: fold(&|g| g.sanini.vertical()),
        max_harmonic_defect: fold(&|g| g.sanini.harmonic_defect()),
    };
    let spread = evidence.h_max - evidence.h_min;
    if !(spread <= TOL_CONSTANT_H) {
        return Err(GeomError::NotConstantMeanCurvature { spread });
    }
    let minimal = evidence.max_abs_h < tol;
    let conformal = evidence.max_umbilic_defect < tol || minimal;
    let vertically_harmonic = evidence.max_vertical < tol;
    let harmonic = vertically_harmonic && minimal && evidence.max_harmonic_defect < tol;
    debug_assert!(!harmonic || vertically_harmonic);
    Ok(GaussClassification { conformal, vertically_harmonic, harmonic, tolerance: tol, evidence })
}

/// `L^-1` applied to a tangent vector at chart point with angle `theta`: for
/// `V = v1 e1 + v2 e2 + v3 e3`,
/// `L^-1 V = Ad(K(theta)^-1) (-v3 i + v1 j' - v2 k')`.
pub fn left_translate_to_identity(theta: f64, v: &Vec3) -> LieVector {
    let x = LieVector::new(-v[2], v[0], -v[1]);
    adjoint_act(&GroupElement::rotation(-theta), &x).expect("rotations are unimodular")
}

/// Normal Gauss map `Upsilon = L^-1 n` into the unit sphere of the Lie
/// algebra with its `g[1]` scalar product.
pub fn normal_gauss_map(s: &dyn Immersion, u: f64, v: f64) -> Result<LieVector> {
    let sm = sample(s, u, v, NU)?;
    Ok(left_translate_to_identity(sm.jet.point.theta, &sm.normal))
}
