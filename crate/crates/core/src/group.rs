//! SL(2,R), its Iwasawa chart, its Lie algebra and the anti-de Sitter model.

use std::f64::consts::TAU;
use std::ops::Mul;

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Default tolerance on `|det - 1|` for group elements.
pub const TOL_DET: f64 = 1e-10;
/// Default tolerance separating the orbit types by the sign of `det X`.
pub const TOL_ORBIT: f64 = 1e-9;

/// A real 2x2 matrix `(a b; c d)` of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement {
    pub const IDENTITY: Self = Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_tolerance(a, b, c, d, TOL_DET)
    }

    pub fn with_tolerance(a: f64, b: f64, c: f64, d: f64, tol: f64) -> Result<Self> {
        let g = Self { a, b, c, d };
        g.check(tol)?;
        Ok(g)
    }

    /// Wraps the entries without checking the determinant. Every operation
    /// taking a group element re-validates it.
    pub const fn unchecked(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        let det = self.det();
        if !det.is_finite() || (det - 1.0).abs() > tol {
            return Err(GeomError::NotUnimodular { det });
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.a, self.b, self.c, self.d)
    }

    pub fn from_matrix(m: &Matrix2<f64>) -> Result<Self> {
        Self::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
    }

    /// Nilpotent factor `(1 x; 0 1)`.
    pub fn nilpotent(x: f64) -> Self {
        Self { a: 1.0, b: x, c: 0.0, d: 1.0 }
    }

    /// Abelian factor `diag(sqrt y, 1/sqrt y)`.
    pub fn abelian(y: f64) -> Result<Self> {
        if !(y > 0.0) {
            return Err(GeomError::NonPositiveY { y });
        }
        let s = y.sqrt();
        Ok(Self { a: s, b: 0.0, c: 0.0, d: 1.0 / s })
    }

    /// Rotation factor `(cos t, sin t; -sin t, cos t)`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    /// Exponential of a trace-free matrix, using `X^2 = -det(X) 1`.
    pub fn exp(x: &LieVector) -> Self {
        let m = x.matrix();
        let det = x.det();
        let (c0, c1) = if det > 0.0 {
            let w = det.sqrt();
            (w.cos(), w.sin() / w)
        } else if det < 0.0 {
            let w = (-det).sqrt();
            (w.cosh(), w.sinh() / w)
        } else {
            (1.0, 1.0)
        };
        let e = Matrix2::identity() * c0 + m * c1;
        Self::unchecked(e[(0, 0)], e[(0, 1)], e[(1, 0)], e[(1, 1)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, r: GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * r.a + self.b * r.c,
            b: self.a * r.b + self.b * r.d,
            c: self.c * r.a + self.d * r.c,
            d: self.c * r.b + self.d * r.d,
        }
    }
}

/// Iwasawa coordinates `(x, y, theta)` with `y > 0`. `theta` is kept as given
/// (it is interpreted modulo 2 pi) so that parametrised surfaces stay smooth
/// across the seam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl ChartPoint {
    pub fn new(x: f64, y: f64, theta: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !theta.is_finite() || !y.is_finite() {
            return Err(GeomError::NonPositiveY { y });
        }
        Ok(Self { x, y, theta })
    }

    /// Angle reduced to `[0, 2 pi)`.
    pub fn theta_reduced(&self) -> f64 {
        let t = self.theta.rem_euclid(TAU);
        if t >= TAU {
            0.0
        } else {
            t
        }
    }

    pub fn to_group(&self) -> GroupElement {
        chart_to_group(self).expect("chart points have y > 0")
    }
}

/// `N(x) A(y) K(theta)`.
pub fn chart_to_group(p: &ChartPoint) -> Result<GroupElement> {
    if !(p.y > 0.0) {
        return Err(GeomError::NonPositiveY { y: p.y });
    }
    let s = p.y.sqrt();
    let (sn, cs) = p.theta.sin_cos();
    Ok(GroupElement { a: s * cs - p.x / s * sn, b: s * sn + p.x / s * cs, c: -sn / s, d: cs / s })
}

/// Inverse of [`chart_to_group`].
///
/// The bottom row of `g` is `(-sin theta, cos theta) / sqrt y`, so `theta` is
/// `atan2(-c, d)` reduced to `[0, 2 pi)`. Then `g k(theta)^-1 = N(x) A(y)`,
/// whose first column is `(sqrt y, 0)` and whose `(1,2)` entry is `x / sqrt y`.
pub fn group_to_chart(g: &GroupElement) -> Result<ChartPoint> {
    g.check(TOL_DET)?;
    let theta = (-g.c).atan2(g.d).rem_euclid(TAU);
    let theta = if theta >= TAU { 0.0 } else { theta };
    let na = *g * GroupElement::rotation(theta).inverse();
    let sqrt_y = na.a.hypot(na.c);
    let y = sqrt_y * sqrt_y;
    let x = na.b * sqrt_y;
    ChartPoint::new(x, y, theta)
}

/// Projection of the Hopf fibering onto the upper half plane `H^2(1/2)`.
pub fn hopf_project(p: &ChartPoint) -> (f64, f64) {
    (p.x, p.y)
}

/// An element `x1 i + x2 j' + x3 k'` of the Lie algebra sl(2,R), with
///
/// ```text
/// i = (0 -1; 1 0),  j' = (0 1; 1 0),  k' = (-1 0; 0 1).
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LieVector {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl LieVector {
    pub const I: Self = Self { x1: 1.0, x2: 0.0, x3: 0.0 };
    pub const J: Self = Self { x1: 0.0, x2: 1.0, x3: 0.0 };
    pub const K: Self = Self { x1: 0.0, x2: 0.0, x3: 1.0 };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    /// `(-x3, -x1 + x2; x1 + x2, x3)`.
    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(-self.x3, -self.x1 + self.x2, self.x1 + self.x2, self.x3)
    }

    /// Coefficients of the trace-free part of `m`.
    pub fn from_matrix(m: &Matrix2<f64>) -> Self {
        let x3 = 0.5 * (m[(1, 1)] - m[(0, 0)]);
        let x1 = 0.5 * (m[(1, 0)] - m[(0, 1)]);
        let x2 = 0.5 * (m[(1, 0)] + m[(0, 1)]);
        Self { x1, x2, x3 }
    }

    /// `det X = x1^2 - x2^2 - x3^2`.
    pub fn det(&self) -> f64 {
        self.x1 * self.x1 - self.x2 * self.x2 - self.x3 * self.x3
    }

    pub fn norm_inf(&self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

impl std::ops::Add for LieVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl std::ops::Sub for LieVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl std::ops::Mul<f64> for LieVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

/// Selects the scalar product induced on the Lie algebra by `g[1]` (`Plus`,
/// Euclidean) or by `g[-1]` (`Minus`, Minkowski).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricSign {
    Plus,
    Minus,
}

/// `+-x1 y1 + x2 y2 + x3 y3`.
pub fn algebra_scalar_product(x: &LieVector, y: &LieVector, s: MetricSign) -> f64 {
    let sign = match s {
        MetricSign::Plus => 1.0,
        MetricSign::Minus => -1.0,
    };
    sign * x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3
}

/// The same scalar products through their trace formulas:
/// `tr(X^t Y) / 2` for `Plus` and `tr(X Y) / 2` for `Minus`.
pub fn trace_scalar_product(x: &LieVector, y: &LieVector, s: MetricSign) -> f64 {
    let (mx, my) = (x.matrix(), y.matrix());
    match s {
        MetricSign::Plus => 0.5 * (mx.transpose() * my).trace(),
        MetricSign::Minus => 0.5 * (mx * my).trace(),
    }
}

/// `Ad(g) X = g X g^-1`.
pub fn adjoint_act(g: &GroupElement, x: &LieVector) -> Result<LieVector> {
    g.check(TOL_DET)?;
    let m = g.matrix() * x.matrix() * g.inverse().matrix();
    Ok(LieVector::from_matrix(&m))
}

/// Adjoint orbit containing a Lie algebra element, labelled by `c = det X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OrbitClass {
    /// `c < 0`: the pseudo 2-sphere of radius `sqrt(-c)`.
    PseudoSphere(f64),
    /// `c > 0`, `x1 > 0`: upper sheet of the hyperbolic plane of radius `sqrt c`.
    HyperbolicUpper(f64),
    /// `c > 0`, `x1 < 0`.
    HyperbolicLower(f64),
    FutureCone,
    PastCone,
    Zero,
}

impl OrbitClass {
    pub fn det(&self) -> f64 {
        match *self {
            OrbitClass::PseudoSphere(c) | OrbitClass::HyperbolicUpper(c) | OrbitClass::HyperbolicLower(c) => c,
            _ => 0.0,
        }
    }

    /// Whether two classes name the same orbit type (ignoring `c`).
    pub fn same_kind(&self, other: &Self) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

pub fn classify_orbit(x: &LieVector) -> OrbitClass {
    classify_orbit_with_tolerance(x, TOL_ORBIT)
}

pub fn classify_orbit_with_tolerance(x: &LieVector, tol: f64) -> OrbitClass {
    // The origin is its own orbit and is excluded from the cone.
    if x.norm_inf() < tol {
        return OrbitClass::Zero;
    }
    let c = x.det();
    if c < -tol {
        OrbitClass::PseudoSphere(c)
    } else if c > tol {
        if x.x1 > 0.0 {
            OrbitClass::HyperbolicUpper(c)
        } else {
            OrbitClass::HyperbolicLower(c)
        }
    } else if x.x1 > 0.0 {
        OrbitClass::FutureCone
    } else {
        OrbitClass::PastCone
    }
}

/// A point of `E^4_2 = (R^4, -dx0^2 - dx1^2 + dx2^2 + dx3^2)`, identified with
/// 2x2 real matrices through `x0 1 + x1 i + x2 j' + x3 k'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdSPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl AdSPoint {
    pub fn from_matrix(m: &Matrix2<f64>) -> Self {
        Self {
            x0: 0.5 * (m[(0, 0)] + m[(1, 1)]),
            x1: 0.5 * (m[(1, 0)] - m[(0, 1)]),
            x2: 0.5 * (m[(1, 0)] + m[(0, 1)]),
            x3: 0.5 * (m[(1, 1)] - m[(0, 0)]),
        }
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.x0 - self.x3, -self.x1 + self.x2, self.x1 + self.x2, self.x0 + self.x3)
    }

    /// `-x0^2 - x1^2 + x2^2 + x3^2`; equals `-1` on anti-de Sitter space.
    pub fn quadric(&self) -> f64 {
        -self.x0 * self.x0 - self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        (self.x0 - o.x0).abs().max((self.x1 - o.x1).abs()).max((self.x2 - o.x2).abs()).max((self.x3 - o.x3).abs())
    }
}

pub fn embed_ads(g: &GroupElement) -> Result<AdSPoint> {
    g.check(TOL_DET)?;
    Ok(AdSPoint::from_matrix(&g.matrix()))
}
