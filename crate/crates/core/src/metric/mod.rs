//! The metric family `g[nu]` in the frame
//!
//! ```text
//! e1 = 2y d/dx - d/dtheta,   e2 = 2y d/dy,   e3 = d/dtheta
//! ```
//!
//! dual to the coframe `w1 = dx/2y`, `w2 = dy/2y`, `w3 = dtheta + dx/2y`.
//! The frame is pseudo-orthonormal: `g(e_i, e_j) = diag(1, 1, nu)`, so the
//! word "orthonormal" below always means with respect to that signature.
//!
//! All tables (connection, brackets, curvature) are constant in this frame.
//! Frame components are the internal representation everywhere; coordinate
//! components appear only through [`CoordinateVector`] and [`metric_at`].

pub mod oracle;
pub mod sasaki;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::fd;
use crate::group::ChartPoint;
use crate::{Mat3, Vec3};

pub use sasaki::{curvature_sasaki_form, sasaki_residuals, SasakiData, SasakiResiduals};

/// Nonzero real parameter of the metric family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricParam(f64);

impl MetricParam {
    /// `g[1]`, the canonical Riemannian metric.
    pub const RIEMANNIAN: Self = Self(1.0);
    /// `g[-1]`, the biinvariant Lorentz metric (anti-de Sitter space).
    pub const LORENTZIAN: Self = Self(-1.0);

    pub fn new(nu: f64) -> Result<Self> {
        if nu == 0.0 || !nu.is_finite() {
            return Err(GeomError::ZeroMetricParam);
        }
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn frame_metric(self) -> Mat3 {
        Mat3::from_diagonal(&Vec3::new(1.0, 1.0, self.0))
    }

    /// `g(X, Y)` for frame components.
    pub fn inner(self, x: &Vec3, y: &Vec3) -> f64 {
        x[0] * y[0] + x[1] * y[1] + self.0 * x[2] * y[2]
    }

    /// Raises an index: the vector `V` with `g(V, .) = w` for frame covector `w`.
    pub fn sharp(self, w: &Vec3) -> Vec3 {
        Vec3::new(w[0], w[1], w[2] / self.0)
    }
}

/// One of the three frame fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    E1,
    E2,
    E3,
}

impl Frame {
    pub const ALL: [Frame; 3] = [Frame::E1, Frame::E2, Frame::E3];

    pub fn index(self) -> usize {
        match self {
            Frame::E1 => 0,
            Frame::E2 => 1,
            Frame::E3 => 2,
        }
    }

    pub fn from_index(i: usize) -> Frame {
        Frame::ALL[i]
    }

    pub fn vector(self) -> Vec3 {
        let mut v = Vec3::zeros();
        v[self.index()] = 1.0;
        v
    }
}

impl std::fmt::Display for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{}", self.index() + 1)
    }
}

/// Tangent vector in frame components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    pub base: ChartPoint,
    pub frame: Vec3,
}

impl TangentVector {
    pub fn new(base: ChartPoint, frame: Vec3) -> Result<Self> {
        check_point(&base)?;
        Ok(Self { base, frame })
    }

    pub fn to_coordinates(&self) -> CoordinateVector {
        CoordinateVector { base: self.base, coords: frame_matrix(&self.base) * self.frame }
    }
}

/// Tangent vector in `(d/dx, d/dy, d/dtheta)` components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinateVector {
    pub base: ChartPoint,
    pub coords: Vec3,
}

impl CoordinateVector {
    pub fn new(base: ChartPoint, coords: Vec3) -> Result<Self> {
        check_point(&base)?;
        Ok(Self { base, coords })
    }

    pub fn to_frame(&self) -> TangentVector {
        TangentVector { base: self.base, frame: coframe_matrix(&self.base) * self.coords }
    }
}

fn check_point(p: &ChartPoint) -> Result<()> {
    if !(p.y > 0.0) {
        return Err(GeomError::NonPositiveY { y: p.y });
    }
    Ok(())
}

/// Columns are the coordinate components of `e1, e2, e3` at `p`.
pub fn frame_matrix(p: &ChartPoint) -> Mat3 {
    let t = 2.0 * p.y;
    Mat3::new(t, 0.0, 0.0, 0.0, t, 0.0, -1.0, 0.0, 1.0)
}

/// Rows are the coordinate components of `w1, w2, w3` at `p`.
pub fn coframe_matrix(p: &ChartPoint) -> Mat3 {
    let s = 0.5 / p.y;
    Mat3::new(s, 0.0, 0.0, 0.0, s, 0.0, s, 0.0, 1.0)
}

/// Derivative of [`coframe_matrix`] with respect to `y`.
pub(crate) fn coframe_matrix_dy(p: &ChartPoint) -> Mat3 {
    let s = -0.5 / (p.y * p.y);
    Mat3::new(s, 0.0, 0.0, 0.0, s, 0.0, s, 0.0, 0.0)
}

/// Matrix of `g[nu]` in `(dx, dy, dtheta)`.
pub fn metric_at(p: &ChartPoint, nu: MetricParam) -> Result<Mat3> {
    check_point(p)?;
    let w = coframe_matrix(p);
    Ok(w.transpose() * nu.frame_metric() * w)
}

pub fn frame_at(p: &ChartPoint) -> Result<[CoordinateVector; 3]> {
    check_point(p)?;
    let e = frame_matrix(p);
    Ok([0, 1, 2].map(|i| CoordinateVector { base: *p, coords: e.column(i).into() }))
}

/// `[e_i, e_j]` in frame components. The only nonzero bracket is
/// `[e1, e2] = -2 e1 - 2 e3`.
pub fn bracket_table(i: Frame, j: Frame) -> Vec3 {
    match (i, j) {
        (Frame::E1, Frame::E2) => Vec3::new(-2.0, 0.0, -2.0),
        (Frame::E2, Frame::E1) => Vec3::new(2.0, 0.0, 2.0),
        _ => Vec3::zeros(),
    }
}

/// `nabla_{e_i} e_j` in frame components.
pub fn connection_table(i: Frame, j: Frame, nu: MetricParam) -> Vec3 {
    use Frame::*;
    let n = nu.value();
    match (i, j) {
        (E1, E1) => Vec3::new(0.0, 2.0, 0.0),
        (E1, E2) => Vec3::new(-2.0, 0.0, -1.0),
        (E1, E3) => Vec3::new(0.0, n, 0.0),
        (E2, E1) => Vec3::new(0.0, 0.0, 1.0),
        (E2, E2) => Vec3::zeros(),
        (E2, E3) => Vec3::new(-n, 0.0, 0.0),
        (E3, E1) => Vec3::new(0.0, n, 0.0),
        (E3, E2) => Vec3::new(-n, 0.0, 0.0),
        (E3, E3) => Vec3::zeros(),
    }
}

/// Algebraic part `X^i Y^j nabla_{e_i} e_j` of the covariant derivative;
/// exact for fields with constant frame components.
pub fn connection(x: &Vec3, y: &Vec3, nu: MetricParam) -> Vec3 {
    let mut out = Vec3::zeros();
    for i in Frame::ALL {
        for j in Frame::ALL {
            let c = x[i.index()] * y[j.index()];
            if c != 0.0 {
                out += connection_table(i, j, nu) * c;
            }
        }
    }
    out
}

/// Covariant derivative `nabla_U V` at `p` of vector fields given by their
/// frame components, via the Leibniz rule over [`connection_table`]. The
/// derivative of the component functions is a central difference.
pub fn covariant_derivative(
    u: impl Fn(&ChartPoint) -> Vec3,
    v: impl Fn(&ChartPoint) -> Vec3,
    p: &ChartPoint,
    nu: MetricParam,
) -> Result<Vec3> {
    check_point(p)?;
    let up = u(p);
    let vp = v(p);
    if !up.iter().chain(vp.iter()).all(|c| c.is_finite()) {
        return Err(GeomError::NonFinite("vector field value"));
    }
    let dir = frame_matrix(p) * up;
    let dv = fd::directional(&v, p, [dir[0], dir[1], dir[2]], fd::step_at(p));
    if !dv.iter().all(|c| c.is_finite()) {
        return Err(GeomError::NonFinite("vector field derivative"));
    }
    Ok(dv + connection(&up, &vp, nu))
}

/// `R(e_i, e_j) e_k` in frame components, for
/// `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`.
///
/// Nonzero entries (up to antisymmetry in the first pair):
///
/// ```text
/// R(e1,e2)e1 = (3nu+4) e2     R(e1,e2)e2 = -(3nu+4) e1
/// R(e1,e3)e1 = -nu e3         R(e1,e3)e3 = nu^2 e1
/// R(e2,e3)e2 = -nu e3         R(e2,e3)e3 = nu^2 e2
/// ```
pub fn curvature_table(i: Frame, j: Frame, k: Frame, nu: MetricParam) -> Vec3 {
    use Frame::*;
    let n = nu.value();
    let (sign, a, b) = match (i.index(), j.index()) {
        (x, y) if x == y => return Vec3::zeros(),
        (x, y) if x < y => (1.0, i, j),
        _ => (-1.0, j, i),
    };
    let h = 3.0 * n + 4.0;
    let v = match (a, b, k) {
        (E1, E2, E1) => Vec3::new(0.0, h, 0.0),
        (E1, E2, E2) => Vec3::new(-h, 0.0, 0.0),
        (E1, E3, E1) => Vec3::new(0.0, 0.0, -n),
        (E1, E3, E3) => Vec3::new(n * n, 0.0, 0.0),
        (E2, E3, E2) => Vec3::new(0.0, 0.0, -n),
        (E2, E3, E3) => Vec3::new(0.0, n * n, 0.0),
        _ => Vec3::zeros(),
    };
    v * sign
}

/// Multilinear extension of [`curvature_table`].
pub fn curvature(x: &Vec3, y: &Vec3, z: &Vec3, nu: MetricParam) -> Vec3 {
    let mut out = Vec3::zeros();
    for i in Frame::ALL {
        for j in Frame::ALL {
            let cij = x[i.index()] * y[j.index()];
            if cij == 0.0 || i == j {
                continue;
            }
            for k in Frame::ALL {
                let c = cij * z[k.index()];
                if c != 0.0 {
                    out += curvature_table(i, j, k, nu) * c;
                }
            }
        }
    }
    out
}

/// `g(R(X,Y)Z, W)`.
pub fn curvature_tensor(x: &Vec3, y: &Vec3, z: &Vec3, w: &Vec3, nu: MetricParam) -> f64 {
    nu.inner(&curvature(x, y, z, nu), w)
}

/// Plane spanned by frame vectors with a Gram determinant below this is
/// rejected as degenerate.
pub const TOL_PLANE: f64 = 1e-8;

/// `K(X, Y) = g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2)`.
pub fn sectional_curvature(x: &Vec3, y: &Vec3, nu: MetricParam) -> Result<f64> {
    let gram = nu.inner(x, x) * nu.inner(y, y) - nu.inner(x, y).powi(2);
    if gram.abs() < TOL_PLANE {
        return Err(GeomError::DegeneratePlane { gram });
    }
    Ok(curvature_tensor(x, y, y, x, nu) / gram)
}
