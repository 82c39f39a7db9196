//! Finite-difference recomputation of the connection, brackets and
//! curvature directly from the coordinate matrix of `g[nu]`.
//!
//! Nothing here consults the frame tables; it exists so the tables can be
//! checked against an independent route. Christoffel symbols come from the
//! Koszul formula in coordinates,
//! `G^c_ab = g^cd (d_a g_db + d_b g_da - d_d g_ab) / 2`, with fourth-order
//! central differences of [`metric_at`].

use crate::error::Result;
use crate::fd;
use crate::group::ChartPoint;
use crate::metric::{coframe_matrix, frame_matrix, metric_at, MetricParam};
use crate::{Mat3, Vec3};

/// `gamma[c][a][b] = G^c_ab` in coordinates.
pub type Christoffel = [[[f64; 3]; 3]; 3];

/// Step used for the outer derivative when differences are nested.
pub fn outer_step(p: &ChartPoint) -> f64 {
    1e-3 * p.y.abs().max(1.0)
}

pub fn christoffel(p: &ChartPoint, nu: MetricParam) -> Result<Christoffel> {
    christoffel_with_step(p, nu, fd::step_at(p))
}

pub fn christoffel_with_step(p: &ChartPoint, nu: MetricParam, h: f64) -> Result<Christoffel> {
    let g = metric_at(p, nu)?;
    let ginv = g.try_inverse().ok_or(crate::GeomError::DegenerateForm { det: g.determinant() })?;
    let metric = |q: &ChartPoint| metric_at(q, nu).unwrap_or_else(|_| Mat3::from_element(f64::NAN));
    let dg: [Mat3; 3] = [0, 1, 2].map(|a| fd::partial(metric, p, a, h));
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for c in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                let mut s = 0.0;
                for d in 0..3 {
                    s += ginv[(c, d)] * (dg[a][(d, b)] + dg[b][(d, a)] - dg[d][(a, b)]);
                }
                gamma[c][a][b] = 0.5 * s;
            }
        }
    }
    Ok(gamma)
}

fn to_coords(p: &ChartPoint, frame: &Vec3) -> Vec3 {
    frame_matrix(p) * frame
}

/// `nabla_U V` at `p` for frame-component fields, computed entirely in
/// coordinates and converted back to frame components.
pub fn covariant_derivative(
    u: impl Fn(&ChartPoint) -> Vec3,
    v: impl Fn(&ChartPoint) -> Vec3,
    p: &ChartPoint,
    nu: MetricParam,
) -> Result<Vec3> {
    covariant_derivative_with_step(u, v, p, nu, fd::step_at(p))
}

pub fn covariant_derivative_with_step(
    u: impl Fn(&ChartPoint) -> Vec3,
    v: impl Fn(&ChartPoint) -> Vec3,
    p: &ChartPoint,
    nu: MetricParam,
    h: f64,
) -> Result<Vec3> {
    let gamma = christoffel(p, nu)?;
    let uc = to_coords(p, &u(p));
    let vc = to_coords(p, &v(p));
    let v_coords = |q: &ChartPoint| to_coords(q, &v(q));
    let dv = fd::directional(v_coords, p, [uc[0], uc[1], uc[2]], h);
    let mut out = dv;
    for c in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                out[c] += gamma[c][a][b] * uc[a] * vc[b];
            }
        }
    }
    Ok(coframe_matrix(p) * out)
}

/// `[U, V]` at `p` in frame components, from coordinate derivatives.
pub fn lie_bracket(u: impl Fn(&ChartPoint) -> Vec3, v: impl Fn(&ChartPoint) -> Vec3, p: &ChartPoint) -> Vec3 {
    let h = fd::step_at(p);
    let uc = to_coords(p, &u(p));
    let vc = to_coords(p, &v(p));
    let du = fd::directional(|q: &ChartPoint| to_coords(q, &u(q)), p, [vc[0], vc[1], vc[2]], h);
    let dv = fd::directional(|q: &ChartPoint| to_coords(q, &v(q)), p, [uc[0], uc[1], uc[2]], h);
    coframe_matrix(p) * (dv - du)
}

/// `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z` at `p`
/// for constant-frame-component fields `X, Y, Z`, by nesting the oracle
/// covariant derivative. The outer derivatives use [`outer_step`].
pub fn curvature_by_composition(x: &Vec3, y: &Vec3, z: &Vec3, p: &ChartPoint, nu: MetricParam) -> Result<Vec3> {
    let (x, y, z) = (*x, *y, *z);
    let inner = |a: Vec3| {
        move |q: &ChartPoint| covariant_derivative(|_| a, |_| z, q, nu).unwrap_or_else(|_| Vec3::repeat(f64::NAN))
    };
    let h2 = outer_step(p);
    let xy = covariant_derivative_with_step(|_| x, inner(y), p, nu, h2)?;
    let yx = covariant_derivative_with_step(|_| y, inner(x), p, nu, h2)?;
    let br = lie_bracket(|_| x, |_| y, p);
    let last = covariant_derivative(|_| br, |_| z, p, nu)?;
    Ok(xy - yx - last)
}

/// Coordinate components of the contact form `eta = -dtheta - dx / 2y`.
pub fn eta_coords(p: &ChartPoint) -> Vec3 {
    Vec3::new(-0.5 / p.y, 0.0, -1.0)
}

/// `d eta (X, Y) = X eta(Y) - Y eta(X) - eta([X,Y])`, computed as
/// `(d_a eta_b - d_b eta_a) X^a Y^b` from finite differences of the
/// coordinate components.
pub fn d_eta(p: &ChartPoint, x: &Vec3, y: &Vec3) -> f64 {
    let h = fd::step_at(p);
    let d: [Vec3; 3] = [0, 1, 2].map(|a| fd::partial(eta_coords, p, a, h));
    let (xc, yc) = (to_coords(p, x), to_coords(p, y));
    let mut s = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            s += (d[a][b] - d[b][a]) * xc[a] * yc[b];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{bracket_table, connection_table, Frame};

    #[test]
    fn bracket_of_frame_fields() {
        let p = ChartPoint::new(0.3, 1.4, 0.9).unwrap();
        let b = lie_bracket(|_| Frame::E1.vector(), |_| Frame::E2.vector(), &p);
        assert!((b - bracket_table(Frame::E1, Frame::E2)).abs().max() < 1e-6);
        let b = lie_bracket(|_| Frame::E1.vector(), |_| Frame::E3.vector(), &p);
        assert!(b.abs().max() < 1e-6);
    }

    #[test]
    fn oracle_connection_matches_table_at_a_point() {
        let p = ChartPoint::new(-1.1, 0.6, 3.0).unwrap();
        for nu in [MetricParam::RIEMANNIAN, MetricParam::LORENTZIAN] {
            for i in Frame::ALL {
                for j in Frame::ALL {
                    let d = covariant_derivative(|_| i.vector(), |_| j.vector(), &p, nu).unwrap();
                    assert!((d - connection_table(i, j, nu)).abs().max() < 1e-5, "{i}{j}");
                }
            }
        }
    }
}
