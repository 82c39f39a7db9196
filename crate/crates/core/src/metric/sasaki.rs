//! The canonical Sasaki structure `(eta, xi, F, g[nu])`:
//! `eta = -w3`, `xi = -e3`, `F e1 = e2`, `F e2 = -e1`, `F e3 = 0`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::ChartPoint;
use crate::metric::{oracle, MetricParam};
use crate::{Mat3, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SasakiData {
    pub base: ChartPoint,
    /// Frame components of the covector `eta`.
    pub eta: Vec3,
    pub xi: Vec3,
    pub f: Mat3,
}

impl SasakiData {
    pub fn at(p: &ChartPoint) -> Self {
        Self { base: *p, eta: Vec3::new(0.0, 0.0, -1.0), xi: XI, f: f_matrix() }
    }
}

pub const XI: Vec3 = Vec3::new(0.0, 0.0, -1.0);

pub fn eta(x: &Vec3) -> f64 {
    -x[2]
}

pub fn f_matrix() -> Mat3 {
    Mat3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
}

pub fn apply_f(x: &Vec3) -> Vec3 {
    Vec3::new(-x[1], x[0], 0.0)
}

/// Curvature through the Sasaki structure:
///
/// ```text
/// R(X,Y)Z = -g(Y,Z)X + g(Z,X)Y - (1+nu){ eta(Z)eta(X)Y - eta(Y)eta(Z)X
///           + g(Z,X)eta(Y)xi - g(Y,Z)eta(X)xi
///           - g(Y,FZ)FX - g(Z,FX)FY + 2g(X,FY)FZ }
/// ```
///
/// This closed form reproduces the frame table only for `nu = +-1`; for other
/// `nu` the vertical sectional curvature is `nu` here but `nu^2 / nu` in the
/// table.
pub fn curvature_sasaki_form(x: &Vec3, y: &Vec3, z: &Vec3, nu: MetricParam) -> Vec3 {
    let g = |a: &Vec3, b: &Vec3| nu.inner(a, b);
    let (fx, fy, fz) = (apply_f(x), apply_f(y), apply_f(z));
    let brace = y * (eta(z) * eta(x)) - x * (eta(y) * eta(z)) + XI * (g(z, x) * eta(y))
        - XI * (g(y, z) * eta(x))
        - fx * g(y, &fz)
        - fy * g(z, &fx)
        + fz * (2.0 * g(x, &fy));
    -x * g(y, z) + y * g(z, x) - brace * (1.0 + nu.value())
}

/// Max-norm residuals of the five structure identities at one `(p, X, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SasakiResiduals {
    /// `F^2 = -I + eta (x) xi`, applied to `X` and `Y`.
    pub f_squared: f64,
    /// `d eta(X,Y) = 2 g(X, FY)`.
    pub d_eta: f64,
    /// `g(FX,FY) = g(X,Y) - nu eta(X) eta(Y)`.
    pub f_metric: f64,
    /// `nabla_X xi = -nu F X`.
    pub nabla_xi: f64,
    /// `(nabla_X F) Y = g(X,Y) xi - nu eta(Y) X`.
    pub nabla_f: f64,
}

impl SasakiResiduals {
    pub fn max(&self) -> f64 {
        self.f_squared.max(self.d_eta).max(self.f_metric).max(self.nabla_xi).max(self.nabla_f)
    }

    pub fn as_array(&self) -> [(&'static str, f64); 5] {
        [
            ("f_squared", self.f_squared),
            ("d_eta", self.d_eta),
            ("f_metric", self.f_metric),
            ("nabla_xi", self.nabla_xi),
            ("nabla_f", self.nabla_f),
        ]
    }
}

/// Derivative terms (`d eta`, `nabla xi`, `nabla F`) go through the
/// finite-difference oracle with `X`, `Y` extended as constant-frame fields.
pub fn sasaki_residuals(p: &ChartPoint, x: &Vec3, y: &Vec3, nu: MetricParam) -> Result<SasakiResiduals> {
    let f = f_matrix();
    let g = |a: &Vec3, b: &Vec3| nu.inner(a, b);
    let f2 = f * f;
    let f_squared = [x, y].iter().map(|v| (f2 * *v - (-*v + XI * eta(v))).abs().max()).fold(0.0, f64::max);

    let d_eta = (oracle::d_eta(p, x, y) - 2.0 * g(x, &apply_f(y))).abs();

    let f_metric = (g(&apply_f(x), &apply_f(y)) - g(x, y) + nu.value() * eta(x) * eta(y)).abs();

    let (xv, yv) = (*x, *y);
    let nx = oracle::covariant_derivative(|_| xv, |_| XI, p, nu)?;
    let nabla_xi = (nx + apply_f(x) * nu.value()).abs().max();

    let d_fy = oracle::covariant_derivative(|_| xv, |_| apply_f(&yv), p, nu)?;
    let d_y = oracle::covariant_derivative(|_| xv, |_| yv, p, nu)?;
    let lhs = d_fy - apply_f(&d_y);
    let rhs = XI * g(x, y) - x * (nu.value() * eta(y));
    let nabla_f = (lhs - rhs).abs().max();

    Ok(SasakiResiduals { f_squared, d_eta, f_metric, nabla_xi, nabla_f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{connection_table, curvature, Frame};

    #[test]
    fn xi_is_unit_reeb() {
        assert_eq!(eta(&XI), 1.0);
        assert_eq!(SasakiData::at(&ChartPoint::new(0.0, 1.0, 0.0).unwrap()).xi, Vec3::new(0.0, 0.0, -1.0));
    }

    #[test]
    fn nabla_xi_along_e1() {
        for nu in [MetricParam::RIEMANNIAN, MetricParam::LORENTZIAN] {
            let table = -connection_table(Frame::E1, Frame::E3, nu);
            assert_eq!(table, -apply_f(&Frame::E1.vector()) * nu.value());
        }
    }

    #[test]
    fn closed_form_matches_table_for_unit_nu() {
        let vs = [Vec3::new(0.3, -1.2, 0.8), Vec3::new(1.0, 2.0, -0.5), Vec3::new(-0.7, 0.1, 1.4)];
        for nu in [MetricParam::RIEMANNIAN, MetricParam::LORENTZIAN] {
            for a in &vs {
                for b in &vs {
                    for c in &vs {
                        let d = curvature_sasaki_form(a, b, c, nu) - curvature(a, b, c, nu);
                        assert!(d.abs().max() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn residuals_small_at_a_point() {
        let p = ChartPoint::new(0.2, 0.8, 1.0).unwrap();
        let x = Vec3::new(0.5, -0.3, 1.1);
        let y = Vec3::new(-1.0, 0.4, 0.2);
        for nu in [MetricParam::RIEMANNIAN, MetricParam::LORENTZIAN] {
            let r = sasaki_residuals(&p, &x, &y, nu).unwrap();
            assert!(r.max() < 1e-6, "{r:?}");
        }
    }
}
