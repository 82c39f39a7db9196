//! Hopf cylinders: inverse images of plane curves under `pi: G -> H^2(1/2)`.

use std::f64::consts::TAU;

use crate::error::Result;
use crate::families::curve::HyperbolicCurve;
use crate::group::ChartPoint;
use crate::surface::{CoordJet, Domain, Immersion};
use crate::Vec3;

/// `phi(u, v) = N(x(v)) A(y(v)) K(u)`, i.e. chart point `(x(v), y(v), u)`.
/// The fibre direction is `d/du = e3`.
#[derive(Debug, Clone)]
pub struct HopfCylinder {
    pub curve: HyperbolicCurve,
}

impl HopfCylinder {
    pub fn new(curve: HyperbolicCurve) -> Result<Self> {
        curve.with_domain(curve.domain)?;
        Ok(Self { curve })
    }
}

impl Immersion for HopfCylinder {
    fn domain(&self) -> Domain {
        Domain { u: (0.0, TAU), v: self.curve.domain, periodic_u: true, periodic_v: self.curve.periodic }
    }

    fn eval(&self, u: f64, v: f64) -> Result<ChartPoint> {
        let j = self.curve.jet(v);
        ChartPoint::new(j.x, j.y, u)
    }

    fn coord_jet(&self, u: f64, v: f64) -> Option<Result<CoordJet>> {
        let j = self.curve.jet(v);
        Some(ChartPoint::new(j.x, j.y, u).map(|point| CoordJet {
            point,
            pu: Vec3::new(0.0, 0.0, 1.0),
            pv: Vec3::new(j.dx, j.dy, 0.0),
            puu: Vec3::zeros(),
            puv: Vec3::zeros(),
            pvv: Vec3::new(j.ddx, j.ddy, 0.0),
        }))
    }
}
